#include "bnf/algebra.hpp"

#include <algorithm>
#include <string>

#ifdef BNF_HAVE_OPENMP
#include <omp.h>
#endif

namespace bnf {

namespace trunc_rule {

// Missing terms of an operand sit above its truncation; each rule returns the
// highest degree at which no missing term can contribute.
int bracket(int tx, int mx, int ty, int my) {
  int t = std::min(tx, ty);
  if (my != kNoDegree) t = std::min(t, tx + my - 1);
  if (mx != kNoDegree) t = std::min(t, ty + mx - 1);
  return t;
}

int product(int tf, int mf, int tg, int mg) {
  int t = kNoDegree;
  if (mg != kNoDegree) t = std::min(t, tf + mg);
  if (mf != kNoDegree) t = std::min(t, tg + mf);
  return t == kNoDegree ? std::min(tf, tg) : t;
}

int lie_derivative(int tv, int mv, int th, int mh) {
  int t = kNoDegree;
  if (mv != kNoDegree) t = std::min(t, th + mv - 1);
  if (mh != kNoDegree) t = std::min(t, tv + mh - 1);
  return t == kNoDegree ? std::min(tv, th) : t;
}

}  // namespace trunc_rule

namespace {

template <class P>
void require_same_n(const P& a, const P& b) {
  if (a.n() != b.n()) {
    throw InputError("variable counts differ: " + std::to_string(a.n()) + " vs " +
                     std::to_string(b.n()));
  }
}

template <class C>
void require_same_n(const VectorField<C>& a, const ScalarFunction<C>& b) {
  if (a.n() != b.n()) {
    throw InputError("variable counts differ: " + std::to_string(a.n()) + " vs " +
                     std::to_string(b.n()));
  }
}

template <class Poly>
Poly merge_terms(const Poly& a, const Poly& b, bool subtract_b) {
  using Term = typename Poly::Term;
  const int t = std::min(a.trunc_degree(), b.trunc_degree());
  std::vector<Term> terms;
  terms.reserve(a.size() + b.size());
  for (const auto& x : a.terms()) {
    if (x.index.degree() <= t) terms.push_back(x);
  }
  for (const auto& y : b.terms()) {
    if (y.index.degree() > t) continue;
    terms.push_back(y);
    if (subtract_b) terms.back().coeff = Scalar<typename Poly::Coefficient>::zero() - y.coeff;
  }
  detail::canonicalize(terms, t);
  return Poly::from_canonical(a.n(), t, std::move(terms));
}

// Accumulates the bracket contributions of the term pairs (x, y) with x in xs.
template <class C>
void bracket_block(std::span<const FieldTerm<C>> xs, const VectorField<C>& y, int tout,
                   TermAccumulator<C>& acc) {
  const auto ys = y.terms();
  for (const auto& xt : xs) {
    const int max_q = tout + 1 - xt.index.degree();
    for (const auto& yt : ys) {
      if (yt.index.degree() > max_q) break;
      const int qj = yt.index.exponent(xt.component);
      const int pl = xt.index.exponent(yt.component);
      if (qj == 0 && pl == 0) continue;
      const C prod = xt.coeff * yt.coeff;
      // DY.X
      if (qj != 0) {
        C c = prod;
        Scalar<C>::scale_int(c, qj);
        acc.add(MultiIndex::sum_minus_unit(yt.index, xt.index, xt.component), yt.component,
                std::move(c));
      }
      // -DX.Y
      if (pl != 0) {
        C c = prod;
        Scalar<C>::scale_int(c, -pl);
        acc.add(MultiIndex::sum_minus_unit(xt.index, yt.index, yt.component), xt.component,
                std::move(c));
      }
    }
  }
}

template <class C>
int bracket_trunc(const VectorField<C>& x, const VectorField<C>& y) {
  return trunc_rule::bracket(x.trunc_degree(), x.min_degree(), y.trunc_degree(), y.min_degree());
}

constexpr std::size_t kChunk = 16;
constexpr std::size_t kChunksPerBatch = 64;
constexpr std::size_t kParallelWork = 4096;

}  // namespace

// ---- construction -------------------------------------------------------

template <class C>
VectorField<C> monomial_field(int n, int trunc, MultiIndex q, int component, C coeff) {
  return VectorField<C>(n, trunc, {{std::move(q), component, std::move(coeff)}});
}

template <class C>
VectorField<C> fundamental_field(int i, int n, int trunc) {
  if (i < 1 || i > n) throw InputError("E^" + std::to_string(i) + " needs 1 <= i <= n");
  return VectorField<C>(n, trunc,
                        {{MultiIndex::unit(i), i, Scalar<C>::one()},
                         {MultiIndex::unit(-i), -i, Scalar<C>::zero() - Scalar<C>::one()}});
}

template <class C>
Family<C> fundamental_family(int N, int n, int trunc) {
  Family<C> out(n, trunc);
  for (int i = 1; i <= N; ++i) out.push_back(fundamental_field<C>(i, n, trunc));
  return out;
}

template <class C>
ScalarFunction<C> monomial_function(int n, int trunc, MultiIndex q, C coeff) {
  return ScalarFunction<C>(n, trunc, {{std::move(q), std::move(coeff)}});
}

template <class C>
ScalarFunction<C> coordinate(int var, int n, int trunc) {
  return monomial_function<C>(n, trunc, MultiIndex::unit(var), Scalar<C>::one());
}

template <class C>
ScalarFunction<C> action(int j, int n, int trunc) {
  return monomial_function<C>(n, trunc, MultiIndex{{-j, 1}, {j, 1}}, Scalar<C>::one());
}

// ---- linear structure ---------------------------------------------------

template <class C>
VectorField<C> add(const VectorField<C>& x, const VectorField<C>& y) {
  require_same_n(x, y);
  return merge_terms(x, y, false);
}

template <class C>
VectorField<C> subtract(const VectorField<C>& x, const VectorField<C>& y) {
  require_same_n(x, y);
  return merge_terms(x, y, true);
}

template <class C>
VectorField<C> scale(const VectorField<C>& x, const C& s) {
  std::vector<FieldTerm<C>> terms;
  terms.reserve(x.size());
  for (const auto& t : x.terms()) {
    C c = t.coeff * s;
    if (!Scalar<C>::is_zero(c)) terms.push_back({t.index, t.component, std::move(c)});
  }
  return VectorField<C>::from_canonical(x.n(), x.trunc_degree(), std::move(terms));
}

template <class C>
VectorField<C> negate(const VectorField<C>& x) {
  return scale(x, Scalar<C>::zero() - Scalar<C>::one());
}

template <class C>
VectorField<C> jet(const VectorField<C>& x, int d) {
  if (d < 0) throw InputError("jet degree must be nonnegative");
  const int t = std::min(d, x.trunc_degree());
  std::vector<FieldTerm<C>> terms;
  for (const auto& term : x.terms()) {
    if (term.index.degree() > t) break;
    terms.push_back(term);
  }
  return VectorField<C>::from_canonical(x.n(), t, std::move(terms));
}

template <class C>
VectorField<C> degree_slice(const VectorField<C>& x, int lo, int hi) {
  std::vector<FieldTerm<C>> terms;
  for (const auto& term : x.terms()) {
    const int deg = term.index.degree();
    if (deg > hi) break;
    if (deg >= lo) terms.push_back(term);
  }
  return VectorField<C>::from_canonical(x.n(), x.trunc_degree(), std::move(terms));
}

template <class C>
VectorField<C> retruncate(const VectorField<C>& x, int d) {
  return jet(x, d);
}

template <class C>
ScalarFunction<C> add(const ScalarFunction<C>& h, const ScalarFunction<C>& k) {
  require_same_n(h, k);
  return merge_terms(h, k, false);
}

template <class C>
ScalarFunction<C> subtract(const ScalarFunction<C>& h, const ScalarFunction<C>& k) {
  require_same_n(h, k);
  return merge_terms(h, k, true);
}

template <class C>
ScalarFunction<C> scale(const ScalarFunction<C>& h, const C& s) {
  std::vector<ScalarTerm<C>> terms;
  terms.reserve(h.size());
  for (const auto& t : h.terms()) {
    C c = t.coeff * s;
    if (!Scalar<C>::is_zero(c)) terms.push_back({t.index, std::move(c)});
  }
  return ScalarFunction<C>::from_canonical(h.n(), h.trunc_degree(), std::move(terms));
}

template <class C>
ScalarFunction<C> jet(const ScalarFunction<C>& h, int d) {
  if (d < 0) throw InputError("jet degree must be nonnegative");
  const int t = std::min(d, h.trunc_degree());
  std::vector<ScalarTerm<C>> terms;
  for (const auto& term : h.terms()) {
    if (term.index.degree() > t) break;
    terms.push_back(term);
  }
  return ScalarFunction<C>::from_canonical(h.n(), t, std::move(terms));
}

template <class C>
ScalarFunction<C> degree_slice(const ScalarFunction<C>& h, int lo, int hi) {
  std::vector<ScalarTerm<C>> terms;
  for (const auto& term : h.terms()) {
    const int deg = term.index.degree();
    if (deg > hi) break;
    if (deg >= lo) terms.push_back(term);
  }
  return ScalarFunction<C>::from_canonical(h.n(), h.trunc_degree(), std::move(terms));
}

// ---- products and derivatives -------------------------------------------

template <class C>
ScalarFunction<C> multiply(const ScalarFunction<C>& f, const ScalarFunction<C>& g) {
  require_same_n(f, g);
  const int tout =
      trunc_rule::product(f.trunc_degree(), f.min_degree(), g.trunc_degree(), g.min_degree());
  TermAccumulator<C> acc;
  for (const auto& a : f.terms()) {
    const int max_b = tout - a.index.degree();
    for (const auto& b : g.terms()) {
      if (b.index.degree() > max_b) break;
      acc.add(a.index + b.index, 0, a.coeff * b.coeff);
    }
  }
  return acc.to_scalar(f.n(), tout);
}

template <class C>
VectorField<C> multiply(const ScalarFunction<C>& f, const VectorField<C>& x) {
  require_same_n(x, f);
  const int tout =
      trunc_rule::product(f.trunc_degree(), f.min_degree(), x.trunc_degree(), x.min_degree());
  TermAccumulator<C> acc;
  for (const auto& a : f.terms()) {
    const int max_b = tout - a.index.degree();
    for (const auto& b : x.terms()) {
      if (b.index.degree() > max_b) break;
      acc.add(a.index + b.index, b.component, a.coeff * b.coeff);
    }
  }
  return acc.to_field(x.n(), tout);
}

template <class C>
ScalarFunction<C> derivative(const ScalarFunction<C>& h, int var) {
  detail::check_var(var, h.n(), "variable");
  TermAccumulator<C> acc;
  for (const auto& t : h.terms()) {
    const int e = t.index.exponent(var);
    if (e == 0) continue;
    C c = t.coeff;
    Scalar<C>::scale_int(c, e);
    acc.add(*t.index.minus_unit(var), 0, std::move(c));
  }
  return acc.to_scalar(h.n(), h.trunc_degree() - 1);
}

template <class C>
ScalarFunction<C> lie_derivative(const VectorField<C>& v, const ScalarFunction<C>& h) {
  require_same_n(v, h);
  const int tout = trunc_rule::lie_derivative(v.trunc_degree(), v.min_degree(), h.trunc_degree(),
                                              h.min_degree());
  TermAccumulator<C> acc;
  for (const auto& ht : h.terms()) {
    const int max_q = tout + 1 - ht.index.degree();
    for (const auto& vt : v.terms()) {
      if (vt.index.degree() > max_q) break;
      const int e = ht.index.exponent(vt.component);
      if (e == 0) continue;
      C c = ht.coeff * vt.coeff;
      Scalar<C>::scale_int(c, e);
      acc.add(MultiIndex::sum_minus_unit(ht.index, vt.index, vt.component), 0, std::move(c));
    }
  }
  return acc.to_scalar(h.n(), tout);
}

template <class C>
ScalarFunction<C> component(const VectorField<C>& x, int j) {
  detail::check_var(j, x.n(), "component");
  std::vector<ScalarTerm<C>> terms;
  for (const auto& t : x.terms()) {
    if (t.component == j) terms.push_back({t.index, t.coeff});
  }
  return ScalarFunction<C>::from_canonical(x.n(), x.trunc_degree(), std::move(terms));
}

// ---- Lie algebra ----------------------------------------------------------

template <class C>
VectorField<C> bracket_serial(const VectorField<C>& x, const VectorField<C>& y) {
  require_same_n(x, y);
  const int tout = bracket_trunc(x, y);
  TermAccumulator<C> acc;
  bracket_block<C>(x.terms(), y, tout, acc);
  return acc.to_field(x.n(), tout);
}

template <class C>
VectorField<C> bracket_parallel(const VectorField<C>& x, const VectorField<C>& y) {
  require_same_n(x, y);
  const int tout = bracket_trunc(x, y);
  const auto xs = x.terms();
  const std::size_t chunks = (xs.size() + kChunk - 1) / kChunk;
  TermAccumulator<C> acc;
  // Batches bound the memory held by per-chunk accumulators; the batch size
  // does not depend on the thread count, so the reduction tree is fixed.
  for (std::size_t first = 0; first < chunks; first += kChunksPerBatch) {
    const std::size_t last = std::min(chunks, first + kChunksPerBatch);
    std::vector<TermAccumulator<C>> partial(last - first);
    const long count = static_cast<long>(last - first);
#ifdef BNF_HAVE_OPENMP
#pragma omp parallel for schedule(dynamic, 1)
#endif
    for (long c = 0; c < count; ++c) {
      const std::size_t begin = (first + static_cast<std::size_t>(c)) * kChunk;
      const std::size_t len = std::min(kChunk, xs.size() - begin);
      bracket_block<C>(xs.subspan(begin, len), y, tout, partial[static_cast<std::size_t>(c)]);
    }
    for (auto& p : partial) acc.merge(p);
  }
  return acc.to_field(x.n(), tout);
}

template <class C>
VectorField<C> bracket(const VectorField<C>& x, const VectorField<C>& y, KernelPolicy policy) {
  switch (policy) {
    case KernelPolicy::serial:
      return bracket_serial(x, y);
    case KernelPolicy::parallel:
      return bracket_parallel(x, y);
    case KernelPolicy::automatic:
      break;
  }
  // Small products stay on the plain loop. The choice depends only on the
  // operand sizes, never on the thread count.
  if (x.size() * y.size() < kParallelWork || x.size() <= kChunk) return bracket_serial(x, y);
  return bracket_parallel(x, y);
}

template <class C>
VectorField<C> lie_conjugate(const VectorField<C>& x, const VectorField<C>& u, int d,
                             KernelPolicy policy) {
  require_same_n(x, u);
  if (!u.empty() && u.min_degree() < 2) {
    throw PreconditionError("lie_conjugate needs a generator with min_degree >= 2, got " +
                            std::to_string(u.min_degree()));
  }
  VectorField<C> result = jet(x, d);
  if (u.empty()) return jet(result, std::min(d, trunc_rule::bracket(x.trunc_degree(), x.min_degree(),
                                                                    u.trunc_degree(), kNoDegree)));
  VectorField<C> term = result;
  for (long k = 1; !term.empty(); ++k) {
    // Each ad_U raises the degree by at least one, so the loop ends.
    term = scale(jet(bracket(u, term, policy), d), Scalar<C>::from_ratio(1, k));
    result = add(result, term);
  }
  return result;
}

template <class C>
double max_abs_difference(const VectorField<C>& x, const VectorField<C>& y) {
  double m = 0.0;
  for (const auto& t : subtract(x, y).terms()) m = std::max(m, Scalar<C>::modulus(t.coeff));
  return m;
}

template <class C>
bool equal_within(const VectorField<C>& x, const VectorField<C>& y, double tol) {
  if (x.n() != y.n()) return false;
  if constexpr (Scalar<C>::exact) {
    const int t = std::min(x.trunc_degree(), y.trunc_degree());
    return jet(x, t) == jet(y, t);
  } else {
    double scale = 0.0;
    for (const auto& t : x.terms()) scale = std::max(scale, Scalar<C>::modulus(t.coeff));
    for (const auto& t : y.terms()) scale = std::max(scale, Scalar<C>::modulus(t.coeff));
    return max_abs_difference(x, y) <= tol * (1.0 + scale);
  }
}

namespace {

DComplex monomial_value(const MultiIndex& q, int n, std::span<const DComplex> z) {
  DComplex v{1.0, 0.0};
  for (const auto& e : q.entries()) {
    const DComplex zv = z[static_cast<std::size_t>(slot(e.var, n))];
    for (int p = 0; p < e.exp; ++p) v *= zv;
  }
  return v;
}

void require_dense(int n, std::span<const DComplex> z) {
  if (z.size() != static_cast<std::size_t>(2 * n)) {
    throw InputError("evaluation point needs " + std::to_string(2 * n) + " entries");
  }
}

}  // namespace

template <class C>
std::vector<DComplex> evaluate(const VectorField<C>& x, std::span<const DComplex> z) {
  require_dense(x.n(), z);
  std::vector<DComplex> out(z.size());
  for (const auto& t : x.terms()) {
    out[static_cast<std::size_t>(slot(t.component, x.n()))] +=
        Scalar<C>::to_complex(t.coeff) * monomial_value(t.index, x.n(), z);
  }
  return out;
}

template <class C>
DComplex evaluate(const ScalarFunction<C>& h, std::span<const DComplex> z) {
  require_dense(h.n(), z);
  DComplex out{};
  for (const auto& t : h.terms()) out += Scalar<C>::to_complex(t.coeff) * monomial_value(t.index, h.n(), z);
  return out;
}

// ---- Hamiltonian structure ------------------------------------------------

template <class C>
VectorField<C> hamiltonian_vf(const ScalarFunction<C>& h) {
  TermAccumulator<C> acc;
  const C minus_i = Scalar<C>::zero() - Scalar<C>::imag_unit();
  for (const auto& t : h.terms()) {
    for (const auto& e : t.index.entries()) {
      // d/dz_v feeds component k = -v with factor -i sgn(k).
      const int k = -e.var;
      C c = t.coeff * minus_i;
      Scalar<C>::scale_int(c, k > 0 ? e.exp : -e.exp);
      acc.add(*t.index.minus_unit(e.var), k, std::move(c));
    }
  }
  return acc.to_field(h.n(), h.trunc_degree() - 1);
}

template <class C>
ScalarFunction<C> poisson(const ScalarFunction<C>& h, const ScalarFunction<C>& k) {
  require_same_n(h, k);
  return lie_derivative(hamiltonian_vf(k), h);
}

template <class C>
ScalarFunction<C> apply_transform(const ScalarFunction<C>& h,
                                  std::span<const VectorField<C>> generators, int d) {
  ScalarFunction<C> current = jet(h, d);
  for (const auto& u : generators) {
    require_same_n(u, h);
    if (u.empty()) {
      current = jet(current, std::min(d, u.trunc_degree() + current.min_degree() - 1));
      continue;
    }
    if (u.min_degree() < 2) {
      throw PreconditionError("apply_transform needs generators with min_degree >= 2");
    }
    ScalarFunction<C> result = current;
    ScalarFunction<C> term = current;
    for (long k = 1; !term.empty(); ++k) {
      term = scale(jet(lie_derivative(u, term), d), Scalar<C>::from_ratio(1, k));
      result = add(result, term);
    }
    current = std::move(result);
  }
  return current;
}

// ---- instantiations -------------------------------------------------------

#define BNF_INSTANTIATE_REAL(C)                                                               \
  template VectorField<C> monomial_field(int, int, MultiIndex, int, C);                       \
  template VectorField<C> fundamental_field<C>(int, int, int);                                \
  template Family<C> fundamental_family<C>(int, int, int);                                    \
  template ScalarFunction<C> monomial_function(int, int, MultiIndex, C);                      \
  template ScalarFunction<C> coordinate<C>(int, int, int);                                    \
  template ScalarFunction<C> action<C>(int, int, int);                                        \
  template VectorField<C> add(const VectorField<C>&, const VectorField<C>&);                  \
  template VectorField<C> subtract(const VectorField<C>&, const VectorField<C>&);             \
  template VectorField<C> scale(const VectorField<C>&, const C&);                             \
  template VectorField<C> negate(const VectorField<C>&);                                      \
  template VectorField<C> jet(const VectorField<C>&, int);                                    \
  template VectorField<C> degree_slice(const VectorField<C>&, int, int);                      \
  template VectorField<C> retruncate(const VectorField<C>&, int);                             \
  template ScalarFunction<C> add(const ScalarFunction<C>&, const ScalarFunction<C>&);         \
  template ScalarFunction<C> subtract(const ScalarFunction<C>&, const ScalarFunction<C>&);    \
  template ScalarFunction<C> scale(const ScalarFunction<C>&, const C&);                       \
  template ScalarFunction<C> jet(const ScalarFunction<C>&, int);                              \
  template ScalarFunction<C> degree_slice(const ScalarFunction<C>&, int, int);                \
  template ScalarFunction<C> multiply(const ScalarFunction<C>&, const ScalarFunction<C>&);    \
  template VectorField<C> multiply(const ScalarFunction<C>&, const VectorField<C>&);          \
  template ScalarFunction<C> derivative(const ScalarFunction<C>&, int);                       \
  template ScalarFunction<C> lie_derivative(const VectorField<C>&, const ScalarFunction<C>&); \
  template ScalarFunction<C> component(const VectorField<C>&, int);                           \
  template VectorField<C> bracket_serial(const VectorField<C>&, const VectorField<C>&);       \
  template VectorField<C> bracket_parallel(const VectorField<C>&, const VectorField<C>&);     \
  template VectorField<C> bracket(const VectorField<C>&, const VectorField<C>&, KernelPolicy); \
  template VectorField<C> lie_conjugate(const VectorField<C>&, const VectorField<C>&, int,    \
                                        KernelPolicy);                                        \
  template ScalarFunction<C> apply_transform(const ScalarFunction<C>&,                        \
                                             std::span<const VectorField<C>>, int);          \
  template std::vector<DComplex> evaluate(const VectorField<C>&, std::span<const DComplex>);  \
  template DComplex evaluate(const ScalarFunction<C>&, std::span<const DComplex>);             \
  template double max_abs_difference(const VectorField<C>&, const VectorField<C>&);           \
  template bool equal_within(const VectorField<C>&, const VectorField<C>&, double);

#define BNF_INSTANTIATE_COMPLEX(C)                              \
  BNF_INSTANTIATE_REAL(C)                                       \
  template VectorField<C> hamiltonian_vf(const ScalarFunction<C>&); \
  template ScalarFunction<C> poisson(const ScalarFunction<C>&, const ScalarFunction<C>&);

BNF_INSTANTIATE_COMPLEX(QComplex)
BNF_INSTANTIATE_COMPLEX(DComplex)
BNF_INSTANTIATE_REAL(double)

}  // namespace bnf
