#include "bnf/cohomology.hpp"

#include <cstdlib>
#include <map>

#include "bnf/algebra.hpp"

namespace bnf {

namespace {

std::string term_name(const MultiIndex& q, int l) {
  return "z^(" + q.to_string() + ") e_" + std::to_string(l);
}

template <class C>
VectorField<C> solve_linear_members(std::span<const VectorField<C>> f, int n, int trunc) {
  const int N = static_cast<int>(f.size());
  std::vector<FieldTerm<C>> terms;
  for (int j = 1; j <= N; ++j) {
    for (const auto& t : f[static_cast<std::size_t>(j - 1)].terms()) {
      if (is_resonant(t.index, t.component, N)) {
        throw PreconditionError("resonant coefficient at " + term_name(t.index, t.component) +
                                " in member " + std::to_string(j));
      }
      if (choose_witness(t.index, t.component, N) != j) continue;
      C c = t.coeff;
      Scalar<C>::divide_int(c, divisor(t.index, t.component, j));
      terms.push_back({t.index, t.component, std::move(c)});
    }
  }
  return VectorField<C>(n, trunc, std::move(terms));
}

// Drops resonant terms that are pure rounding noise in float mode; any other
// resonant content is an error.
template <class C>
VectorField<C> require_nonresonant(const VectorField<C>& x, int N, int k) {
  auto parts = split(x, N);
  if (parts.res.empty()) return x;
  if constexpr (!Scalar<C>::exact) {
    double scale = 0.0;
    for (const auto& t : x.terms()) scale = std::max(scale, Scalar<C>::modulus(t.coeff));
    double res = 0.0;
    for (const auto& t : parts.res.terms()) res = std::max(res, Scalar<C>::modulus(t.coeff));
    if (res <= 1e-9 * (1.0 + scale)) return parts.nres;
  }
  const auto& t = parts.res.terms().front();
  throw PreconditionError("degree " + std::to_string(k) + " right-hand side has resonant term " +
                          term_name(t.index, t.component));
}

template <class C>
void check_shapes(const NormalFormFamily<C>& nf, const Family<C>& b, int m) {
  if (m < 1) throw InputError("m must be positive");
  if (static_cast<int>(b.size()) != nf.N()) {
    throw InputError("B has " + std::to_string(b.size()) + " members, normal form has " +
                     std::to_string(nf.N()));
  }
  if (b.n() != nf.n()) throw InputError("B and normal form differ in n");
  if (b.trunc_degree() < 2 * m) {
    throw InputError("B truncated at " + std::to_string(b.trunc_degree()) + " < 2m = " +
                     std::to_string(2 * m));
  }
}

int sign(int v) { return v > 0 ? 1 : (v < 0 ? -1 : 0); }

}  // namespace

template <class C>
bool cocycle_check(const Family<C>& f) {
  const int N = static_cast<int>(f.size());
  std::vector<VectorField<C>> e;
  for (int i = 1; i <= N; ++i) e.push_back(fundamental_field<C>(i, f.n(), f.trunc_degree()));
  for (int i = 1; i <= N; ++i) {
    for (int j = i + 1; j <= N; ++j) {
      if (!equal_within(bracket(e[static_cast<std::size_t>(i - 1)], f.member(j)),
                        bracket(e[static_cast<std::size_t>(j - 1)], f.member(i)))) {
        return false;
      }
    }
  }
  return true;
}

template <class C>
Cocycle<C>::Cocycle(Family<C> members) : members_(std::move(members)) {
  if (!cocycle_check(members_)) throw PreconditionError("family is not a cocycle");
}

int choose_witness(const MultiIndex& q, int l, int N) {
  int best = 0;
  int best_abs = 0;
  for (int i = 1; i <= N; ++i) {
    const int a = std::abs(divisor(q, l, i));
    if (a > best_abs) {
      best = i;
      best_abs = a;
    }
  }
  if (best == 0) throw PreconditionError("no witness: " + term_name(q, l) + " is resonant");
  return best;
}

template <class C>
VectorField<C> solve_linear(const Cocycle<C>& f) {
  std::vector<VectorField<C>> members(f.members().begin(), f.members().end());
  return solve_linear_members<C>(members, f.members().n(), f.members().trunc_degree());
}

// ---- normal form families --------------------------------------------------

template <class C>
NormalFormFamily<C> NormalFormFamily<C>::from_coefficients(
    int n, int trunc, std::vector<std::vector<ScalarFunction<C>>> a) {
  NormalFormFamily out;
  out.n_ = n;
  out.trunc_ = trunc;
  const int N = static_cast<int>(a.size());
  if (N > n) throw InputError("normal form has more members than variable pairs");
  for (int i = 1; i <= N; ++i) {
    auto& row = a[static_cast<std::size_t>(i - 1)];
    if (static_cast<int>(row.size()) != N) throw InputError("coefficient matrix must be N x N");
    std::vector<FieldTerm<C>> terms;
    for (int j = 1; j <= N; ++j) {
      const auto& aij = row[static_cast<std::size_t>(j - 1)];
      if (aij.n() != n) throw InputError("coefficient a_ij has the wrong n");
      for (const auto& t : aij.terms()) {
        if (!t.index.is_action_monomial()) {
          throw NotIntegrableError("a_" + std::to_string(i) + std::to_string(j) +
                                   " has non-invariant monomial z^(" + t.index.to_string() + ")");
        }
        terms.push_back({t.index + MultiIndex::unit(j), j, t.coeff});
        terms.push_back({t.index + MultiIndex::unit(-j), -j, Scalar<C>::zero() - t.coeff});
      }
    }
    VectorField<C> normal(n, trunc, std::move(terms));
    out.fields_.push_back(add(fundamental_field<C>(i, n, trunc), normal));
    out.normal_.push_back(std::move(normal));
  }
  out.a_ = std::move(a);
  return out;
}

template <class C>
NormalFormFamily<C> NormalFormFamily<C>::from_normal_parts(const Family<C>& parts) {
  const int N = static_cast<int>(parts.size());
  const int n = parts.n();
  std::vector<std::vector<ScalarFunction<C>>> a(static_cast<std::size_t>(N));
  for (int i = 1; i <= N; ++i) {
    std::vector<std::vector<ScalarTerm<C>>> rows(static_cast<std::size_t>(N));
    for (const auto& t : parts.member(i).terms()) {
      const int j = std::abs(t.component);
      const auto rest = t.index.minus_unit(t.component);
      if (j > N || !rest || !rest->is_action_monomial()) {
        throw NotIntegrableError("N^" + std::to_string(i) + " term " +
                                 term_name(t.index, t.component) +
                                 " is not of the form a(actions) z_j e_j");
      }
      if (t.component > 0) rows[static_cast<std::size_t>(j - 1)].push_back({*rest, t.coeff});
    }
    for (int j = 1; j <= N; ++j) {
      a[static_cast<std::size_t>(i - 1)].emplace_back(
          n, parts.trunc_degree() - 1, std::move(rows[static_cast<std::size_t>(j - 1)]));
    }
  }
  NormalFormFamily out = from_coefficients(n, parts.trunc_degree(), std::move(a));
  for (int i = 1; i <= N; ++i) {
    if (!equal_within(out.normal_part(i), parts.member(i))) {
      const auto diff = subtract(out.normal_part(i), parts.member(i));
      const auto& t = diff.terms().front();
      throw NotIntegrableError("N^" + std::to_string(i) + ": e_j and e_-j components disagree at " +
                               term_name(t.index, t.component));
    }
  }
  return out;
}

template <class C>
NormalFormFamily<C> NormalFormFamily<C>::from_fields(const Family<C>& fields) {
  Family<C> parts(fields.n(), fields.trunc_degree());
  int i = 1;
  for (const auto& f : fields) {
    parts.push_back(subtract(f, fundamental_field<C>(i++, fields.n(), fields.trunc_degree())));
  }
  return from_normal_parts(parts);
}

template <class C>
NormalFormFamily<C> NormalFormFamily<C>::identity(int N, int n, int trunc) {
  std::vector<std::vector<ScalarFunction<C>>> a(
      static_cast<std::size_t>(N),
      std::vector<ScalarFunction<C>>(static_cast<std::size_t>(N), ScalarFunction<C>(n, trunc - 1)));
  return from_coefficients(n, trunc, std::move(a));
}

// ---- nonlinear solvers -----------------------------------------------------

template <class C>
VectorField<C> solve_nonlinear_recursive(const NormalFormFamily<C>& nf, const Family<C>& b, int m) {
  check_shapes(nf, b, m);
  const int N = nf.N();
  const int n = b.n();
  const int T = b.trunc_degree();
  std::vector<VectorField<C>> e;
  for (int i = 1; i <= N; ++i) e.push_back(fundamental_field<C>(i, n, T));
  // nf_p[i][p] = NF^i_p
  std::vector<std::vector<VectorField<C>>> nf_p(static_cast<std::size_t>(N));
  for (int i = 1; i <= N; ++i) {
    for (int p = 0; p <= m; ++p) nf_p[static_cast<std::size_t>(i - 1)].push_back(degree_slice(nf.field(i), p, p));
  }
  std::vector<VectorField<C>> v(static_cast<std::size_t>(2 * m + 1), VectorField<C>(n, T));
  VectorField<C> u(n, T);
  for (int k = m + 1; k <= 2 * m; ++k) {
    std::vector<VectorField<C>> rhs;
    for (int i = 1; i <= N; ++i) {
      VectorField<C> r = degree_slice(b.member(i), k, k);
      for (int p = 2; p <= k - m; ++p) {
        r = add(r, degree_slice(bracket(v[static_cast<std::size_t>(k - p + 1)],
                                        nf_p[static_cast<std::size_t>(i - 1)][static_cast<std::size_t>(p)]),
                                k, k));
      }
      rhs.push_back(require_nonresonant(r, N, k));
    }
    VectorField<C> vk = solve_linear_members<C>(rhs, n, T);
    for (int i = 1; i <= N; ++i) {
      if (!equal_within(bracket(e[static_cast<std::size_t>(i - 1)], vk), rhs[static_cast<std::size_t>(i - 1)])) {
        throw PreconditionError("degree " + std::to_string(k) +
                                " right-hand side is not a cocycle (input family does not commute?)");
      }
    }
    u = add(u, vk);
    v[static_cast<std::size_t>(k)] = std::move(vk);
  }
  return u;
}

template <class C>
ScalarFunction<C> c_lambda(const NormalFormFamily<C>& nf, const GeneralizedEigenvalue& lambda) {
  ScalarFunction<C> c(nf.n(), nf.trunc_degree() - 1);
  for (int i : lambda.support()) {
    const int eps = sign(lambda.lambda[static_cast<std::size_t>(i - 1)]);
    for (int j = 1; j <= nf.N(); ++j) {
      const int lj = lambda.lambda[static_cast<std::size_t>(j - 1)];
      if (lj == 0) continue;
      c = add(c, scale(nf.a(i, j), Scalar<C>::from_int(eps * lj)));
    }
  }
  return c;
}

template <class C>
VectorField<C> p_lambda(const NormalFormFamily<C>& nf, const GeneralizedEigenvalue& lambda,
                        const VectorField<C>& g) {
  VectorField<C> out(g.n(), g.trunc_degree());
  for (int j = 1; j <= nf.N(); ++j) {
    ScalarFunction<C> coeff(g.n(), nf.trunc_degree() - 1);
    for (int i : lambda.support()) {
      const int eps = sign(lambda.lambda[static_cast<std::size_t>(i - 1)]);
      coeff = add(coeff, scale(lie_derivative(g, nf.a(i, j)), Scalar<C>::from_int(eps)));
    }
    if (coeff.empty()) continue;
    out = add(out, multiply(coeff, fundamental_field<C>(j, g.n(), g.trunc_degree())));
  }
  return out;
}

template <class C>
VectorField<C> solve_nonlinear_spectral(const NormalFormFamily<C>& nf, const Family<C>& b, int m) {
  check_shapes(nf, b, m);
  const int N = nf.N();
  const int n = b.n();
  const int T = b.trunc_degree();
  // Only NF_{<=m} can reach degree 2m; a_ij beyond degree m-1 is dropped.
  std::vector<std::vector<ScalarFunction<C>>> a_low(static_cast<std::size_t>(N));
  for (int i = 1; i <= N; ++i) {
    for (int j = 1; j <= N; ++j) a_low[static_cast<std::size_t>(i - 1)].push_back(degree_slice(nf.a(i, j), 0, m - 1));
  }
  const auto low = NormalFormFamily<C>::from_coefficients(n, nf.trunc_degree(), std::move(a_low));

  std::map<GeneralizedEigenvalue, VectorField<C>> bt;
  for (int i = 1; i <= N; ++i) {
    for (auto& [lam, piece] : eigen_decompose(degree_slice(b.member(i), 0, 2 * m), N)) {
      if (lam.is_zero()) {
        const auto& t = piece.terms().front();
        throw PreconditionError("resonant term " + term_name(t.index, t.component) + " in B^" +
                                std::to_string(i));
      }
      const int li = lam.lambda[static_cast<std::size_t>(i - 1)];
      auto it = bt.try_emplace(lam, VectorField<C>(n, T)).first;
      if (li != 0) it->second = add(it->second, scale(piece, Scalar<C>::from_int(sign(li))));
    }
  }

  std::vector<FieldTerm<C>> out;
  for (const auto& [lam, btl] : bt) {
    if (btl.empty()) continue;
    const int mod = lam.norm();
    // 1/b = (1/|lambda|) sum_k (-c/|lambda|)^k, kept through degree m-1.
    const ScalarFunction<C> x = scale(c_lambda(low, lam), Scalar<C>::from_ratio(-1, mod));
    const ScalarFunction<C> one = monomial_function<C>(n, nf.trunc_degree() - 1, MultiIndex{}, Scalar<C>::one());
    ScalarFunction<C> series = one;
    ScalarFunction<C> power = one;
    while (true) {
      power = degree_slice(multiply(power, x), 0, m - 1);
      if (power.empty()) break;
      series = add(series, power);
    }
    const ScalarFunction<C> inv_b = scale(series, Scalar<C>::from_ratio(1, mod));
    const VectorField<C> g = jet(multiply(inv_b, btl), 2 * m);
    const VectorField<C> ul = add(g, jet(multiply(inv_b, p_lambda(low, lam, g)), 2 * m));
    for (const auto& t : ul.terms()) out.push_back(t);
  }
  return VectorField<C>(n, T, std::move(out));
}

template <class C>
SolutionBoundReport solution_bound_check(const NormalFormFamily<C>& nf, const Family<C>& b,
                                         const VectorField<C>& u, double r, const WeightTable& w) {
  SolutionBoundReport rep;
  rep.dn = derivative_bound(family_majorant(nf.normal_parts()), r, w);
  rep.eps = box_norm(family_majorant(b), r, w);
  rep.norm_u = box_norm(majorant(u), r, w);
  rep.factor = rep.eps > 0 ? rep.norm_u / rep.eps : 0.0;
  rep.hypothesis_met = rep.dn <= 0.5;
  rep.holds = rep.hypothesis_met && within(rep.norm_u, 4.0 * rep.eps);
  return rep;
}

#define BNF_COHOMOLOGY(C)                                                                           \
  template bool cocycle_check(const Family<C>&);                                                    \
  template class Cocycle<C>;                                                                        \
  template VectorField<C> solve_linear(const Cocycle<C>&);                                          \
  template class NormalFormFamily<C>;                                                               \
  template VectorField<C> solve_nonlinear_recursive(const NormalFormFamily<C>&, const Family<C>&,   \
                                                    int);                                           \
  template VectorField<C> solve_nonlinear_spectral(const NormalFormFamily<C>&, const Family<C>&,    \
                                                   int);                                            \
  template VectorField<C> p_lambda(const NormalFormFamily<C>&, const GeneralizedEigenvalue&,        \
                                   const VectorField<C>&);                                          \
  template ScalarFunction<C> c_lambda(const NormalFormFamily<C>&, const GeneralizedEigenvalue&);    \
  template SolutionBoundReport solution_bound_check(const NormalFormFamily<C>&, const Family<C>&,   \
                                                    const VectorField<C>&, double, const WeightTable&);

BNF_COHOMOLOGY(QComplex)
BNF_COHOMOLOGY(DComplex)

}  // namespace bnf
