#include "bnf/newton.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace bnf {

namespace {

template <class C>
VectorField<C> widen(const VectorField<C>& x, int trunc) {
  if (x.max_degree() > trunc) throw InputError("cannot widen a field past its own terms");
  std::vector<FieldTerm<C>> terms(x.terms().begin(), x.terms().end());
  return VectorField<C>::from_canonical(x.n(), trunc, std::move(terms));
}

template <class C>
double family_box(std::span<const VectorField<C>> members, double r, const WeightTable& w) {
  return box_norm(family_majorant(members), r, w);
}

template <class C>
double family_derivative(std::span<const VectorField<C>> members, double r, const WeightTable& w) {
  return derivative_bound(family_majorant(members), r, w);
}

template <class C>
std::vector<VectorField<C>> members_of(const Family<C>& f) {
  return {f.begin(), f.end()};
}

double pow4(double e) { return std::pow(4.0, e); }

}  // namespace

double min_b() { return 8.0 + 2.0 * std::log(48.0) / std::log(2.0); }

SchemeConstants SchemeConstants::make(double b, double c0, double r0) {
  if (!(b > 0) || !(c0 > 0) || !(r0 > 0)) {
    throw InputError("scheme constants need b, c0, r0 > 0");
  }
  SchemeConstants c;
  c.b = b;
  c.c0 = c0;
  c.c1 = pow4(b + 2) / 3.0;
  c.r0 = r0;
  return c;
}

template <class C>
SchemeConstants SchemeConstants::for_family(const Family<C>& f, double b, double fraction,
                                            const WeightTable* w) {
  if (f.empty()) throw InputError("empty family");
  if (!(fraction > 0 && fraction < 1)) throw InputError("radius fraction must lie in (0,1)");
  const WeightTable unit = WeightTable::unit(f.n());
  const WeightTable& weights = w ? *w : unit;
  std::vector<VectorField<C>> parts;
  const int N = static_cast<int>(f.size());
  for (int i = 1; i <= N; ++i) {
    parts.push_back(subtract(f.member(i), fundamental_field<C>(i, f.n(), f.trunc_degree())));
  }
  double c0 = family_box<C>(parts, 1.0, weights);
  if (!(c0 > 0)) c0 = 1.0;
  SchemeConstants c = make(b, c0, 1.0);
  double bound = 1.0;
  for (const auto& clause : c.clauses()) bound = std::min(bound, clause.bound);
  c.r0 = fraction * bound;
  return c;
}

double SchemeConstants::r_inf() const { return r0 / pow4(b + 2); }

std::vector<Clause> SchemeConstants::clauses() const {
  const double e = std::numbers::e;
  const double tail = 16.0 * c1 + 512.0 * c1 * c1 + 4.0 * 9.0 / 7.0 +
                      4.0 * std::pow(2.0, b / 2) * pow4(b + 2);
  return {
      {"sqrt(3/(8 c0))", std::sqrt(3.0 / (8.0 * c0))},
      {"3/(136 c0)", 3.0 / (136.0 * c0)},
      {"1/(32 e c0 c1)", 1.0 / (32.0 * e * c0 * c1)},
      {"1/(7 2^9 c0 c1^2)", 1.0 / (7.0 * 512.0 * c0 * c1 * c1)},
      {"(c1 - 1/4)/(c0 (2^4 c1 + 2^9 c1^2 + 4 9/7 + 4 2^{b/2} 4^{b+2}))",
       (c1 - 0.25) / (c0 * tail)},
  };
}

std::vector<std::string> SchemeConstants::violations() const {
  std::vector<std::string> out;
  if (b < min_b()) out.push_back("b = " + format_double(b) + " below " + format_double(min_b()));
  const double expect = pow4(b + 2) / 3.0;
  if (std::abs(c1 - expect) > 1e-12 * expect) out.push_back("c1 differs from 4^{b+2}/3");
  if (!(c0 > 0)) out.push_back("c0 must be positive");
  if (!(r0 > 0)) out.push_back("r0 must be positive");
  if (r0 > 1) out.push_back("r0 must not exceed 1");
  for (const auto& clause : clauses()) {
    if (!(r0 < clause.bound)) {
      out.push_back("r0 = " + format_double(r0) + " not below " + clause.name + " = " +
                    format_double(clause.bound));
    }
  }
  return out;
}

SequenceTable sequences(int K, const SchemeConstants& c) {
  if (K < 1) throw InputError("sequences need K >= 1");
  if (!(c.b > 0 && c.c0 > 0 && c.c1 > 0 && c.r0 > 0)) throw InputError("invalid scheme constants");
  SequenceTable t;
  t.r_inf = c.r_inf();
  double r = c.r0;
  double d = 1.0;
  for (int k = 0; k <= K; ++k) {
    SequenceRow row;
    row.k = k;
    const double m = std::ldexp(1.0, k);
    row.q = std::pow(m, -c.b / m);
    row.eps = c.eps0() / pow4(k);
    row.delta = k == 0 ? c.delta0() : c.delta() / pow4(k);
    row.r = r;
    row.d_product = d;
    row.d_closed = pow4(-c.b * (1.0 - (k + 1) / m));
    t.rows.push_back(row);
    r = k == 0 ? c.r0 / 8 : row.q * (r - row.delta);
    d *= row.q;
  }
  return t;
}

bool AuditReport::passed() const {
  for (const auto& e : entries) {
    if (!e.ok) return false;
  }
  return true;
}

AuditReport sequence_lemma_audit(int K, const SchemeConstants& c) {
  if (K < 2) throw InputError("sequence audit needs K >= 2");
  const SequenceTable t = sequences(K, c);
  AuditReport rep;
  const double eps_bound = 4.0 / 3.0 * c.eps0();
  const double ratio_bound = 8.0 / 7.0 * c.eps0() / c.r0 + c.eps0() / t.r_inf * std::pow(2.0, c.b / 2);
  double eps_sum = 0, ratio_sum = 0, log_sum = 0;
  for (int k = 0; k <= K; ++k) {
    const auto& row = t.rows[static_cast<std::size_t>(k)];
    const double rel = std::abs(row.d_product - row.d_closed) / row.d_closed;
    rep.entries.push_back({"d_k product = closed form", k, row.d_product, row.d_closed, rel <= 1e-12});
    rep.entries.push_back({"r_k >= r_inf", k, t.r_inf, row.r, within(t.r_inf, row.r)});
    rep.entries.push_back({"sum eps_l <= 4/3 eps0", k, eps_sum, eps_bound, within(eps_sum, eps_bound)});
    rep.entries.push_back({"sum eps_l/(r_l - r_l+1) bound", k, ratio_sum, ratio_bound,
                           within(ratio_sum, ratio_bound)});
    if (k >= 1) {
      log_sum += 1.0 / (k * std::ldexp(1.0, k));
      // Tail of the series after k terms is at most 2^{-k}/(k+1).
      const double gap = std::numbers::ln2 - log_sum;
      rep.entries.push_back({"partial sum of 1/(k 2^k) vs ln 2", k, log_sum, std::numbers::ln2,
                             gap >= -1e-15 && gap <= std::ldexp(1.0, -k) / (k + 1) + 1e-15});
    }
    if (k < K) {
      const auto& next = t.rows[static_cast<std::size_t>(k + 1)];
      eps_sum += row.eps;
      ratio_sum += row.eps / (row.r - next.r);
    }
  }
  return rep;
}

template <class C>
Family<C> IterationState<C>::family() const {
  Family<C> out(remainder.n(), remainder.trunc_degree());
  for (int i = 1; i <= N; ++i) out.push_back(add(nf.field(i), remainder.member(i)));
  return out;
}

template <class C>
IterationState<C> IterationState<C>::initial(const Family<C>& x) {
  const int N = static_cast<int>(x.size());
  if (N == 0) throw InputError("empty family");
  if (N > x.n()) throw InputError("family has more members than variable pairs");
  IterationState s;
  s.N = N;
  s.nf = NormalFormFamily<C>::identity(N, x.n(), x.trunc_degree());
  s.remainder = Family<C>(x.n(), x.trunc_degree());
  for (int i = 1; i <= N; ++i) {
    VectorField<C> f = subtract(x.member(i), s.nf.field(i));
    if (f.min_degree() < 2) {
      throw PreconditionError("X^" + std::to_string(i) + " - E^" + std::to_string(i) +
                              " has a term of degree " + std::to_string(f.min_degree()));
    }
    s.remainder.push_back(std::move(f));
  }
  return s;
}

template <class C>
int commuting_degree(const Family<C>& x) {
  int best = x.trunc_degree();
  const int N = static_cast<int>(x.size());
  for (int i = 1; i <= N; ++i) {
    for (int j = i + 1; j <= N; ++j) {
      const VectorField<C> br = bracket(x.member(i), x.member(j));
      best = std::min(best, br.trunc_degree());
      if (!br.empty()) best = std::min(best, br.min_degree() - 1);
    }
  }
  return best;
}

template <class C>
LedgerRow step_inequality_audit(const IterationState<C>& s, const SchemeConstants& c,
                                const WeightTable& w) {
  const SequenceTable t = sequences(std::max(1, s.k + 1), c);
  LedgerRow row;
  row.k = s.k;
  row.m = s.m();
  row.r_k = t.rows[static_cast<std::size_t>(s.k)].r;
  row.eps_k = t.rows[static_cast<std::size_t>(s.k)].eps;
  const auto rem = members_of(s.remainder);
  const auto normal = members_of(s.nf.normal_parts());
  row.norm_r = family_box<C>(rem, row.r_k, w);
  row.norm_n = family_box<C>(normal, row.r_k, w);
  row.norm_dn = family_derivative<C>(normal, row.r_k, w);
  double eps_sum = 0, ratio_sum = 0;
  for (int l = 0; l < s.k; ++l) {
    const auto& a = t.rows[static_cast<std::size_t>(l)];
    const auto& b = t.rows[static_cast<std::size_t>(l + 1)];
    eps_sum += a.eps;
    ratio_sum += a.eps / (a.r - b.r);
  }
  row.i1_ok = within(row.norm_r, row.eps_k);
  row.i2_ok = within(row.norm_n, eps_sum);
  row.i3_ok = within(row.norm_dn, ratio_sum);
  return row;
}

template <class C>
IterationState<C> newton_step(const IterationState<C>& s, const SchemeConstants& c,
                              const RunConfig& cfg) {
  const int m = s.m();
  const int T = s.remainder.trunc_degree();
  const int n = s.remainder.n();
  const int N = s.N;
  if (2 * m > T) {
    throw PreconditionError("safe degree exhausted: step needs degree " + std::to_string(2 * m) +
                            " but truncation is " + std::to_string(T));
  }
  const WeightTable w = cfg.weights.n() == 0 ? WeightTable::unit(n) : cfg.weights;

  Family<C> normal(n, T), b_nres(n, T);
  for (int i = 1; i <= N; ++i) {
    auto parts = split(widen(jet(s.remainder.member(i), 2 * m), T), N);
    normal.push_back(add(s.nf.normal_part(i), parts.res));
    b_nres.push_back(std::move(parts.nres));
  }
  NormalFormFamily<C> nf_next = NormalFormFamily<C>::from_normal_parts(normal);

  VectorField<C> u;
  switch (cfg.method) {
    case SolverMethod::recursive:
      u = solve_nonlinear_recursive(s.nf, b_nres, m);
      break;
    case SolverMethod::spectral:
      u = solve_nonlinear_spectral(s.nf, b_nres, m);
      break;
    case SolverMethod::both: {
      u = solve_nonlinear_recursive(s.nf, b_nres, m);
      const VectorField<C> v = solve_nonlinear_spectral(s.nf, b_nres, m);
      if (!equal_within(u, v)) {
        throw std::logic_error("recursive and spectral solutions differ at step " +
                               std::to_string(s.k));
      }
      break;
    }
  }
  u = widen(u, T);

  IterationState<C> next;
  next.k = s.k + 1;
  next.N = N;
  next.nf = nf_next;
  next.generators = s.generators;
  next.generators.push_back(u);
  next.ledger = s.ledger;
  next.remainder = Family<C>(n, T);

  std::vector<VectorField<C>> r11, r12, r2, r3;
  for (int i = 1; i <= N; ++i) {
    const VectorField<C> ei = fundamental_field<C>(i, n, T);
    const VectorField<C>& ni = s.nf.normal_part(i);
    const VectorField<C>& ri = s.remainder.member(i);
    VectorField<C> x_new;
    if (cfg.diagnostics) {
      const VectorField<C> ue = bracket(u, ei);
      const VectorField<C> un = bracket(u, ni);
      const VectorField<C> pe = lie_conjugate(ei, u, T);
      const VectorField<C> pn = lie_conjugate(ni, u, T);
      const VectorField<C> pr = lie_conjugate(ri, u, T);
      x_new = add(add(pe, pn), pr);
      r11.push_back(subtract(subtract(pe, ei), ue));
      r12.push_back(subtract(subtract(pn, ni), un));
      r2.push_back(subtract(pr, ri));
      const VectorField<C> low = add(add(ue, ri), un);
      r3.push_back(degree_slice(low, 2 * m + 1, T));
    } else {
      x_new = lie_conjugate(add(add(ei, ni), ri), u, T);
    }
    VectorField<C> r_new = subtract(x_new, nf_next.field(i));
    if (r_new.min_degree() <= 2 * m) {
      throw PreconditionError("step " + std::to_string(s.k) + ": remainder of X^" +
                              std::to_string(i) + " keeps a term of degree " +
                              std::to_string(r_new.min_degree()) +
                              "; the input family does not commute");
    }
    next.remainder.push_back(std::move(r_new));
  }

  LedgerRow row = step_inequality_audit(s, c, w);
  if (cfg.diagnostics) {
    const SequenceTable t = sequences(std::max(1, s.k + 1), c);
    const double rho = t.rows[static_cast<std::size_t>(s.k)].r - t.rows[static_cast<std::size_t>(s.k)].delta;
    row.r11 = family_box<C>(r11, rho, w);
    row.r12 = family_box<C>(r12, rho, w);
    row.r2 = family_box<C>(r2, rho, w);
    row.r3 = family_box<C>(r3, rho, w);
  }
  next.ledger.push_back(row);
  return next;
}

template <class C>
RunResult<C> run(const Family<C>& x, const RunConfig& cfg) {
  if (cfg.steps < 1) throw InputError("run needs at least one step");
  const int need = 1 << (cfg.steps + 1);
  if (x.trunc_degree() < need) {
    throw InputError("truncation " + std::to_string(x.trunc_degree()) + " below 2^{K+1} = " +
                     std::to_string(need));
  }
  if (cfg.trunc > 0 && cfg.trunc != x.trunc_degree()) {
    throw InputError("family truncation " + std::to_string(x.trunc_degree()) +
                     " differs from the configured " + std::to_string(cfg.trunc));
  }
  RunResult<C> res;
  res.commuting_degree = commuting_degree(x);
  if (res.commuting_degree < x.trunc_degree()) {
    throw PreconditionError("family does not commute: a bracket is nonzero at degree " +
                            std::to_string(res.commuting_degree + 1));
  }
  const WeightTable w = cfg.weights.n() == 0 ? WeightTable::unit(x.n()) : cfg.weights;
  res.constants = cfg.constants ? *cfg.constants : SchemeConstants::for_family(x, 20, 0.5, &w);
  res.state = IterationState<C>::initial(x);
  for (int k = 0; k < cfg.steps; ++k) res.state = newton_step(res.state, res.constants, cfg);
  res.state.ledger.push_back(step_inequality_audit(res.state, res.constants, w));
  return res;
}

template <class C>
Family<C> undo_generators(const Family<C>& x, std::span<const VectorField<C>> generators, int d) {
  Family<C> cur = x;
  for (auto it = generators.rbegin(); it != generators.rend(); ++it) {
    const VectorField<C> neg = negate(*it);
    Family<C> out(x.n(), d);
    for (const auto& f : cur) out.push_back(lie_conjugate(f, neg, d));
    cur = std::move(out);
  }
  return cur;
}

template <class C>
BirkhoffReport<C> birkhoff_check(const ScalarFunction<C>& h, std::span<const VectorField<C>> generators,
                                 int d, const Family<C>* fields) {
  BirkhoffReport<C> rep;
  rep.degree = d;
  rep.precondition_ok = true;
  if (fields) {
    for (const auto& f : *fields) {
      const ScalarFunction<C> lh = lie_derivative(f, h);
      if (lh.trunc_degree() < d || (!lh.empty() && lh.min_degree() <= d)) {
        rep.precondition_ok = false;
      }
    }
  }
  rep.transformed = apply_transform(h, generators, d);
  if (rep.transformed.trunc_degree() < d) {
    throw PreconditionError("transformed function is only known through degree " +
                            std::to_string(rep.transformed.trunc_degree()));
  }
  for (const auto& t : rep.transformed.terms()) {
    if (!t.index.balanced()) rep.violations.push_back(t);
  }
  return rep;
}

std::string to_string(SolverMethod m) {
  switch (m) {
    case SolverMethod::recursive: return "recursive";
    case SolverMethod::spectral: return "spectral";
    case SolverMethod::both: return "both";
  }
  return "recursive";
}

SolverMethod parse_solver_method(const std::string& s) {
  if (s == "recursive") return SolverMethod::recursive;
  if (s == "spectral") return SolverMethod::spectral;
  if (s == "both") return SolverMethod::both;
  throw InputError("unknown solver method '" + s + "'");
}

#define BNF_INSTANTIATE_NEWTON(C)                                                              \
  template SchemeConstants SchemeConstants::for_family(const Family<C>&, double, double,       \
                                                       const WeightTable*);                    \
  template struct IterationState<C>;                                                           \
  template int commuting_degree(const Family<C>&);                                             \
  template LedgerRow step_inequality_audit(const IterationState<C>&, const SchemeConstants&,   \
                                           const WeightTable&);                                \
  template IterationState<C> newton_step(const IterationState<C>&, const SchemeConstants&,     \
                                         const RunConfig&);                                    \
  template RunResult<C> run(const Family<C>&, const RunConfig&);                               \
  template Family<C> undo_generators(const Family<C>&, std::span<const VectorField<C>>, int);  \
  template BirkhoffReport<C> birkhoff_check(const ScalarFunction<C>&,                          \
                                            std::span<const VectorField<C>>, int, const Family<C>*);

BNF_INSTANTIATE_NEWTON(QComplex)
BNF_INSTANTIATE_NEWTON(DComplex)

}  // namespace bnf
