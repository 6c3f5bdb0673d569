#include "bnf/norms.hpp"

#include <cmath>
#include <numbers>
#include <random>

namespace bnf {

WeightTable WeightTable::unit(int n) {
  return {std::vector<double>(static_cast<std::size_t>(n), 1.0),
          std::vector<double>(static_cast<std::size_t>(n), 1.0)};
}

WeightTable WeightTable::geometric(int n, double rho) {
  WeightTable w;
  double p = 1.0;
  for (int j = 1; j <= n; ++j) {
    p *= rho;
    w.w1.push_back(p);
    w.w2.push_back(p);
  }
  w.validate();
  return w;
}

void WeightTable::validate() const {
  if (w1.size() != w2.size()) throw InputError("weight tables differ in length");
  for (std::size_t j = 0; j < w1.size(); ++j) {
    if (!(w1[j] > 0.0) || !(w2[j] >= w1[j])) {
      throw InputError("weights must satisfy w2_j >= w1_j > 0 (j=" + std::to_string(j + 1) + ")");
    }
  }
}

namespace {

void require_weights(int n, const WeightTable& w) {
  if (w.n() < n) throw InputError("weight table shorter than n=" + std::to_string(n));
}

// Per-variable box radii r / sqrt(w1), in slot order.
std::vector<double> corner(int n, double r, const WeightTable& w) {
  std::vector<double> z(static_cast<std::size_t>(2 * n));
  for (int v = -n; v <= n; ++v) {
    if (v != 0) z[static_cast<std::size_t>(slot(v, n))] = r / std::sqrt(w.inner(v));
  }
  return z;
}

double monomial_at(const MultiIndex& q, int n, const std::vector<double>& z) {
  double v = 1.0;
  for (const auto& e : q.entries()) v *= std::pow(z[static_cast<std::size_t>(slot(e.var, n))], e.exp);
  return v;
}

double weighted_norm(const std::vector<double>& comps, int n, const WeightTable& w) {
  double s = 0.0;
  for (int v = -n; v <= n; ++v) {
    if (v == 0) continue;
    const double c = comps[static_cast<std::size_t>(slot(v, n))];
    s += w.outer(v) * c * c;
  }
  return std::sqrt(s);
}

std::vector<double> values_at(const VectorField<double>& m, const std::vector<double>& z) {
  std::vector<double> comps(z.size(), 0.0);
  for (const auto& t : m.terms()) {
    comps[static_cast<std::size_t>(slot(t.component, m.n()))] += t.coeff * monomial_at(t.index, m.n(), z);
  }
  return comps;
}

}  // namespace

template <class C>
VectorField<double> majorant(const VectorField<C>& x) {
  std::vector<FieldTerm<double>> terms;
  terms.reserve(x.size());
  for (const auto& t : x.terms()) terms.push_back({t.index, t.component, Scalar<C>::modulus(t.coeff)});
  return VectorField<double>::from_canonical(x.n(), x.trunc_degree(), std::move(terms));
}

template <class C>
VectorField<double> family_majorant(std::span<const VectorField<C>> members) {
  if (members.empty()) return VectorField<double>(0, 0);
  VectorField<double> out(members.front().n(), members.front().trunc_degree());
  for (const auto& m : members) out = add(out, majorant(m));
  return out;
}

template <class C>
VectorField<double> family_majorant(const Family<C>& f) {
  std::vector<VectorField<C>> members(f.begin(), f.end());
  if (members.empty()) return VectorField<double>(f.n(), f.trunc_degree());
  return family_majorant<C>(std::span<const VectorField<C>>(members));
}

double box_norm(const VectorField<double>& m, double r, const WeightTable& w) {
  if (!(r > 0.0)) throw InputError("radius must be positive");
  if (m.empty()) return 0.0;
  require_weights(m.n(), w);
  return weighted_norm(values_at(m, corner(m.n(), r, w)), m.n(), w);
}

double box_norm(const VectorField<double>& m, double r) { return box_norm(m, r, WeightTable::unit(m.n())); }

Rational box_norm_squared_exact(const VectorField<QComplex>& m, const Rational& r) {
  std::vector<Rational> comps(static_cast<std::size_t>(2 * m.n()));
  for (const auto& t : m.terms()) {
    if (sgn(t.coeff.im) != 0 || sgn(t.coeff.re) < 0) {
      throw PreconditionError("exact box norm needs real nonnegative coefficients");
    }
    Rational p = 1;
    for (int k = 0; k < t.index.degree(); ++k) p *= r;
    comps[static_cast<std::size_t>(slot(t.component, m.n()))] += t.coeff.re * p;
  }
  Rational s = 0;
  for (const auto& c : comps) s += c * c;
  return s;
}

double sample_norm(const VectorField<double>& m, double r, const WeightTable& w, int samples,
                   std::uint64_t seed) {
  if (samples < 1) throw InputError("sample count must be positive");
  if (m.empty()) return 0.0;
  require_weights(m.n(), w);
  const int n = m.n();
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> uni(0.0, 1.0);
  std::vector<double> z(static_cast<std::size_t>(2 * n));
  double best = 0.0;
  for (int s = 0; s < samples; ++s) {
    double len = 0.0;
    for (int v = -n; v <= n; ++v) {
      if (v == 0) continue;
      double& zv = z[static_cast<std::size_t>(slot(v, n))];
      zv = uni(rng);
      len += w.inner(v) * zv * zv;
    }
    if (len == 0.0) continue;
    const double f = r / std::sqrt(len);
    for (auto& zv : z) zv *= f;
    best = std::max(best, weighted_norm(values_at(m, z), n, w));
  }
  return best;
}

template <class C, class D>
bool dominates(const VectorField<C>& x, const VectorField<D>& y) {
  if (x.n() != y.n()) throw InputError("dominates: variable counts differ");
  for (const auto& t : x.terms()) {
    const D c = y.coefficient(t.index, t.component);
    if (Scalar<C>::modulus(t.coeff) > Scalar<D>::modulus(c)) return false;
  }
  return true;
}

bool scaling_check(const VectorField<double>& m, double r, double alpha, int order,
                   const WeightTable& w) {
  if (!(alpha > 0.0 && alpha <= 1.0)) throw PreconditionError("scaling factor must lie in (0,1]");
  if (!m.empty() && m.min_degree() < order) {
    throw PreconditionError("field vanishes to order " + std::to_string(m.min_degree()) + " < " +
                            std::to_string(order));
  }
  return within(box_norm(m, alpha * r, w), std::pow(alpha, order) * box_norm(m, r, w));
}

double derivative_bound(const VectorField<double>& m, double r, const WeightTable& w) {
  if (m.empty()) return 0.0;
  require_weights(m.n(), w);
  const int n = m.n();
  const auto z = corner(n, r, w);
  const std::size_t dim = z.size();
  std::vector<double> jac(dim * dim, 0.0);
  for (const auto& t : m.terms()) {
    const std::size_t row = static_cast<std::size_t>(slot(t.component, n));
    const double mono = monomial_at(t.index, n, z);
    for (const auto& e : t.index.entries()) {
      const std::size_t col = static_cast<std::size_t>(slot(e.var, n));
      jac[row * dim + col] += t.coeff * e.exp * mono / z[col];
    }
  }
  double s = 0.0;
  for (int a = -n; a <= n; ++a) {
    if (a == 0) continue;
    for (int b = -n; b <= n; ++b) {
      if (b == 0) continue;
      const double v = jac[static_cast<std::size_t>(slot(a, n)) * dim + static_cast<std::size_t>(slot(b, n))];
      s += w.outer(a) * v * v / w.inner(b);
    }
  }
  return std::sqrt(s);
}

template <class C>
FlowReport flow_remainder_check(const VectorField<C>& u, const Family<C>& f, double r,
                                double delta, int d, const WeightTable& w) {
  FlowReport rep;
  rep.r = r;
  rep.delta = delta;
  rep.eps = box_norm(majorant(u), r, w);
  rep.norm_f = box_norm(family_majorant(f), r, w);
  rep.hypothesis_met = delta > 0 && delta < r && rep.eps < delta / (4 * std::numbers::e);
  if (!rep.hypothesis_met) return rep;
  std::vector<VectorField<C>> s, st;
  for (const auto& fi : f) {
    const VectorField<C> si = subtract(lie_conjugate(fi, u, d), jet(fi, d));
    st.push_back(subtract(si, jet(bracket(u, fi), d)));
    s.push_back(si);
  }
  rep.first_lhs = box_norm(family_majorant<C>(std::span<const VectorField<C>>(s)), r - delta, w);
  rep.second_lhs = box_norm(family_majorant<C>(std::span<const VectorField<C>>(st)), r - delta, w);
  rep.first_rhs = 4.0 / delta * rep.norm_f * rep.eps;
  rep.second_rhs = 8.0 * std::numbers::e / (delta * delta) * rep.norm_f * rep.eps * rep.eps;
  rep.first_ok = within(rep.first_lhs, rep.first_rhs);
  rep.second_ok = within(rep.second_lhs, rep.second_rhs);
  return rep;
}

template <class C>
FlowReport flow_linear_remainder_check(const VectorField<C>& u, int N, double r, double delta,
                                       int d, const WeightTable& w) {
  FlowReport rep;
  rep.r = r;
  rep.delta = delta;
  rep.eps = box_norm(majorant(u), r, w);
  rep.hypothesis_met = delta > 0 && delta < r && rep.eps < delta / (8 * std::numbers::e);
  if (!rep.hypothesis_met) return rep;
  std::vector<VectorField<C>> ue, t;
  for (int i = 1; i <= N; ++i) {
    const auto e = fundamental_field<C>(i, u.n(), u.trunc_degree());
    const auto b = jet(bracket(u, e), d);
    t.push_back(subtract(subtract(lie_conjugate(e, u, d), jet(e, d)), b));
    ue.push_back(b);
  }
  rep.first_lhs = box_norm(family_majorant<C>(std::span<const VectorField<C>>(ue)), r - delta, w);
  rep.first_rhs = 2.0 * r / delta * rep.eps;
  rep.second_lhs = box_norm(family_majorant<C>(std::span<const VectorField<C>>(t)), r - delta, w);
  rep.second_rhs = 8.0 * r / (std::numbers::e * delta) * (4.0 * std::numbers::e * rep.eps / delta) * rep.eps;
  rep.first_ok = within(rep.first_lhs, rep.first_rhs);
  rep.second_ok = within(rep.second_lhs, rep.second_rhs);
  return rep;
}

template <class C>
NormReport norm_report(std::string id, const VectorField<C>& x, double r, const WeightTable& w,
                       int samples, std::uint64_t seed) {
  const auto m = majorant(x);
  NormReport rep{std::move(id), r, box_norm(m, r, w), sample_norm(m, r, w, samples, seed), Mode::floating};
  if constexpr (Scalar<C>::exact) rep.mode = Mode::rational;
  return rep;
}

#define BNF_NORMS(C)                                                                              \
  template VectorField<double> majorant(const VectorField<C>&);                                   \
  template VectorField<double> family_majorant(const Family<C>&);                                 \
  template VectorField<double> family_majorant(std::span<const VectorField<C>>);                  \
  template bool dominates(const VectorField<C>&, const VectorField<C>&);                          \
  template NormReport norm_report(std::string, const VectorField<C>&, double, const WeightTable&, \
                                  int, std::uint64_t);

BNF_NORMS(QComplex)
BNF_NORMS(DComplex)
BNF_NORMS(double)
template bool dominates(const VectorField<QComplex>&, const VectorField<double>&);
template bool dominates(const VectorField<DComplex>&, const VectorField<double>&);

template FlowReport flow_remainder_check(const VectorField<QComplex>&, const Family<QComplex>&,
                                         double, double, int, const WeightTable&);
template FlowReport flow_remainder_check(const VectorField<DComplex>&, const Family<DComplex>&,
                                         double, double, int, const WeightTable&);
template FlowReport flow_linear_remainder_check(const VectorField<QComplex>&, int, double, double,
                                                int, const WeightTable&);
template FlowReport flow_linear_remainder_check(const VectorField<DComplex>&, int, double, double,
                                                int, const WeightTable&);

}  // namespace bnf
