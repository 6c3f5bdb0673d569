#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "bnf/algebra.hpp"

namespace bnf {

// Two weight sequences with w2_j >= w1_j > 0, indexed by |j| = 1..n.
struct WeightTable {
  std::vector<double> w1;
  std::vector<double> w2;

  static WeightTable unit(int n);
  // w1_j = w2_j = rho^j.
  static WeightTable geometric(int n, double rho);

  int n() const { return static_cast<int>(w1.size()); }
  void validate() const;
  double inner(int var) const { return w1[static_cast<std::size_t>(var < 0 ? -var : var) - 1]; }
  double outer(int var) const { return w2[static_cast<std::size_t>(var < 0 ? -var : var) - 1]; }
};

// Relative slack allowed in favour of every checked inequality.
inline constexpr double kInequalitySlack = 1e-9;

inline bool within(double lhs, double rhs) { return lhs <= rhs * (1.0 + kInequalitySlack) + 1e-300; }

template <class C>
VectorField<double> majorant(const VectorField<C>& x);

// Sum of the member majorants.
template <class C>
VectorField<double> family_majorant(const Family<C>& f);
template <class C>
VectorField<double> family_majorant(std::span<const VectorField<C>> members);

// Upper bound for sup_{|z| <= r} |M(z)|_+ obtained from |z_l| <= r / sqrt(w1_l):
// sqrt( sum_j w2_j ( sum_Q M_{Q,j} prod_l (r/sqrt(w1_l))^{q_l} )^2 ).
double box_norm(const VectorField<double>& m, double r, const WeightTable& w);
double box_norm(const VectorField<double>& m, double r);

// Squared box norm with unit weights in exact arithmetic; M must have real
// nonnegative coefficients.
Rational box_norm_squared_exact(const VectorField<QComplex>& m, const Rational& r);

// Max of |M(z)|_{w2} over seeded random nonnegative real z with |z|_{w1} = r.
double sample_norm(const VectorField<double>& m, double r, const WeightTable& w, int samples,
                   std::uint64_t seed);

// |X_{Q,j}| <= |Y_{Q,j}| for every index.
template <class C, class D>
bool dominates(const VectorField<C>& x, const VectorField<D>& y);

// box_norm(M, alpha r) <= alpha^m box_norm(M, r); requires min_degree(M) >= m and 0 < alpha <= 1.
bool scaling_check(const VectorField<double>& m, double r, double alpha, int order,
                   const WeightTable& w);

// Frobenius norm of the weighted Jacobian of M at the corner of the box of
// radius r: an upper bound for sup_{|z|<=r} sup_{|v|<=1} |DM(z) v|_+.
double derivative_bound(const VectorField<double>& m, double r, const WeightTable& w);

struct FlowReport {
  bool hypothesis_met = false;
  double eps = 0;     // box norm of the generator's majorant at r
  double r = 0;
  double delta = 0;
  double norm_f = 0;  // box norm of the family at r (unused for the E variant)
  double first_lhs = 0, first_rhs = 0;
  double second_lhs = 0, second_rhs = 0;
  bool first_ok = false, second_ok = false;
  bool holds() const { return hypothesis_met && first_ok && second_ok; }
};

// S^i = phi^* F^i - F^i and S~^i = S^i - [U, F^i] at truncation d, checked at r - delta
// against (4/delta)|F|_r eps and (8e/delta^2)|F|_r eps^2 when eps < delta/(4e).
template <class C>
FlowReport flow_remainder_check(const VectorField<C>& u, const Family<C>& f, double r,
                                double delta, int d, const WeightTable& w);

// T^i = phi^* E^i - E^i - [U, E^i], i = 1..N, against (8r/(e delta))(4e eps/delta) eps when
// eps < delta/(8e). The first slot reports [U, E] against (2r/delta) eps.
template <class C>
FlowReport flow_linear_remainder_check(const VectorField<C>& u, int N, double r, double delta,
                                       int d, const WeightTable& w);

struct NormReport {
  std::string id;
  double r = 0;
  double box = 0;
  double sample = 0;
  Mode mode = Mode::rational;
};

template <class C>
NormReport norm_report(std::string id, const VectorField<C>& x, double r, const WeightTable& w,
                       int samples = 256, std::uint64_t seed = 1);

}  // namespace bnf
