#pragma once

#include <string>
#include <vector>

#include "bnf/norms.hpp"
#include "bnf/resonance.hpp"

namespace bnf {

// [E^i, F^j] = [E^j, F^i] for all pairs, with N = F.size().
template <class C>
bool cocycle_check(const Family<C>& f);

// A family verified to satisfy the cocycle identity.
template <class C>
class Cocycle {
 public:
  explicit Cocycle(Family<C> members);
  const Family<C>& members() const { return members_; }
  int N() const { return static_cast<int>(members_.size()); }

 private:
  Family<C> members_;
};

// Index i in 1..N maximizing |divisor(Q, l, i)|, smallest i on ties.
int choose_witness(const MultiIndex& q, int l, int N);

// The unique normalized U with [E^j, U] = F^j for all j. Throws
// PreconditionError naming the first resonant (Q, l) carrying a coefficient.
template <class C>
VectorField<C> solve_linear(const Cocycle<C>& f);

// NF^i = E^i + N^i = sum_j (delta_ij + a_ij) E^j, a_ij polynomials in the actions.
template <class C>
class NormalFormFamily {
 public:
  // a[i-1][j-1] = a_ij; every a_ij must be supported on action monomials.
  static NormalFormFamily from_coefficients(int n, int trunc,
                                            std::vector<std::vector<ScalarFunction<C>>> a);
  // Recovers a_ij from N^1..N^N: the e_j component of N^i is a_ij z_j, the
  // e_{-j} component is -a_ij z_{-j}. Throws NotIntegrableError otherwise.
  static NormalFormFamily from_normal_parts(const Family<C>& normal_parts);
  // Same, from the full fields NF^i = E^i + N^i.
  static NormalFormFamily from_fields(const Family<C>& fields);
  // The fundamental family itself (all a_ij = 0).
  static NormalFormFamily identity(int N, int n, int trunc);

  int N() const { return static_cast<int>(fields_.size()); }
  int n() const { return n_; }
  int trunc_degree() const { return trunc_; }
  const ScalarFunction<C>& a(int i, int j) const {
    return a_.at(static_cast<std::size_t>(i - 1)).at(static_cast<std::size_t>(j - 1));
  }
  const VectorField<C>& field(int i) const { return fields_.at(static_cast<std::size_t>(i - 1)); }
  const VectorField<C>& normal_part(int i) const { return normal_.at(static_cast<std::size_t>(i - 1)); }
  Family<C> fields() const { return Family<C>(n_, trunc_, fields_); }
  Family<C> normal_parts() const { return Family<C>(n_, trunc_, normal_); }

 private:
  int n_ = 0;
  int trunc_ = 0;
  std::vector<std::vector<ScalarFunction<C>>> a_;
  std::vector<VectorField<C>> normal_;
  std::vector<VectorField<C>> fields_;
};

// Recursive solver: for k = m+1..2m, [E^i, V_k] = B^i_k + sum_{p=2}^{k-m} [V_{k-p+1}, NF^i_p];
// returns U = sum V_k with J^{2m}[NF^i, U] = B^i. The result carries B's truncation.
template <class C>
VectorField<C> solve_nonlinear_recursive(const NormalFormFamily<C>& nf, const Family<C>& b, int m);

// Spectral solver: per joint eigenvalue lambda,
// U_lambda = Bt/b + (1/b) P(Bt/b), Bt = sum_{i in Supp} eps_i B^i_lambda, b = |lambda| + c_lambda.
template <class C>
VectorField<C> solve_nonlinear_spectral(const NormalFormFamily<C>& nf, const Family<C>& b, int m);

// P_lambda G = sum_j sum_{i in Supp(lambda)} eps_i G(a_ij) E^j.
template <class C>
VectorField<C> p_lambda(const NormalFormFamily<C>& nf, const GeneralizedEigenvalue& lambda,
                        const VectorField<C>& g);

// c_lambda = sum_{i in Supp} eps_i sum_j a_ij lambda_j.
template <class C>
ScalarFunction<C> c_lambda(const NormalFormFamily<C>& nf, const GeneralizedEigenvalue& lambda);

struct SolutionBoundReport {
  bool hypothesis_met = false;
  double dn = 0;      // derivative bound of the normal part at r
  double eps = 0;     // box norm of B at r
  double norm_u = 0;  // box norm of U at r
  double factor = 0;  // norm_u / eps (0 when eps = 0)
  bool holds = false;
};

// Gate: derivative_bound(N, r) <= 1/2. Then checks |U|_r <= 4 |B|_r.
template <class C>
SolutionBoundReport solution_bound_check(const NormalFormFamily<C>& nf, const Family<C>& b,
                                         const VectorField<C>& u, double r, const WeightTable& w);

}  // namespace bnf
