#pragma once

#include <map>
#include <vector>

#include "bnf/polynomial.hpp"

namespace bnf {

// mu^i_j = delta_ij - delta_{i,-j}.
int mu(int i, int j);

// (Q, mu^i) - mu^i_j = q_i - q_{-i} - mu^i_j: the eigenvalue of [E^i, .] on z^Q e_j.
int divisor(const MultiIndex& q, int j, int i);

// (divisor(Q,j,1), ..., divisor(Q,j,N)).
std::vector<int> divisor_vector(const MultiIndex& q, int j, int N);

bool is_resonant(const MultiIndex& q, int j, int N);

template <class C>
struct SplitResult {
  VectorField<C> res;
  VectorField<C> nres;
};

template <class C>
SplitResult<C> split(const VectorField<C>& x, int N);

template <class C>
bool is_normalized(const VectorField<C>& x, int N) {
  return split(x, N).res.empty();
}

// Min over nonresonant (Q, j) with |Q| <= d_max (n = N variable pairs) of
// max_i |divisor(Q, j, i)|.
int small_divisor_audit(int d_max, int N);

// Joint eigenvalue of [E^1, .], ..., [E^N, .]. The block H_lambda spans all
// degrees; lambda alone determines it.
struct GeneralizedEigenvalue {
  std::vector<int> lambda;

  int norm() const;  // |lambda| = sum |lambda_i|
  std::vector<int> support() const;  // 1-based i with lambda_i != 0
  bool is_zero() const { return norm() == 0; }
  friend auto operator<=>(const GeneralizedEigenvalue&, const GeneralizedEigenvalue&) = default;
  friend bool operator==(const GeneralizedEigenvalue&, const GeneralizedEigenvalue&) = default;
};

template <class C>
std::map<GeneralizedEigenvalue, VectorField<C>> eigen_decompose(const VectorField<C>& x, int N);

}  // namespace bnf
