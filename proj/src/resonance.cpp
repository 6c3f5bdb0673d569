#include "bnf/resonance.hpp"

#include <cstdlib>

namespace bnf {

int mu(int i, int j) {
  if (j == i) return 1;
  if (j == -i) return -1;
  return 0;
}

int divisor(const MultiIndex& q, int j, int i) { return q.exponent(i) - q.exponent(-i) - mu(i, j); }

std::vector<int> divisor_vector(const MultiIndex& q, int j, int N) {
  std::vector<int> out(static_cast<std::size_t>(N));
  for (int i = 1; i <= N; ++i) out[static_cast<std::size_t>(i - 1)] = divisor(q, j, i);
  return out;
}

bool is_resonant(const MultiIndex& q, int j, int N) {
  for (int i = 1; i <= N; ++i) {
    if (divisor(q, j, i) != 0) return false;
  }
  return true;
}

template <class C>
SplitResult<C> split(const VectorField<C>& x, int N) {
  std::vector<FieldTerm<C>> res, nres;
  for (const auto& t : x.terms()) {
    (is_resonant(t.index, t.component, N) ? res : nres).push_back(t);
  }
  return {VectorField<C>::from_canonical(x.n(), x.trunc_degree(), std::move(res)),
          VectorField<C>::from_canonical(x.n(), x.trunc_degree(), std::move(nres))};
}

int small_divisor_audit(int d_max, int N) {
  if (d_max < 2) throw InputError("small divisor audit needs d_max >= 2");
  if (N < 1) throw InputError("small divisor audit needs N >= 1");
  int best = -1;
  for (int d = 0; d <= d_max; ++d) {
    for (const auto& q : all_indices(N, d)) {
      for (int j = -N; j <= N; ++j) {
        if (j == 0 || is_resonant(q, j, N)) continue;
        int m = 0;
        for (int i = 1; i <= N; ++i) m = std::max(m, std::abs(divisor(q, j, i)));
        best = best < 0 ? m : std::min(best, m);
      }
    }
  }
  return best;
}

int GeneralizedEigenvalue::norm() const {
  int s = 0;
  for (int l : lambda) s += std::abs(l);
  return s;
}

std::vector<int> GeneralizedEigenvalue::support() const {
  std::vector<int> out;
  for (std::size_t k = 0; k < lambda.size(); ++k) {
    if (lambda[k] != 0) out.push_back(static_cast<int>(k) + 1);
  }
  return out;
}

template <class C>
std::map<GeneralizedEigenvalue, VectorField<C>> eigen_decompose(const VectorField<C>& x, int N) {
  std::map<GeneralizedEigenvalue, std::vector<FieldTerm<C>>> blocks;
  for (const auto& t : x.terms()) blocks[{divisor_vector(t.index, t.component, N)}].push_back(t);
  std::map<GeneralizedEigenvalue, VectorField<C>> out;
  for (auto& [lam, terms] : blocks) {
    out.emplace(lam, VectorField<C>::from_canonical(x.n(), x.trunc_degree(), std::move(terms)));
  }
  return out;
}

template SplitResult<QComplex> split(const VectorField<QComplex>&, int);
template SplitResult<DComplex> split(const VectorField<DComplex>&, int);
template SplitResult<double> split(const VectorField<double>&, int);
template std::map<GeneralizedEigenvalue, VectorField<QComplex>> eigen_decompose(
    const VectorField<QComplex>&, int);
template std::map<GeneralizedEigenvalue, VectorField<DComplex>> eigen_decompose(
    const VectorField<DComplex>&, int);

}  // namespace bnf
