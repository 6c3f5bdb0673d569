#pragma once

#include <random>
#include <vector>

#include "bnf/algebra.hpp"

namespace bnf::testing {

using Rng = std::mt19937_64;

inline MultiIndex random_index(Rng& rng, int n, int degree) {
  std::uniform_int_distribution<int> pick(0, 2 * n - 1);
  std::vector<MultiIndex::Entry> e;
  for (int k = 0; k < degree; ++k) {
    const int s = pick(rng);
    e.push_back({s < n ? s - n : s - n + 1, 1});
  }
  return MultiIndex(std::move(e));
}

inline int random_component(Rng& rng, int n) {
  std::uniform_int_distribution<int> pick(0, 2 * n - 1);
  const int s = pick(rng);
  return s < n ? s - n : s - n + 1;
}

template <class C>
C random_coeff(Rng& rng, bool complex = true);

template <>
inline QComplex random_coeff<QComplex>(Rng& rng, bool complex) {
  std::uniform_int_distribution<int> num(-5, 5);
  std::uniform_int_distribution<int> den(1, 4);
  Rational re(num(rng), den(rng));
  Rational im = complex ? Rational(num(rng), den(rng)) : Rational(0);
  if (sgn(re) == 0 && sgn(im) == 0) re = 1;
  return QComplex(re, im);
}

template <>
inline DComplex random_coeff<DComplex>(Rng& rng, bool complex) {
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  return {u(rng), complex ? u(rng) : 0.0};
}

template <>
inline double random_coeff<double>(Rng& rng, bool) {
  std::uniform_real_distribution<double> u(0.0, 1.0);
  return u(rng) + 0.01;
}

template <class C>
VectorField<C> random_field(Rng& rng, int n, int lo, int hi, int count, int trunc) {
  std::uniform_int_distribution<int> deg(lo, hi);
  std::vector<FieldTerm<C>> terms;
  for (int k = 0; k < count; ++k) {
    terms.push_back({random_index(rng, n, deg(rng)), random_component(rng, n), random_coeff<C>(rng)});
  }
  return VectorField<C>(n, trunc, std::move(terms));
}

template <class C>
ScalarFunction<C> random_function(Rng& rng, int n, int lo, int hi, int count, int trunc) {
  std::uniform_int_distribution<int> deg(lo, hi);
  std::vector<ScalarTerm<C>> terms;
  for (int k = 0; k < count; ++k) terms.push_back({random_index(rng, n, deg(rng)), random_coeff<C>(rng)});
  return ScalarFunction<C>(n, trunc, std::move(terms));
}

}  // namespace bnf::testing
