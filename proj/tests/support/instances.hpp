#pragma once

#include "bnf/newton.hpp"
#include "random_fields.hpp"

namespace bnf::testing {

inline MultiIndex random_action_monomial(Rng& rng, int n, int pairs) {
  std::uniform_int_distribution<int> pick(1, n);
  std::vector<MultiIndex::Entry> e;
  for (int k = 0; k < pairs; ++k) {
    const int l = pick(rng);
    e.push_back({l, 1});
    e.push_back({-l, 1});
  }
  return MultiIndex(std::move(e));
}

// Random polynomial in the actions with terms of degree 2..max_degree.
template <class C>
ScalarFunction<C> random_action_function(Rng& rng, int n, int max_degree, int count, int trunc,
                                         bool complex = true) {
  std::vector<ScalarTerm<C>> terms;
  if (max_degree >= 2) {
    std::uniform_int_distribution<int> pairs(1, max_degree / 2);
    for (int k = 0; k < count; ++k) {
      terms.push_back({random_action_monomial(rng, n, pairs(rng)), random_coeff<C>(rng, complex)});
    }
  }
  return ScalarFunction<C>(n, trunc, std::move(terms));
}

template <class C>
NormalFormFamily<C> random_normal_form(Rng& rng, int N, int n, int max_a_degree, int trunc) {
  std::vector<std::vector<ScalarFunction<C>>> a(static_cast<std::size_t>(N));
  for (auto& row : a) {
    for (int j = 0; j < N; ++j) row.push_back(random_action_function<C>(rng, n, max_a_degree, 2, trunc - 1));
  }
  return NormalFormFamily<C>::from_coefficients(n, trunc, std::move(a));
}

template <class C>
VectorField<C> random_normalized(Rng& rng, int n, int N, int lo, int hi, int count, int trunc) {
  return split(random_field<C>(rng, n, lo, hi, count, trunc), N).nres;
}

// A nonresonant cocycle built coefficientwise: F^j_{Q,l} = divisor(Q,l,j) u_{Q,l}.
template <class C>
Family<C> random_cocycle(Rng& rng, int n, int N, int degree, int count, int trunc) {
  const VectorField<C> u = random_normalized<C>(rng, n, N, degree, degree, count, trunc);
  Family<C> f(n, trunc);
  for (int j = 1; j <= N; ++j) {
    std::vector<FieldTerm<C>> terms;
    for (const auto& t : u.terms()) {
      C c = t.coeff;
      Scalar<C>::scale_int(c, divisor(t.index, t.component, j));
      terms.push_back({t.index, t.component, std::move(c)});
    }
    f.push_back(VectorField<C>(n, trunc, std::move(terms)));
  }
  return f;
}

template <class C>
struct NonlinearInstance {
  NormalFormFamily<C> nf;
  Family<C> b;
  VectorField<C> w;
  int m;
};

// B^i = J^{2m}[NF^i, W] for a random normalized W of degrees m+1..2m, so W is the answer.
template <class C>
NonlinearInstance<C> random_nonlinear_instance(Rng& rng, int n, int m, int terms = 6) {
  const int trunc = 2 * m;
  auto nf = random_normal_form<C>(rng, n, n, std::max(2, m - 1), trunc);
  auto w = random_normalized<C>(rng, n, n, m + 1, 2 * m, terms, trunc);
  Family<C> b(n, trunc);
  for (int i = 1; i <= n; ++i) b.push_back(split(jet(bracket(nf.field(i), w), 2 * m), n).nres);
  return {std::move(nf), std::move(b), std::move(w), m};
}

// Random Hamiltonian with count monomials of degree lo..hi, none of them a
// product of actions, so that X_w has no resonant part.
template <class C>
ScalarFunction<C> random_unbalanced_function(Rng& rng, int n, int lo, int hi, int count, int trunc) {
  std::uniform_int_distribution<int> deg(lo, hi);
  std::vector<ScalarTerm<C>> terms;
  while (static_cast<int>(terms.size()) < count) {
    MultiIndex q = random_index(rng, n, deg(rng));
    if (!q.balanced()) terms.push_back({std::move(q), random_coeff<C>(rng)});
  }
  return ScalarFunction<C>(n, trunc, std::move(terms));
}

// A commuting family in the shape of the integrable Hamiltonian case:
// NF^i = i X_{h_i} with h_i = I_i + (action polynomial), conjugated by the
// time-1 flow of U = X_w: X^i = lie_conjugate(NF^i, U). g is a further action
// polynomial and H = g o phi_U commutes with every X^i.
template <class C>
struct HamiltonianInstance {
  int n = 0;
  int trunc = 0;
  std::vector<ScalarFunction<C>> h;
  ScalarFunction<C> w;
  VectorField<C> u;
  Family<C> nf;
  Family<C> x;
  ScalarFunction<C> g;
  ScalarFunction<C> hamiltonian;
};

template <class C>
HamiltonianInstance<C> random_hamiltonian_instance(Rng& rng, int n, int trunc, int w_terms = 2,
                                                   int w_lo = 3, int w_hi = 4) {
  HamiltonianInstance<C> inst;
  inst.n = n;
  inst.trunc = trunc;
  const C iu = Scalar<C>::imag_unit();
  inst.nf = Family<C>(n, trunc);
  inst.x = Family<C>(n, trunc);
  inst.w = ScalarFunction<C>(n, trunc + 1);
  for (int d = w_lo; d <= w_hi; ++d) {
    inst.w = add(inst.w, random_unbalanced_function<C>(rng, n, d, d, w_terms, trunc + 1));
  }
  inst.u = hamiltonian_vf(inst.w);
  for (int i = 1; i <= n; ++i) {
    const auto extra = random_action_function<C>(rng, n, 6, 3, trunc + 1, false);
    ScalarFunction<C> hi = add(action<C>(i, n, trunc + 1), degree_slice(extra, 4, trunc + 1));
    VectorField<C> f = scale(hamiltonian_vf(hi), iu);
    inst.h.push_back(std::move(hi));
    inst.x.push_back(lie_conjugate(f, inst.u, trunc));
    inst.nf.push_back(std::move(f));
  }
  inst.g = add(action<C>(1, n, trunc + 1), random_action_function<C>(rng, n, 6, 3, trunc + 1, false));
  const std::vector<VectorField<C>> gens{inst.u};
  inst.hamiltonian = apply_transform(inst.g, std::span<const VectorField<C>>(gens), trunc + 1);
  return inst;
}

}  // namespace bnf::testing
