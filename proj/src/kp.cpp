#include "bnf/kp.hpp"

namespace bnf {

namespace {

template <class C>
void append_component(std::vector<FieldTerm<C>>& out, const ScalarFunction<C>& f, int k) {
  for (const auto& t : f.terms()) out.push_back({t.index, k, t.coeff});
}

}  // namespace

template <class C>
ScalarFunction<C> NearIdentityMap<C>::psi(int k) const {
  return add(coordinate<C>(k, n(), trunc_degree()), g_component(k));
}

template <class C>
std::vector<ScalarFunction<C>> actions(const NearIdentityMap<C>& psi) {
  std::vector<ScalarFunction<C>> out;
  for (int j = 1; j <= psi.n(); ++j) {
    out.push_back(jet(multiply(psi.psi(j), psi.psi(-j)), psi.trunc_degree() + 1));
  }
  return out;
}

template <class C>
Family<C> kp_fields(const NearIdentityMap<C>& psi) {
  const int n = psi.n();
  const int d = psi.trunc_degree();
  Family<C> out(n, d);
  for (int l = 1; l <= n; ++l) {
    const ScalarFunction<C> psi_p = psi.psi(l);
    const ScalarFunction<C> psi_m = psi.psi(-l);
    const ScalarFunction<C> g_p = psi.g_component(l);
    const ScalarFunction<C> g_m = psi.g_component(-l);
    const ScalarFunction<C> z_p = coordinate<C>(l, n, d);
    const ScalarFunction<C> z_m = coordinate<C>(-l, n, d);
    std::vector<FieldTerm<C>> terms;
    for (int k = 1; k <= n; ++k) {
      // Component k: derivatives in z_{-k}.
      const ScalarFunction<C> dgm = derivative(g_m, -k);
      const ScalarFunction<C> dgp = derivative(g_p, -k);
      ScalarFunction<C> c(n, d);
      if (l == k) c = add(add(c, coordinate<C>(k, n, d)), psi.g_component(k));
      c = add(c, multiply(z_p, dgm));
      c = add(c, multiply(g_p, dgm));
      c = add(c, multiply(z_m, dgp));
      c = add(c, multiply(g_m, dgp));
      append_component(terms, jet(c, d), k);
      // Component -k: minus the derivative of I_l in z_k.
      const ScalarFunction<C> egm = derivative(g_m, k);
      const ScalarFunction<C> egp = derivative(g_p, k);
      ScalarFunction<C> e(n, d);
      if (l == k) e = add(e, psi_m);
      e = add(e, multiply(psi_p, egm));
      e = add(e, multiply(psi_m, egp));
      append_component(terms, jet(scale(e, Scalar<C>::from_int(-1)), d), -k);
    }
    out.push_back(VectorField<C>(n, d, std::move(terms)));
  }
  return out;
}

template <class C>
Family<C> kp_fields_hamiltonian(const NearIdentityMap<C>& psi) {
  Family<C> out(psi.n(), psi.trunc_degree());
  for (const auto& i : actions(psi)) {
    out.push_back(scale(hamiltonian_vf(i), Scalar<C>::imag_unit()));
  }
  return out;
}

template <class C>
KpReport kp_hypothesis_check(const NearIdentityMap<C>& psi, int d) {
  KpReport rep;
  rep.g_order = psi.g().empty() ? psi.trunc_degree() + 1 : psi.g().min_degree();
  rep.g_order_ok = psi.admissible();
  const auto acts = actions(psi);
  rep.degree = d;
  rep.kp1_ok = true;
  for (int j = 1; j <= psi.n() && rep.kp1_ok; ++j) {
    for (int k = j + 1; k <= psi.n(); ++k) {
      const ScalarFunction<C> p = poisson(acts[static_cast<std::size_t>(j - 1)],
                                          acts[static_cast<std::size_t>(k - 1)]);
      rep.degree = std::min(rep.degree, p.trunc_degree());
      if (!p.empty() && p.min_degree() <= d) {
        rep.kp1_ok = false;
        rep.first_failure = KpFailure{j, k, p.min_degree()};
        break;
      }
    }
  }
  return rep;
}

template <class C>
NearIdentityMap<C> canonical_flow_map(const ScalarFunction<C>& w, int trunc) {
  const int n = w.n();
  const std::vector<VectorField<C>> gens{hamiltonian_vf(jet(w, trunc + 1))};
  std::vector<FieldTerm<C>> terms;
  for (int s = 0; s < 2 * n; ++s) {
    const int k = s < n ? s - n : s - n + 1;
    const ScalarFunction<C> zk = coordinate<C>(k, n, trunc);
    const ScalarFunction<C> g = subtract(apply_transform(zk, std::span<const VectorField<C>>(gens), trunc), zk);
    append_component(terms, g, k);
  }
  return NearIdentityMap<C>(VectorField<C>(n, trunc, std::move(terms)));
}

#define BNF_INSTANTIATE_KP(C)                                                   \
  template class NearIdentityMap<C>;                                            \
  template std::vector<ScalarFunction<C>> actions(const NearIdentityMap<C>&);   \
  template Family<C> kp_fields(const NearIdentityMap<C>&);                      \
  template Family<C> kp_fields_hamiltonian(const NearIdentityMap<C>&);          \
  template KpReport kp_hypothesis_check(const NearIdentityMap<C>&, int);        \
  template NearIdentityMap<C> canonical_flow_map(const ScalarFunction<C>&, int);

BNF_INSTANTIATE_KP(QComplex)
BNF_INSTANTIATE_KP(DComplex)

}  // namespace bnf
