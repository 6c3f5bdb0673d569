#pragma once

#include <optional>
#include <string>
#include <vector>

#include "bnf/newton.hpp"

namespace bnf {

// Psi = 1 + G: component k of g is G^k, so Psi_k = z_k + G^k.
template <class C>
class NearIdentityMap {
 public:
  NearIdentityMap() = default;
  explicit NearIdentityMap(VectorField<C> g) : g_(std::move(g)) {}

  int n() const { return g_.n(); }
  int trunc_degree() const { return g_.trunc_degree(); }
  const VectorField<C>& g() const { return g_; }
  ScalarFunction<C> g_component(int k) const { return component(g_, k); }
  ScalarFunction<C> psi(int k) const;
  // G has a zero of second order at the origin.
  bool admissible() const { return g_.min_degree() >= 2; }

 private:
  VectorField<C> g_;
};

// I_j = Psi_j Psi_{-j}, j = 1..n, truncated at trunc + 1.
template <class C>
std::vector<ScalarFunction<C>> actions(const NearIdentityMap<C>& psi);

// Member l is i X_{I_l}, assembled termwise from Psi_l, Psi_{-l} and the first
// derivatives of G^{l}, G^{-l}. Linear part E^l.
template <class C>
Family<C> kp_fields(const NearIdentityMap<C>& psi);

// Member l is i * hamiltonian_vf(I_l).
template <class C>
Family<C> kp_fields_hamiltonian(const NearIdentityMap<C>& psi);

struct KpFailure {
  int j = 0;
  int k = 0;
  int degree = 0;
};

struct KpReport {
  int g_order = 0;
  bool g_order_ok = false;
  int degree = 0;  // {I_j, I_k} checked through this degree
  bool kp1_ok = false;
  std::optional<KpFailure> first_failure;
  std::string kp2 = "holds trivially (finite dimension)";
  bool passed() const { return g_order_ok && kp1_ok; }
};

// {I_j, I_k} = 0 through degree d for all pairs; min_degree(G) >= 2.
template <class C>
KpReport kp_hypothesis_check(const NearIdentityMap<C>& psi, int d);

// Psi_k = z_k o phi for the time-1 flow phi of X_w, truncated at trunc.
template <class C>
NearIdentityMap<C> canonical_flow_map(const ScalarFunction<C>& w, int trunc);

}  // namespace bnf
