#pragma once

#include <span>
#include <vector>

#include "bnf/polynomial.hpp"

namespace bnf {

// ---- construction -------------------------------------------------------

template <class C>
VectorField<C> monomial_field(int n, int trunc, MultiIndex q, int component, C coeff);

// E^i = z_i e_i - z_{-i} e_{-i}.
template <class C>
VectorField<C> fundamental_field(int i, int n, int trunc);

// E^1..E^N.
template <class C>
Family<C> fundamental_family(int N, int n, int trunc);

template <class C>
ScalarFunction<C> monomial_function(int n, int trunc, MultiIndex q, C coeff);

// The coordinate function z_var.
template <class C>
ScalarFunction<C> coordinate(int var, int n, int trunc);

// The action z_j z_{-j}.
template <class C>
ScalarFunction<C> action(int j, int n, int trunc);

// ---- linear structure ---------------------------------------------------

template <class C>
VectorField<C> add(const VectorField<C>& x, const VectorField<C>& y);
template <class C>
VectorField<C> subtract(const VectorField<C>& x, const VectorField<C>& y);
template <class C>
VectorField<C> scale(const VectorField<C>& x, const C& s);
template <class C>
VectorField<C> negate(const VectorField<C>& x);

// Terms of degree <= d; the result carries trunc min(d, trunc(X)).
template <class C>
VectorField<C> jet(const VectorField<C>& x, int d);
// Terms with lo <= degree <= hi; trunc unchanged.
template <class C>
VectorField<C> degree_slice(const VectorField<C>& x, int lo, int hi);
// Same terms, declared truncation lowered to d (terms above d dropped).
template <class C>
VectorField<C> retruncate(const VectorField<C>& x, int d);

template <class C>
ScalarFunction<C> add(const ScalarFunction<C>& h, const ScalarFunction<C>& k);
template <class C>
ScalarFunction<C> subtract(const ScalarFunction<C>& h, const ScalarFunction<C>& k);
template <class C>
ScalarFunction<C> scale(const ScalarFunction<C>& h, const C& s);
template <class C>
ScalarFunction<C> jet(const ScalarFunction<C>& h, int d);
template <class C>
ScalarFunction<C> degree_slice(const ScalarFunction<C>& h, int lo, int hi);

// ---- products and derivatives -------------------------------------------

template <class C>
ScalarFunction<C> multiply(const ScalarFunction<C>& f, const ScalarFunction<C>& g);
// f * X.
template <class C>
VectorField<C> multiply(const ScalarFunction<C>& f, const VectorField<C>& x);
template <class C>
ScalarFunction<C> derivative(const ScalarFunction<C>& h, int var);
// Lie derivative of a function along a field: V(H) = dH . V.
template <class C>
ScalarFunction<C> lie_derivative(const VectorField<C>& v, const ScalarFunction<C>& h);
// Component j of X as a scalar function.
template <class C>
ScalarFunction<C> component(const VectorField<C>& x, int j);

// ---- Lie algebra ----------------------------------------------------------

enum class KernelPolicy { automatic, serial, parallel };

// [X,Y] = DY.X - DX.Y, so that [E^i, z^Q e_j] = ((Q,mu^i) - mu^i_j) z^Q e_j.
// Truncated at the largest degree where the result is exact given the inputs'
// truncations and orders of vanishing.
template <class C>
VectorField<C> bracket(const VectorField<C>& x, const VectorField<C>& y,
                       KernelPolicy policy = KernelPolicy::automatic);

// Plain double loop over term pairs. Reference for the chunked kernel.
template <class C>
VectorField<C> bracket_serial(const VectorField<C>& x, const VectorField<C>& y);

// OpenMP kernel: X's terms are cut into fixed-size chunks accumulated
// independently and merged in chunk order, so float results do not depend on
// the thread count.
template <class C>
VectorField<C> bracket_parallel(const VectorField<C>& x, const VectorField<C>& y);

// sum_k ad_U^k X / k! modulo degree > d, with ad_U X = [U, X]. This is the
// pull-back of X by the time-1 flow of U. Requires min_degree(U) >= 2.
template <class C>
VectorField<C> lie_conjugate(const VectorField<C>& x, const VectorField<C>& u, int d,
                             KernelPolicy policy = KernelPolicy::automatic);

// Largest coefficient modulus of X - Y over the common truncation.
template <class C>
double max_abs_difference(const VectorField<C>& x, const VectorField<C>& y);

// Exact equality in rational mode; in float mode every coefficient of X - Y
// is below tol * (1 + largest coefficient of X or Y).
template <class C>
bool equal_within(const VectorField<C>& x, const VectorField<C>& y, double tol = 1e-9);

// Position of z_var in a dense vector ordered z_{-n},...,z_{-1},z_1,...,z_n.
inline int slot(int var, int n) { return var < 0 ? var + n : var + n - 1; }

// Pointwise values; z is dense in slot order. The field result is also dense.
template <class C>
std::vector<DComplex> evaluate(const VectorField<C>& x, std::span<const DComplex> z);
template <class C>
DComplex evaluate(const ScalarFunction<C>& h, std::span<const DComplex> z);

// ---- Hamiltonian structure ------------------------------------------------

// (X_H)_k = -i sgn(k) dH/dz_{-k}.
template <class C>
VectorField<C> hamiltonian_vf(const ScalarFunction<C>& h);

// {H,K} = dH . X_K.
template <class C>
ScalarFunction<C> poisson(const ScalarFunction<C>& h, const ScalarFunction<C>& k);

// H o T^{-1} where T^{-1} = phi_1 o ... o phi_k for the time-1 flows of the
// generators in order: applies sum_j U^j(H)/j! per generator, first to last.
template <class C>
ScalarFunction<C> apply_transform(const ScalarFunction<C>& h,
                                  std::span<const VectorField<C>> generators, int d);

// Truncation bookkeeping shared by the kernels.
namespace trunc_rule {
int bracket(int tx, int mx, int ty, int my);
int product(int tf, int mf, int tg, int mg);
int lie_derivative(int tv, int mv, int th, int mh);
}  // namespace trunc_rule

}  // namespace bnf
