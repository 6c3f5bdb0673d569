#pragma once

#include <optional>
#include <string>
#include <vector>

#include "bnf/cohomology.hpp"

namespace bnf {

// Smallest admissible b: 8 + 2 ln(48) / ln 2.
double min_b();

struct Clause {
  std::string name;
  double bound;
};

// b, c0, c1 = 4^{b+2}/3, r0 and the derived eps0 = c0 r0^2, delta0 = r0/2, delta = r0/c1.
struct SchemeConstants {
  double b = 20;
  double c0 = 1;
  double c1 = 0;
  double r0 = 0;

  static SchemeConstants make(double b, double c0, double r0);
  // c0 = box norm of the family at radius 1 (so |F|_{r0} <= c0 r0^2 by the
  // scaling lemma), r0 = fraction * min of the clauses.
  template <class C>
  static SchemeConstants for_family(const Family<C>& f, double b = 20, double fraction = 0.5,
                                    const WeightTable* w = nullptr);

  double eps0() const { return c0 * r0 * r0; }
  double delta0() const { return r0 / 2; }
  double delta() const { return r0 / c1; }
  double r_inf() const;

  // The legible clauses of the radius condition, each an upper bound for r0.
  std::vector<Clause> clauses() const;
  // Empty when every constraint holds; otherwise one message per violation.
  std::vector<std::string> violations() const;
  bool valid() const { return violations().empty(); }
};

struct SequenceRow {
  int k = 0;
  double q = 0;      // q_{2^k}
  double eps = 0;    // eps_k
  double delta = 0;  // delta_k
  double r = 0;      // r_k
  double d_product = 0;
  double d_closed = 0;
};

struct SequenceTable {
  std::vector<SequenceRow> rows;  // k = 0..K
  double r_inf = 0;
};

// q_m = m^{-b/m}; eps_k = eps0/4^k; delta_0 = r0/2, delta_k = delta/4^k (k >= 1);
// r_1 = r0/8, r_{k+1} = q_{2^k}(r_k - delta_k); d_k = prod_{l<k} q_{2^l}.
SequenceTable sequences(int K, const SchemeConstants& c);

struct AuditEntry {
  std::string name;
  int k = 0;
  double lhs = 0;
  double rhs = 0;
  bool ok = false;
};

struct AuditReport {
  std::vector<AuditEntry> entries;
  bool passed() const;
};

// d_k product vs closed form (1e-12 relative), r_k >= r_inf, both sums of the
// eps lemma, and the partial sums of sum 1/(k 2^k) against ln 2.
AuditReport sequence_lemma_audit(int K, const SchemeConstants& c);

struct LedgerRow {
  int k = 0;
  int m = 1;
  double norm_r = 0;
  double norm_n = 0;
  double norm_dn = 0;
  double eps_k = 0;
  double r_k = 0;
  bool i1_ok = false, i2_ok = false, i3_ok = false;
  // Pieces of the next remainder at r_k - delta_k; absent on the last row.
  std::optional<double> r11, r12, r2, r3;
};

enum class SolverMethod { recursive, spectral, both };

struct RunConfig {
  int steps = 3;
  int trunc = 16;
  SolverMethod method = SolverMethod::recursive;
  bool diagnostics = true;
  std::optional<SchemeConstants> constants;  // derived from the input family when absent
  WeightTable weights;                       // unit weights when empty
};

template <class C>
struct IterationState {
  int k = 0;
  int N = 0;
  NormalFormFamily<C> nf;  // degree <= m
  Family<C> remainder;     // min degree >= m + 1
  std::vector<VectorField<C>> generators;
  std::vector<LedgerRow> ledger;

  int m() const { return 1 << k; }
  Family<C> family() const;
  static IterationState initial(const Family<C>& x);
};

// Largest degree through which [X^i, X^j] vanishes for all pairs, or the
// truncation when it vanishes entirely. -1 if a pair fails below degree 1.
template <class C>
int commuting_degree(const Family<C>& x);

struct StepPieces {
  double r11 = 0, r12 = 0, r2 = 0, r3 = 0;
};

// One degree-doubling step: B = J^{2m} R, N' = N + B_res, U solves
// J^{2m}[NF^i, U] = B^i_nres, X' = lie_conjugate(X, U), R' = X' - E - N'.
template <class C>
IterationState<C> newton_step(const IterationState<C>& s, const SchemeConstants& c,
                              const RunConfig& cfg);

// Ledger row of the state's inequalities (i.1)-(i.3) at r_k.
template <class C>
LedgerRow step_inequality_audit(const IterationState<C>& s, const SchemeConstants& c,
                                const WeightTable& w);

template <class C>
struct RunResult {
  IterationState<C> state;
  SchemeConstants constants;
  int commuting_degree = 0;
  Family<C> family() const { return state.family(); }
};

template <class C>
RunResult<C> run(const Family<C>& x, const RunConfig& cfg);

// Undo the run: conjugate the final family by the negated generators in reverse order.
template <class C>
Family<C> undo_generators(const Family<C>& x, std::span<const VectorField<C>> generators, int d);

template <class C>
struct BirkhoffReport {
  bool precondition_ok = false;  // X^i(H) vanishes through d for the supplied fields
  int degree = 0;
  std::vector<ScalarTerm<C>> violations;  // alpha != beta terms of the transformed H
  ScalarFunction<C> transformed;
  bool passed() const { return precondition_ok && violations.empty(); }
};

// Pulls H through the generators (apply_transform) and lists every monomial
// z_+^alpha z_-^beta with alpha != beta through degree d.
template <class C>
BirkhoffReport<C> birkhoff_check(const ScalarFunction<C>& h, std::span<const VectorField<C>> generators,
                                 int d, const Family<C>* fields = nullptr);

std::string to_string(SolverMethod m);
SolverMethod parse_solver_method(const std::string& s);

}  // namespace bnf
