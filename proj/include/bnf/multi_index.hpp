#pragma once

#include <cstddef>
#include <initializer_list>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

namespace bnf {

// Exponent vector Q over the variables z_{-n},...,z_{-1},z_1,...,z_n.
// Stored sparsely as (variable, exponent) pairs sorted by variable with no
// zero exponents; degree() caches |Q|.
class MultiIndex {
 public:
  struct Entry {
    int var;
    int exp;
    friend bool operator==(const Entry&, const Entry&) = default;
  };

  MultiIndex() = default;
  MultiIndex(std::initializer_list<std::pair<int, int>> pairs);
  explicit MultiIndex(std::vector<Entry> entries);

  static MultiIndex unit(int var) { return MultiIndex{{var, 1}}; }

  int degree() const { return degree_; }
  bool empty() const { return entries_.empty(); }
  int exponent(int var) const;
  std::span<const Entry> entries() const { return entries_; }

  // Largest |var| appearing, 0 for the empty index.
  int max_abs_var() const;

  MultiIndex operator+(const MultiIndex& other) const;
  // Q - e_var, or nullopt when q_var == 0.
  std::optional<MultiIndex> minus_unit(int var) const;
  // (P + Q) - e_var; requires that the combined exponent of var is positive.
  static MultiIndex sum_minus_unit(const MultiIndex& p, const MultiIndex& q, int var);

  // True when Q is a product of actions (z_l z_{-l})^{k_l}.
  bool is_action_monomial() const;
  // Exponents alpha on z_+ and beta on z_- agree.
  bool balanced() const { return is_action_monomial(); }

  std::size_t hash() const;
  std::string to_string() const;  // "1^2,-1" style, "-" for the empty index

  friend bool operator==(const MultiIndex& a, const MultiIndex& b) {
    return a.degree_ == b.degree_ && a.entries_ == b.entries_;
  }

 private:
  std::vector<Entry> entries_;
  int degree_ = 0;
};

// Canonical order: degree, then lexicographic on (q_{-n},...,q_{-1},q_1,...,q_n).
// Returns <0, 0, >0.
int compare(const MultiIndex& a, const MultiIndex& b);

// Every exponent vector of the given degree over z_{-n..-1}, z_{1..n}, in canonical order.
std::vector<MultiIndex> all_indices(int n, int degree);

struct MultiIndexHash {
  std::size_t operator()(const MultiIndex& q) const { return q.hash(); }
};

}  // namespace bnf
