#pragma once

#include <algorithm>
#include <limits>
#include <span>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "bnf/coefficient.hpp"
#include "bnf/errors.hpp"
#include "bnf/multi_index.hpp"

namespace bnf {

// min_degree() of an empty polynomial.
inline constexpr int kNoDegree = std::numeric_limits<int>::max();

template <class C>
struct FieldTerm {
  MultiIndex index;
  int component;  // j in {-n..-1, 1..n}: the term is coeff * z^index * e_j
  C coeff;
};

template <class C>
struct ScalarTerm {
  MultiIndex index;
  C coeff;
};

namespace detail {

inline void check_var(int var, int n, const char* what) {
  if (var == 0 || var < -n || var > n) {
    throw InputError(std::string(what) + " index " + std::to_string(var) +
                     " outside {-n..-1,1..n} with n=" + std::to_string(n));
  }
}

template <class T>
int term_component(const T& t) {
  if constexpr (requires { t.component; }) {
    return t.component;
  } else {
    return 0;
  }
}

// Sort into canonical order, merge duplicates by summation, drop zeros and
// terms above the truncation degree.
template <class T>
void canonicalize(std::vector<T>& terms, int trunc) {
  using C = decltype(T::coeff);
  std::erase_if(terms, [trunc](const T& t) { return t.index.degree() > trunc; });
  std::sort(terms.begin(), terms.end(), [](const T& a, const T& b) {
    const int c = compare(a.index, b.index);
    if (c != 0) return c < 0;
    return term_component(a) < term_component(b);
  });
  std::vector<T> out;
  out.reserve(terms.size());
  for (auto& t : terms) {
    if (!out.empty() && out.back().index == t.index &&
        term_component(out.back()) == term_component(t)) {
      out.back().coeff += t.coeff;
    } else {
      out.push_back(std::move(t));
    }
  }
  std::erase_if(out, [](const T& t) { return Scalar<C>::is_zero(t.coeff); });
  terms = std::move(out);
}

template <class T>
const T* find_term(std::span<const T> terms, const MultiIndex& q, int comp) {
  auto it = std::lower_bound(terms.begin(), terms.end(), 0, [&](const T& t, int) {
    const int c = compare(t.index, q);
    if (c != 0) return c < 0;
    return term_component(t) < comp;
  });
  if (it != terms.end() && it->index == q && term_component(*it) == comp) return &*it;
  return nullptr;
}

}  // namespace detail

// Truncated formal polynomial vector field X(z) = sum X_{Q,j} z^Q e_j over
// n variable pairs. Terms are kept in canonical sparse form: sorted, no
// zero coefficients, every degree <= trunc_degree().
template <class C>
class VectorField {
 public:
  using Coefficient = C;
  using Term = FieldTerm<C>;

  VectorField() = default;
  VectorField(int n, int trunc_degree) : n_(n), trunc_(trunc_degree) {
    if (n < 0) throw InputError("negative variable count");
  }
  VectorField(int n, int trunc_degree, std::vector<Term> terms)
      : n_(n), trunc_(trunc_degree), terms_(std::move(terms)) {
    for (const auto& t : terms_) {
      detail::check_var(t.component, n_, "component");
      for (const auto& e : t.index.entries()) detail::check_var(e.var, n_, "variable");
    }
    detail::canonicalize(terms_, trunc_);
  }

  int n() const { return n_; }
  int trunc_degree() const { return trunc_; }
  bool empty() const { return terms_.empty(); }
  std::size_t size() const { return terms_.size(); }
  std::span<const Term> terms() const { return terms_; }

  int min_degree() const { return terms_.empty() ? kNoDegree : terms_.front().index.degree(); }
  int max_degree() const { return terms_.empty() ? -1 : terms_.back().index.degree(); }

  C coefficient(const MultiIndex& q, int component) const {
    const Term* t = detail::find_term<Term>(terms_, q, component);
    return t ? t->coeff : Scalar<C>::zero();
  }

  friend bool operator==(const VectorField& a, const VectorField& b) {
    if (a.n_ != b.n_ || a.trunc_ != b.trunc_ || a.terms_.size() != b.terms_.size()) return false;
    for (std::size_t k = 0; k < a.terms_.size(); ++k) {
      const auto& x = a.terms_[k];
      const auto& y = b.terms_[k];
      if (x.component != y.component || !(x.index == y.index) || !(x.coeff == y.coeff)) {
        return false;
      }
    }
    return true;
  }

  // Trusted constructor for kernels that already produce canonical terms.
  static VectorField from_canonical(int n, int trunc, std::vector<Term> terms) {
    VectorField out(n, trunc);
    out.terms_ = std::move(terms);
    return out;
  }

 private:
  int n_ = 0;
  int trunc_ = 0;
  std::vector<Term> terms_;
};

// Truncated formal power series H(z) = sum H_Q z^Q.
template <class C>
class ScalarFunction {
 public:
  using Coefficient = C;
  using Term = ScalarTerm<C>;

  ScalarFunction() = default;
  ScalarFunction(int n, int trunc_degree) : n_(n), trunc_(trunc_degree) {}
  ScalarFunction(int n, int trunc_degree, std::vector<Term> terms)
      : n_(n), trunc_(trunc_degree), terms_(std::move(terms)) {
    for (const auto& t : terms_) {
      for (const auto& e : t.index.entries()) detail::check_var(e.var, n_, "variable");
    }
    detail::canonicalize(terms_, trunc_);
  }

  int n() const { return n_; }
  int trunc_degree() const { return trunc_; }
  bool empty() const { return terms_.empty(); }
  std::size_t size() const { return terms_.size(); }
  std::span<const Term> terms() const { return terms_; }
  int min_degree() const { return terms_.empty() ? kNoDegree : terms_.front().index.degree(); }
  int max_degree() const { return terms_.empty() ? -1 : terms_.back().index.degree(); }

  C coefficient(const MultiIndex& q) const {
    const Term* t = detail::find_term<Term>(terms_, q, 0);
    return t ? t->coeff : Scalar<C>::zero();
  }

  friend bool operator==(const ScalarFunction& a, const ScalarFunction& b) {
    if (a.n_ != b.n_ || a.trunc_ != b.trunc_ || a.terms_.size() != b.terms_.size()) return false;
    for (std::size_t k = 0; k < a.terms_.size(); ++k) {
      if (!(a.terms_[k].index == b.terms_[k].index) || !(a.terms_[k].coeff == b.terms_[k].coeff)) {
        return false;
      }
    }
    return true;
  }

  static ScalarFunction from_canonical(int n, int trunc, std::vector<Term> terms) {
    ScalarFunction out(n, trunc);
    out.terms_ = std::move(terms);
    return out;
  }

 private:
  int n_ = 0;
  int trunc_ = 0;
  std::vector<Term> terms_;
};

// Ordered family X^1..X^N sharing n and the truncation degree.
template <class C>
class Family {
 public:
  using Coefficient = C;

  Family() = default;
  Family(int n, int trunc_degree) : n_(n), trunc_(trunc_degree) {}
  Family(int n, int trunc_degree, std::vector<VectorField<C>> members)
      : n_(n), trunc_(trunc_degree) {
    for (auto& m : members) push_back(std::move(m));
  }

  int n() const { return n_; }
  int trunc_degree() const { return trunc_; }
  std::size_t size() const { return members_.size(); }
  bool empty() const { return members_.empty(); }

  // 1-based access matching the X^i labelling.
  const VectorField<C>& member(int i) const { return members_.at(static_cast<std::size_t>(i - 1)); }
  const VectorField<C>& operator[](std::size_t k) const { return members_[k]; }
  auto begin() const { return members_.begin(); }
  auto end() const { return members_.end(); }

  void push_back(VectorField<C> field) {
    if (field.n() != n_ || field.trunc_degree() != trunc_) {
      throw InputError("family member does not share n=" + std::to_string(n_) +
                       " and trunc_degree=" + std::to_string(trunc_));
    }
    members_.push_back(std::move(field));
  }

  friend bool operator==(const Family&, const Family&) = default;

 private:
  int n_ = 0;
  int trunc_ = 0;
  std::vector<VectorField<C>> members_;
};

// Hash-map accumulator used by the kernels; emits canonical polynomials.
template <class C>
class TermAccumulator {
 public:
  void add(const MultiIndex& q, int component, const C& c) {
    auto [it, inserted] = map_.try_emplace(Key{q, component}, c);
    if (!inserted) it->second += c;
  }
  void add(MultiIndex&& q, int component, C&& c) {
    auto [it, inserted] = map_.try_emplace(Key{std::move(q), component}, std::move(c));
    if (!inserted) it->second += c;
  }
  void merge(const TermAccumulator& other) {
    for (const auto& [k, c] : other.map_) add(k.index, k.component, c);
  }
  std::size_t size() const { return map_.size(); }

  std::vector<FieldTerm<C>> take_field_terms(int trunc) {
    std::vector<FieldTerm<C>> out;
    out.reserve(map_.size());
    for (auto& [k, c] : map_) out.push_back({k.index, k.component, std::move(c)});
    map_.clear();
    detail::canonicalize(out, trunc);
    return out;
  }
  std::vector<ScalarTerm<C>> take_scalar_terms(int trunc) {
    std::vector<ScalarTerm<C>> out;
    out.reserve(map_.size());
    for (auto& [k, c] : map_) out.push_back({k.index, std::move(c)});
    map_.clear();
    detail::canonicalize(out, trunc);
    return out;
  }
  VectorField<C> to_field(int n, int trunc) {
    return VectorField<C>::from_canonical(n, trunc, take_field_terms(trunc));
  }
  ScalarFunction<C> to_scalar(int n, int trunc) {
    return ScalarFunction<C>::from_canonical(n, trunc, take_scalar_terms(trunc));
  }

 private:
  struct Key {
    MultiIndex index;
    int component;
    friend bool operator==(const Key&, const Key&) = default;
  };
  struct KeyHash {
    std::size_t operator()(const Key& k) const {
      return k.index.hash() * 31u + static_cast<std::size_t>(k.component + 1024);
    }
  };
  std::unordered_map<Key, C, KeyHash> map_;
};

}  // namespace bnf
