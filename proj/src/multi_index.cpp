#include "bnf/multi_index.hpp"

#include <algorithm>
#include <stdexcept>

#include "bnf/errors.hpp"

namespace bnf {

MultiIndex::MultiIndex(std::initializer_list<std::pair<int, int>> pairs) {
  std::vector<Entry> entries;
  entries.reserve(pairs.size());
  for (auto [v, e] : pairs) entries.push_back({v, e});
  *this = MultiIndex(std::move(entries));
}

MultiIndex::MultiIndex(std::vector<Entry> entries) {
  std::sort(entries.begin(), entries.end(),
            [](const Entry& a, const Entry& b) { return a.var < b.var; });
  for (const auto& e : entries) {
    if (e.var == 0) throw InputError("variable index 0 is not allowed");
    if (e.exp < 0) throw InputError("negative exponent");
    if (e.exp == 0) continue;
    if (!entries_.empty() && entries_.back().var == e.var) {
      entries_.back().exp += e.exp;
    } else {
      entries_.push_back(e);
    }
    degree_ += e.exp;
  }
}

int MultiIndex::exponent(int var) const {
  for (const auto& e : entries_) {
    if (e.var == var) return e.exp;
    if (e.var > var) break;
  }
  return 0;
}

int MultiIndex::max_abs_var() const {
  int m = 0;
  for (const auto& e : entries_) m = std::max(m, e.var < 0 ? -e.var : e.var);
  return m;
}

MultiIndex MultiIndex::operator+(const MultiIndex& other) const {
  MultiIndex out;
  out.entries_.reserve(entries_.size() + other.entries_.size());
  auto a = entries_.begin();
  auto b = other.entries_.begin();
  while (a != entries_.end() || b != other.entries_.end()) {
    if (b == other.entries_.end() || (a != entries_.end() && a->var < b->var)) {
      out.entries_.push_back(*a++);
    } else if (a == entries_.end() || b->var < a->var) {
      out.entries_.push_back(*b++);
    } else {
      out.entries_.push_back({a->var, a->exp + b->exp});
      ++a;
      ++b;
    }
  }
  out.degree_ = degree_ + other.degree_;
  return out;
}

std::optional<MultiIndex> MultiIndex::minus_unit(int var) const {
  MultiIndex out;
  out.entries_.reserve(entries_.size());
  bool found = false;
  for (const auto& e : entries_) {
    if (e.var == var) {
      found = true;
      if (e.exp > 1) out.entries_.push_back({e.var, e.exp - 1});
    } else {
      out.entries_.push_back(e);
    }
  }
  if (!found) return std::nullopt;
  out.degree_ = degree_ - 1;
  return out;
}

MultiIndex MultiIndex::sum_minus_unit(const MultiIndex& p, const MultiIndex& q, int var) {
  MultiIndex out;
  out.entries_.reserve(p.entries_.size() + q.entries_.size());
  auto push = [&](int v, int e) {
    if (v == var) --e;
    if (e > 0) out.entries_.push_back({v, e});
  };
  auto a = p.entries_.begin();
  auto b = q.entries_.begin();
  while (a != p.entries_.end() || b != q.entries_.end()) {
    if (b == q.entries_.end() || (a != p.entries_.end() && a->var < b->var)) {
      push(a->var, a->exp);
      ++a;
    } else if (a == p.entries_.end() || b->var < a->var) {
      push(b->var, b->exp);
      ++b;
    } else {
      push(a->var, a->exp + b->exp);
      ++a;
      ++b;
    }
  }
  out.degree_ = p.degree_ + q.degree_ - 1;
  return out;
}

bool MultiIndex::is_action_monomial() const {
  // Entries are sorted, negative variables first.
  for (const auto& e : entries_) {
    if (exponent(-e.var) != e.exp) return false;
  }
  return true;
}

std::size_t MultiIndex::hash() const {
  std::size_t h = 0x9e3779b97f4a7c15ull;
  for (const auto& e : entries_) {
    const std::size_t x = static_cast<std::size_t>(static_cast<unsigned>(e.var + 4096)) * 8191u +
                          static_cast<std::size_t>(e.exp);
    h ^= x + 0x9e3779b97f4a7c15ull + (h << 6) + (h >> 2);
  }
  return h;
}

std::string MultiIndex::to_string() const {
  if (entries_.empty()) return "-";
  std::string out;
  for (const auto& e : entries_) {
    if (!out.empty()) out += ',';
    out += std::to_string(e.var);
    if (e.exp != 1) {
      out += '^';
      out += std::to_string(e.exp);
    }
  }
  return out;
}

int compare(const MultiIndex& a, const MultiIndex& b) {
  if (a.degree() != b.degree()) return a.degree() < b.degree() ? -1 : 1;
  auto x = a.entries();
  auto y = b.entries();
  std::size_t i = 0;
  std::size_t j = 0;
  // Walk the dense vectors (q_{-n},...,q_n) via the sparse entries; the first
  // variable where the exponents differ decides.
  while (i < x.size() || j < y.size()) {
    if (j == y.size() || (i < x.size() && x[i].var < y[j].var)) {
      return 1;  // a has a positive exponent where b has 0
    }
    if (i == x.size() || y[j].var < x[i].var) {
      return -1;
    }
    if (x[i].exp != y[j].exp) return x[i].exp < y[j].exp ? -1 : 1;
    ++i;
    ++j;
  }
  return 0;
}

std::vector<MultiIndex> all_indices(int n, int degree) {
  std::vector<int> vars;
  for (int v = -n; v <= n; ++v) {
    if (v != 0) vars.push_back(v);
  }
  std::vector<MultiIndex> out;
  std::vector<MultiIndex::Entry> cur;
  // Distribute the degree over the variables in order.
  auto rec = [&](auto&& self, std::size_t k, int left) -> void {
    if (k + 1 == vars.size() || left == 0) {
      if (left > 0) cur.push_back({vars[k], left});
      out.emplace_back(cur);
      if (left > 0) cur.pop_back();
      return;
    }
    for (int e = left; e >= 0; --e) {
      if (e > 0) cur.push_back({vars[k], e});
      self(self, k + 1, left - e);
      if (e > 0) cur.pop_back();
    }
  };
  if (vars.empty()) {
    if (degree == 0) out.emplace_back();
    return out;
  }
  rec(rec, 0, degree);
  std::sort(out.begin(), out.end(),
            [](const MultiIndex& a, const MultiIndex& b) { return compare(a, b) < 0; });
  return out;
}

}  // namespace bnf
