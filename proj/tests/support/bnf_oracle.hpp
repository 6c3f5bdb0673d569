#pragma once

#include <gmpxx.h>

#include <map>
#include <utility>

// Classical one-degree-of-freedom Birkhoff normalization by Lie transforms,
// degree by degree, in the variables z = z_1, w = z_{-1}. Self-contained: it
// uses none of the engine's types or kernels.
namespace bnf::oracle {

struct Cplx {
  mpq_class re, im;
};

inline Cplx operator+(const Cplx& a, const Cplx& b) { return {a.re + b.re, a.im + b.im}; }
inline Cplx operator*(const Cplx& a, const Cplx& b) {
  return {a.re * b.re - a.im * b.im, a.re * b.im + a.im * b.re};
}
inline Cplx operator*(const Cplx& a, const mpq_class& s) { return {a.re * s, a.im * s}; }
inline bool is_zero(const Cplx& a) { return a.re == 0 && a.im == 0; }

// Exponents (a, b) of z^a w^b.
using Poly = std::map<std::pair<int, int>, Cplx>;

inline void accumulate(Poly& p, std::pair<int, int> k, const Cplx& c, int max_degree) {
  if (k.first + k.second > max_degree || is_zero(c)) return;
  auto [it, fresh] = p.try_emplace(k, c);
  if (!fresh) {
    it->second = it->second + c;
    if (is_zero(it->second)) p.erase(it);
  }
}

// {f, g} = -i f_z g_w + i f_w g_z.
inline Poly poisson(const Poly& f, const Poly& g, int max_degree) {
  Poly out;
  const Cplx mi{0, -1}, pi{0, 1};
  for (const auto& [fk, fc] : f) {
    for (const auto& [gk, gc] : g) {
      const auto [a, b] = fk;
      const auto [c, d] = gk;
      if (a > 0 && d > 0) {
        accumulate(out, {a - 1 + c, b + d - 1}, fc * gc * mpq_class(a * d) * mi, max_degree);
      }
      if (b > 0 && c > 0) {
        accumulate(out, {a + c - 1, b - 1 + d}, fc * gc * mpq_class(b * c) * pi, max_degree);
      }
    }
  }
  return out;
}

// exp({., chi}) f = f + {f, chi} + {{f, chi}, chi}/2 + ...
inline Poly lie_transform(const Poly& f, const Poly& chi, int max_degree) {
  Poly out = f, term = f;
  for (int k = 1; !term.empty(); ++k) {
    term = poisson(term, chi, max_degree);
    for (auto& [key, c] : term) c = c * mpq_class(1, k);
    for (const auto& [key, c] : term) accumulate(out, key, c, max_degree);
  }
  return out;
}

// Removes the z^a w^b, a != b, terms of degrees 3..max_degree one degree at a
// time with chi_{ab} = i h_{ab}/(a - b). Requires the quadratic part z w.
inline Poly birkhoff_normal_form(Poly h, int max_degree) {
  for (int d = 3; d <= max_degree; ++d) {
    Poly chi;
    for (const auto& [k, c] : h) {
      const auto [a, b] = k;
      if (a + b == d && a != b) {
        mpq_class inv(1, a - b);
        inv.canonicalize();
        chi[k] = Cplx{0, 1} * c * inv;
      }
    }
    if (!chi.empty()) h = lie_transform(h, chi, max_degree);
  }
  return h;
}

}  // namespace bnf::oracle
