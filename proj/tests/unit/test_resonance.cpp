#include <doctest.h>

#include "bnf/algebra.hpp"
#include "bnf/resonance.hpp"
#include "random_fields.hpp"

using namespace bnf;
using bnf::testing::Rng;
using Q = QComplex;
using VF = VectorField<Q>;

TEST_CASE("mu and divisors") {
  CHECK(mu(1, 1) == 1);
  CHECK(mu(1, -1) == -1);
  CHECK(mu(2, 3) == 0);
  CHECK(divisor(MultiIndex{{1, 2}, {-1, 1}}, 1, 1) == 0);
  CHECK(divisor(MultiIndex{{1, 2}}, 1, 1) == 1);
  CHECK(divisor(MultiIndex{}, 1, 2) == 0);
}

TEST_CASE("resonance classification") {
  CHECK_FALSE(is_resonant(MultiIndex{{1, 1}, {-1, 1}}, 1, 1));
  CHECK(is_resonant(MultiIndex{{1, 2}, {-1, 1}}, 1, 1));
  CHECK(is_resonant(MultiIndex{{1, 2}, {-1, 1}}, 1, 3));
  CHECK_FALSE(is_resonant(MultiIndex{{2, 1}}, 1, 2));
}

TEST_CASE("all_indices enumerates in canonical order") {
  CHECK(all_indices(2, 3).size() == 20);
  CHECK(all_indices(1, 0).size() == 1);
  const auto v = all_indices(2, 2);
  for (std::size_t k = 1; k < v.size(); ++k) CHECK(compare(v[k - 1], v[k]) < 0);
}

TEST_CASE("split") {
  const VF e1 = fundamental_field<Q>(1, 1, 5);
  CHECK(split(e1, 1).res == e1);
  CHECK(split(e1, 1).nres.empty());
  const VF sq = monomial_field<Q>(1, 5, MultiIndex{{1, 2}}, 1, Q{1});
  CHECK(split(sq, 1).res.empty());
  const VF a = monomial_field<Q>(2, 5, MultiIndex{{1, 1}, {-1, 1}, {2, 1}}, 2, Q{1});
  const VF b = monomial_field<Q>(2, 5, MultiIndex{{1, 2}}, 1, Q{1});
  const auto s = split(add(a, b), 2);
  CHECK(s.res == a);
  CHECK(s.nres == b);
  Rng rng(1);
  for (int t = 0; t < 20; ++t) {
    const VF x = testing::random_field<Q>(rng, 2, 1, 4, 10, 6);
    const auto p = split(x, 2);
    CHECK(add(p.res, p.nres) == x);
    CHECK(split(p.res, 2).res == p.res);
    CHECK(split(p.nres, 2).nres == p.nres);
  }
}

TEST_CASE("small divisor audit") {
  CHECK(small_divisor_audit(3, 1) == 1);
  CHECK(small_divisor_audit(4, 2) == 1);
  CHECK_THROWS_AS(small_divisor_audit(1, 1), InputError);
}

TEST_CASE("resonant monomials are z_j times action monomials") {
  for (int d = 0; d <= 5; ++d) {
    for (const auto& q : all_indices(2, d)) {
      for (int j : {-2, -1, 1, 2}) {
        const auto r = q.minus_unit(j);
        const bool expected = r && r->is_action_monomial();
        CHECK(is_resonant(q, j, 2) == expected);
      }
    }
  }
}

TEST_CASE("eigen decomposition") {
  const auto b1 = eigen_decompose(fundamental_field<Q>(1, 1, 5), 1);
  REQUIRE(b1.size() == 1);
  CHECK(b1.begin()->first.is_zero());
  const auto b2 = eigen_decompose(monomial_field<Q>(1, 5, MultiIndex{{1, 2}}, 1, Q{1}), 1);
  CHECK(b2.begin()->first.lambda == std::vector<int>{1});
  Rng rng(2);
  for (int t = 0; t < 10; ++t) {
    const VF x = testing::random_field<Q>(rng, 2, 1, 4, 12, 6);
    VF sum(2, 6);
    for (const auto& [lam, v] : eigen_decompose(x, 2)) {
      sum = add(sum, v);
      for (int i = 1; i <= 2; ++i) {
        CHECK(bracket(fundamental_field<Q>(i, 2, 6), v) ==
              scale(v, Q{lam.lambda[static_cast<std::size_t>(i - 1)]}));
      }
    }
    CHECK(sum == x);
  }
}
