#include <doctest.h>

#include <cmath>

#include "bnf/norms.hpp"
#include "random_fields.hpp"

using namespace bnf;
using bnf::testing::Rng;
using Q = QComplex;

TEST_CASE("majorants") {
  const auto x = monomial_field<Q>(1, 4, MultiIndex{{1, 1}}, 1, Q{-1});
  CHECK(majorant(x) == monomial_field<double>(1, 4, MultiIndex{{1, 1}}, 1, 1.0));
  CHECK(majorant(VectorField<Q>(1, 4)).empty());
  const auto c = majorant(monomial_field<Q>(1, 4, MultiIndex{{1, 1}}, 1, Q{Rational(1), Rational(1)}));
  CHECK(c.terms()[0].coeff == doctest::Approx(std::sqrt(2.0)));

  Family<Q> f(1, 4, {x, monomial_field<Q>(1, 4, MultiIndex{{1, 1}}, 1, Q{1})});
  CHECK(family_majorant(f) == monomial_field<double>(1, 4, MultiIndex{{1, 1}}, 1, 2.0));
  CHECK(family_majorant(Family<Q>(1, 4)).empty());
}

TEST_CASE("box and sample norms") {
  const auto w = WeightTable::unit(1);
  const auto sq = monomial_field<double>(1, 4, MultiIndex{{1, 2}}, 1, 1.0);
  CHECK(box_norm(sq, 0.3, w) == doctest::Approx(0.09));
  CHECK(box_norm(VectorField<double>(1, 4), 0.3, w) == 0.0);
  const auto two = add(monomial_field<double>(1, 4, MultiIndex{{1, 1}}, 1, 1.0),
                       monomial_field<double>(1, 4, MultiIndex{{-1, 1}}, 1, 1.0));
  CHECK(box_norm(two, 0.5, w) == doctest::Approx(1.0));
  // true sup is sqrt(2) r, attained on the diagonal
  CHECK(sample_norm(two, 0.5, w, 4000, 3) == doctest::Approx(std::sqrt(2.0) * 0.5).epsilon(1e-3));
  CHECK(sample_norm(sq, 0.3, w, 4000, 3) <= 0.09);

  Rng rng(17);
  for (int t = 0; t < 100; ++t) {
    const auto m = majorant(testing::random_field<Q>(rng, 2, 1, 4, 5, 6));
    const auto wt = (t % 2) ? WeightTable::unit(2) : WeightTable::geometric(2, 1.5);
    CHECK(within(sample_norm(m, 0.7, wt, 64, static_cast<std::uint64_t>(t)), box_norm(m, 0.7, wt)));
    CHECK(box_norm(m, 0.4, wt) <= box_norm(m, 0.7, wt));
  }
  CHECK(sample_norm(two, 0.5, w, 10, 42) == sample_norm(two, 0.5, w, 10, 42));
}

TEST_CASE("weights are validated") {
  WeightTable w{{1.0, 2.0}, {1.0, 1.0}};
  CHECK_THROWS_AS(w.validate(), InputError);
  CHECK_NOTHROW(WeightTable::geometric(3, 2.0));
}

TEST_CASE("domination") {
  const auto a = monomial_field<Q>(1, 4, MultiIndex{{1, 1}}, 1, Q{1});
  CHECK(dominates(a, a));
  CHECK(dominates(a, monomial_field<Q>(1, 4, MultiIndex{{1, 1}}, 1, Q{2})));
  CHECK_FALSE(dominates(a, monomial_field<Q>(1, 4, MultiIndex{{1, 2}}, 1, Q{1})));
  Rng rng(8);
  Family<Q> f(2, 5);
  for (int i = 0; i < 3; ++i) f.push_back(testing::random_field<Q>(rng, 2, 1, 3, 4, 5));
  const auto fm = family_majorant(f);
  for (const auto& x : f) {
    CHECK(dominates(x, fm));
    CHECK(within(box_norm(majorant(x), 0.5), box_norm(fm, 0.5)));
  }
}

TEST_CASE("scaling lemma") {
  const auto w = WeightTable::unit(1);
  const auto sq = monomial_field<double>(1, 4, MultiIndex{{1, 2}}, 1, 1.0);
  CHECK(scaling_check(sq, 0.8, 1.0, 2, w));
  CHECK(box_norm(sq, 0.4, w) / box_norm(sq, 0.8, w) == doctest::Approx(0.25));
  CHECK_THROWS_AS(scaling_check(sq, 0.8, 0.5, 3, w), PreconditionError);
  const auto hom = monomial_field<Q>(1, 4, MultiIndex{{1, 2}}, 1, Q{3});
  CHECK(box_norm_squared_exact(hom, Rational(1, 2)) * 16 == box_norm_squared_exact(hom, Rational(1)));
}

TEST_CASE("derivative bound dominates sampled directional derivatives") {
  const auto w = WeightTable::unit(1);
  const auto sq = monomial_field<double>(1, 4, MultiIndex{{1, 2}}, 1, 1.0);
  CHECK(derivative_bound(sq, 0.5, w) == doctest::Approx(1.0));
}

TEST_CASE("flow lemmas") {
  const auto w = WeightTable::unit(1);
  Family<Q> f(1, 8, {add(fundamental_field<Q>(1, 1, 8), monomial_field<Q>(1, 8, MultiIndex{{1, 2}}, 1, Q{1}))});
  const auto zero = flow_remainder_check(VectorField<Q>(1, 8), f, 0.5, 0.1, 8, w);
  CHECK(zero.holds());
  CHECK(zero.first_lhs == 0.0);
  const auto small = monomial_field<Q>(1, 8, MultiIndex{{1, 2}}, 1, Q{Rational(1, 100)});
  CHECK(flow_remainder_check(small, f, 0.5, 0.1, 8, w).holds());
  CHECK(flow_linear_remainder_check(small, 1, 0.5, 0.1, 8, w).holds());
  const auto res = monomial_field<Q>(1, 8, MultiIndex{{1, 2}, {-1, 1}}, 1, Q{Rational(1, 100)});
  CHECK(flow_linear_remainder_check(res, 1, 0.5, 0.1, 8, w).holds());
  // eps exactly at the gate
  const double r = 0.5, delta = 0.1;
  const double gate = delta / (4 * std::numbers::e);
  const auto u = monomial_field<DComplex>(1, 8, MultiIndex{{1, 2}}, 1, DComplex(gate / (r * r), 0));
  Family<DComplex> fd(1, 8, {fundamental_field<DComplex>(1, 1, 8)});
  const auto rep = flow_remainder_check(u, fd, r, delta, 8, w);
  CHECK(rep.eps == doctest::Approx(gate));
  if (rep.eps >= gate) CHECK_FALSE(rep.hypothesis_met);
}
