#include <doctest.h>

#include <array>
#include <cmath>

#include "bnf/algebra.hpp"
#include "random_fields.hpp"

using namespace bnf;
using bnf::testing::Rng;
using Q = QComplex;
using VF = VectorField<Q>;
using SF = ScalarFunction<Q>;

namespace {

VF mono(int n, int trunc, MultiIndex q, int comp, Q c = Q{1}) {
  return monomial_field<Q>(n, trunc, std::move(q), comp, std::move(c));
}

Q qi(long re, long im) { return Q{Rational(re), Rational(im)}; }

}  // namespace

TEST_CASE("add follows the truncation rule") {
  const VF x = mono(1, 4, MultiIndex{{1, 1}}, 1);
  CHECK(add(x, VF(1, 4)) == x);
  CHECK(add(x, mono(1, 4, MultiIndex{{1, 1}}, 1, Q{-1})).empty());
  const VF s = add(x, mono(1, 6, MultiIndex{{1, 5}}, 1));
  CHECK(s.trunc_degree() == 4);
  CHECK(s == x);
  CHECK_THROWS_AS(add(x, VF(2, 4)), InputError);
}

TEST_CASE("bracket examples and divisor identity") {
  const VF e1 = fundamental_field<Q>(1, 1, 8);
  CHECK(bracket(e1, mono(1, 8, MultiIndex{{1, 2}, {-1, 1}}, 1)).empty());
  CHECK(bracket(e1, mono(1, 8, MultiIndex{{1, 2}}, 1)) == mono(1, 8, MultiIndex{{1, 2}}, 1));
  // divisor 1 - 2 - 1 = -2
  CHECK(bracket(e1, mono(1, 8, MultiIndex{{1, 1}, {-1, 2}}, 1)) ==
        mono(1, 8, MultiIndex{{1, 1}, {-1, 2}}, 1, Q{-2}));
  Rng rng(7);
  for (int t = 0; t < 20; ++t) {
    const VF x = testing::random_field<Q>(rng, 2, 1, 4, 6, 10);
    CHECK(bracket(x, x).empty());
  }
}

TEST_CASE("bracket is antisymmetric, graded and satisfies Jacobi") {
  Rng rng(11);
  for (int t = 0; t < 10; ++t) {
    const VF x = testing::random_field<Q>(rng, 2, 2, 2, 4, 9);
    const VF y = testing::random_field<Q>(rng, 2, 3, 3, 4, 9);
    const VF z = testing::random_field<Q>(rng, 2, 2, 3, 4, 9);
    const VF xy = bracket(x, y);
    CHECK(add(xy, bracket(y, x)).empty());
    for (const auto& term : xy.terms()) CHECK(term.index.degree() == 4);
    const VF jac = add(add(bracket(x, bracket(y, z)), bracket(y, bracket(z, x))),
                       bracket(z, bracket(x, y)));
    CHECK(jac.empty());
  }
}

TEST_CASE("serial and chunked kernels agree") {
  Rng rng(3);
  const VF x = testing::random_field<Q>(rng, 2, 2, 4, 200, 10);
  const VF y = testing::random_field<Q>(rng, 2, 1, 4, 120, 10);
  CHECK(bracket_serial(x, y) == bracket_parallel(x, y));
  const auto xf = testing::random_field<DComplex>(rng, 3, 2, 4, 300, 10);
  const auto yf = testing::random_field<DComplex>(rng, 3, 1, 4, 200, 10);
  const auto a = bracket_serial(xf, yf);
  const auto b = bracket_parallel(xf, yf);
  REQUIRE(a.size() == b.size());
  for (std::size_t k = 0; k < a.size(); ++k) {
    CHECK(a.terms()[k].index == b.terms()[k].index);
    CHECK(std::abs(a.terms()[k].coeff - b.terms()[k].coeff) < 1e-12);
  }
  CHECK(bracket_parallel(xf, yf) == b);
  const VF u = testing::random_field<Q>(rng, 2, 2, 3, 20, 10);
  CHECK(lie_conjugate(x, u, 8, KernelPolicy::serial) == lie_conjugate(x, u, 8, KernelPolicy::parallel));
}

TEST_CASE("jet") {
  const VF x = add(mono(1, 5, MultiIndex{{1, 1}}, 1), mono(1, 5, MultiIndex{{1, 3}}, 1));
  CHECK(jet(x, 2) == mono(1, 2, MultiIndex{{1, 1}}, 1));
  CHECK(jet(x, 5) == x);
  CHECK(jet(x, 0).empty());
}

TEST_CASE("lie_conjugate basics") {
  const VF x = mono(1, 3, MultiIndex{{1, 1}}, 1);
  const VF u = mono(1, 3, MultiIndex{{1, 2}}, 1);
  // Time-1 flow of z^2 d/dz is z/(1-z); the pull-back of z d/dz is z - z^2.
  CHECK(lie_conjugate(x, u, 3) == add(x, mono(1, 3, MultiIndex{{1, 2}}, 1, Q{-1})));
  CHECK(lie_conjugate(x, VF(1, 3), 3) == x);
  const VF e1 = fundamental_field<Q>(1, 1, 7);
  const VF res = mono(1, 7, MultiIndex{{1, 2}, {-1, 1}}, 1, qi(2, 1));
  CHECK(lie_conjugate(e1, res, 7) == e1);
  CHECK_THROWS_AS(lie_conjugate(x, mono(1, 3, MultiIndex{{1, 1}}, 1), 3), PreconditionError);
}

TEST_CASE("lie_conjugate by -U inverts conjugation by U") {
  Rng rng(5);
  for (int t = 0; t < 5; ++t) {
    const VF x = add(fundamental_field<Q>(1, 2, 7), testing::random_field<Q>(rng, 2, 2, 3, 5, 7));
    const VF u = testing::random_field<Q>(rng, 2, 2, 3, 3, 7);
    const VF y = lie_conjugate(x, u, 7);
    CHECK(lie_conjugate(y, negate(u), 7) == jet(x, 7));
  }
}

namespace {

using Vec = std::array<DComplex, 2>;

Vec field_at(const VectorField<DComplex>& f, const Vec& z) {
  const auto v = evaluate(f, std::span<const DComplex>(z));
  return {v[0], v[1]};
}

Vec flow(const VectorField<DComplex>& u, Vec z) {
  const int steps = 400;
  const double h = 1.0 / steps;
  auto axpy = [](const Vec& a, double s, const Vec& b) {
    return Vec{a[0] + s * b[0], a[1] + s * b[1]};
  };
  for (int s = 0; s < steps; ++s) {
    const Vec k1 = field_at(u, z);
    const Vec k2 = field_at(u, axpy(z, h / 2, k1));
    const Vec k3 = field_at(u, axpy(z, h / 2, k2));
    const Vec k4 = field_at(u, axpy(z, h, k3));
    for (int c = 0; c < 2; ++c) z[c] += h / 6 * (k1[c] + 2.0 * k2[c] + 2.0 * k3[c] + k4[c]);
  }
  return z;
}

}  // namespace

TEST_CASE("lie_conjugate matches the pull-back along the sampled time-1 flow") {
  Rng rng(2024);
  std::uniform_real_distribution<double> uni(-1.0, 1.0);
  const int d = 10;
  for (int t = 0; t < 3; ++t) {
    const auto x = add(fundamental_field<DComplex>(1, 1, d),
                       testing::random_field<DComplex>(rng, 1, 2, 3, 3, d));
    const auto u = testing::random_field<DComplex>(rng, 1, 2, 3, 3, d);
    const auto conj = lie_conjugate(x, u, d);
    for (int p = 0; p < 10; ++p) {
      const Vec z{DComplex(uni(rng), uni(rng)) * 0.05, DComplex(uni(rng), uni(rng)) * 0.05};
      // phi^*X(z) = Dphi(z)^{-1} X(phi(z)), Dphi by central differences.
      const double h = 1e-5;
      std::array<Vec, 2> cols;
      for (int c = 0; c < 2; ++c) {
        Vec zp = z, zm = z;
        zp[c] += h;
        zm[c] -= h;
        const Vec fp = flow(u, zp), fm = flow(u, zm);
        cols[c] = {(fp[0] - fm[0]) / (2 * h), (fp[1] - fm[1]) / (2 * h)};
      }
      const Vec xv = field_at(x, flow(u, z));
      const DComplex det = cols[0][0] * cols[1][1] - cols[1][0] * cols[0][1];
      const Vec expect{(cols[1][1] * xv[0] - cols[1][0] * xv[1]) / det,
                       (-cols[0][1] * xv[0] + cols[0][0] * xv[1]) / det};
      const Vec got = field_at(conj, z);
      CHECK(std::abs(got[0] - expect[0]) < 1e-8);
      CHECK(std::abs(got[1] - expect[1]) < 1e-8);
    }
  }
}

TEST_CASE("hamiltonian fields and Poisson brackets") {
  const SF i1 = action<Q>(1, 1, 6);
  const VF e1 = fundamental_field<Q>(1, 1, 5);
  CHECK(hamiltonian_vf(i1) == scale(e1, qi(0, -1)));
  CHECK(hamiltonian_vf(scale(i1, qi(0, 1))) == e1);
  CHECK(hamiltonian_vf(SF(1, 6)).empty());
  CHECK(poisson(action<Q>(1, 2, 6), action<Q>(2, 2, 6)).empty());
  // {z_1, z_-1} = dz_1 . X_{z_-1}; (X_{z_-1})_1 = -i
  const SF pb = poisson(coordinate<Q>(1, 1, 6), coordinate<Q>(-1, 1, 6));
  CHECK(pb.size() == 1);
  CHECK(pb.coefficient(MultiIndex{}) == qi(0, -1));
  Rng rng(9);
  for (int t = 0; t < 5; ++t) {
    const SF h = testing::random_function<Q>(rng, 2, 2, 3, 4, 8);
    const SF k = testing::random_function<Q>(rng, 2, 2, 3, 4, 8);
    const SF l = testing::random_function<Q>(rng, 2, 2, 3, 4, 8);
    CHECK(poisson(h, h).empty());
    CHECK(add(poisson(h, k), poisson(k, h)).empty());
    const SF lhs = poisson(h, multiply(k, l));
    const SF rhs = add(multiply(poisson(h, k), l), multiply(k, poisson(h, l)));
    const int t_common = std::min(lhs.trunc_degree(), rhs.trunc_degree());
    CHECK(jet(lhs, t_common) == jet(rhs, t_common));
  }
}

TEST_CASE("apply_transform") {
  Rng rng(4);
  const SF h = testing::random_function<Q>(rng, 1, 2, 4, 5, 6);
  CHECK(apply_transform<Q>(h, {}, 6) == h);
  const VF cubic = testing::random_field<Q>(rng, 1, 3, 3, 3, 6);
  const std::vector<VF> gens{cubic};
  CHECK(apply_transform<Q>(h, gens, 2) == jet(h, 2));
  const VF res = mono(1, 6, MultiIndex{{1, 2}, {-1, 1}}, 1, qi(1, 2));
  const std::vector<VF> rgens{add(res, mono(1, 6, MultiIndex{{1, 1}, {-1, 2}}, -1, Q{3}))};
  const SF out = apply_transform<Q>(action<Q>(1, 1, 8), rgens, 7);
  for (const auto& t : out.terms()) CHECK(t.index.is_action_monomial());
}
