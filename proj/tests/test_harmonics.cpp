#include <doctest.h>

#include <cmath>
#include <numbers>
#include <vector>

#include <boost/math/quadrature/gauss.hpp>

#include "necrostab/error.hpp"
#include "necrostab/harmonics.hpp"

using namespace necrostab::harmonics;

namespace {

std::vector<HarmonicIndex> indices_up_to(int kmax) {
  std::vector<HarmonicIndex> out;
  for (int k = 0; k <= kmax; ++k)
    for (int l = 1; l <= 2 * k + 1; ++l) out.push_back({k, l});
  return out;
}

}  // namespace

TEST_CASE("index bookkeeping") {
  CHECK(HarmonicIndex{2, 5}.valid());
  CHECK_FALSE(HarmonicIndex{2, 6}.valid());
  CHECK_FALSE(HarmonicIndex{-1, 1}.valid());
  CHECK(HarmonicIndex{3, 1}.flat() == 9);
  CHECK(HarmonicIndex{3, 4}.order() == 2);
  CHECK_FALSE(HarmonicIndex{3, 4}.is_sine());
  CHECK(HarmonicIndex{3, 5}.is_sine());
  CHECK_THROWS_AS(require_valid({1, 4}), necrostab::DomainError);
}

TEST_CASE("low-degree harmonics have their textbook form") {
  const SphericalPoint p{0.7, 1.3};
  const double c0 = 1.0 / std::sqrt(4.0 * std::numbers::pi);
  const double c1 = std::sqrt(3.0 / (4.0 * std::numbers::pi));
  CHECK(eval_ylm({0, 1}, p) == doctest::Approx(c0));
  CHECK(eval_ylm({1, 1}, p) == doctest::Approx(c1 * std::cos(0.7)));
  CHECK(std::abs(eval_ylm({1, 2}, p)) == doctest::Approx(c1 * std::sin(0.7) * std::abs(std::cos(1.3))));
  CHECK(std::abs(eval_ylm({1, 3}, p)) == doctest::Approx(c1 * std::sin(0.7) * std::abs(std::sin(1.3))));
}

TEST_CASE("Gram matrix through an independent Gauss-Legendre rule") {
  const int kmax = 10;
  const auto idx = indices_up_to(kmax);
  const std::size_t n = idx.size();
  std::vector<double> gram(n * n, 0.0), y(n);
  const int nphi = 2 * kmax + 2;
  using GL = boost::math::quadrature::gauss<double, 30>;
  const auto& x = GL::abscissa();
  const auto& w = GL::weights();
  for (std::size_t i = 0; i < x.size(); ++i) {
    for (int sgn : {1, -1}) {
      if (i == 0 && sgn == -1 && x[0] == 0.0) continue;
      const double t = std::acos(sgn * x[i]);
      for (int j = 0; j < nphi; ++j) {
        const SphericalPoint p{t, 2.0 * std::numbers::pi * j / nphi};
        for (std::size_t a = 0; a < n; ++a) y[a] = eval_ylm(idx[a], p);
        const double wt = w[i] * 2.0 * std::numbers::pi / nphi;
        for (std::size_t a = 0; a < n; ++a)
          for (std::size_t b = 0; b < n; ++b) gram[a * n + b] += wt * y[a] * y[b];
      }
    }
  }
  double err = 0.0;
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = 0; b < n; ++b) err = std::max(err, std::abs(gram[a * n + b] - (a == b ? 1.0 : 0.0)));
  CHECK(err < 1e-9);
}

TEST_CASE("Dirichlet energy equals the Laplace-Beltrami eigenvalue") {
  const auto rule = QuadratureRule::product(22);
  CHECK(rule.total_weight() == doctest::Approx(4.0 * std::numbers::pi).epsilon(1e-14));
  for (const auto& i : indices_up_to(10)) {
    CAPTURE(i.k);
    CAPTURE(i.l);
    CHECK(std::abs(dirichlet_energy(i, rule) - lambda(i.k)) < 1e-8);
  }
}

TEST_CASE("gradient matches finite differences") {
  const SphericalPoint p{1.1, 0.4};
  const double h = 1e-6;
  for (const auto& i : std::vector<HarmonicIndex>{{2, 1}, {3, 4}, {5, 11}}) {
    const auto g = eval_ylm_gradient(i, p);
    const double dt = (eval_ylm(i, {p.theta + h, p.phi}) - eval_ylm(i, {p.theta - h, p.phi})) / (2 * h);
    const double dp = (eval_ylm(i, {p.theta, p.phi + h}) - eval_ylm(i, {p.theta, p.phi - h})) / (2 * h);
    CHECK(g.value == doctest::Approx(eval_ylm(i, p)));
    CHECK(g.d_theta == doctest::Approx(dt).epsilon(1e-7));
    CHECK(g.d_phi_over_sin == doctest::Approx(dp / std::sin(p.theta)).epsilon(1e-7));
  }
}

TEST_CASE("flat evaluation agrees with single evaluation") {
  const SphericalPoint p{2.2, -0.9};
  std::vector<double> all(64);
  eval_all_ylm(7, p, all);
  for (const auto& i : indices_up_to(7)) CHECK(all[static_cast<std::size_t>(i.flat())] == doctest::Approx(eval_ylm(i, p)).epsilon(1e-13));
}

TEST_CASE("expansion round trip") {
  HarmonicExpansion e;
  e.set({0, 1}, 0.3);
  e.set({2, 4}, -1.2);
  e.set({5, 7}, 0.05);
  const auto rule = QuadratureRule::product(12);
  const auto back = expand([&](const SphericalPoint& p) { return synthesize(e, p); }, rule, 5);
  for (const auto& [i, c] : back) CHECK(std::abs(c - e.get(i)) < 1e-12);
  CHECK(e.max_degree() == 5);
  const auto sum = e + e.scaled(-1.0);
  for (const auto& [i, c] : sum) CHECK(c == 0.0);
}

TEST_CASE("cartesian conversion") {
  const auto p = SphericalPoint::from_cartesian(0.0, 1.0, 0.0);
  CHECK(p.theta == doctest::Approx(std::numbers::pi / 2));
  CHECK(p.phi == doctest::Approx(std::numbers::pi / 2));
  CHECK(SphericalPoint::from_cartesian(0.0, 0.0, 2.0).theta == doctest::Approx(0.0));
}
