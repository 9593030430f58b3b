#include <doctest.h>

#include <algorithm>
#include <cmath>

#include "necrostab/error.hpp"
#include "necrostab/spectrum.hpp"
#include "oracles.hpp"

using namespace necrostab;
using spectrum::Rational;

namespace {

const spectrum::ModeSpectrum& spec200() {
  static const spectrum::ModeSpectrum s(radial::solve_stationary_radius(radial::ModelParams::reference()), 200);
  return s;
}

}  // namespace

TEST_CASE("reference spectrum values") {
  const auto& sp = spec200();
  const auto& s = sp.stationary();
  CHECK(sp.a(0, 1.0) == doctest::Approx(-0.42523285281676504).epsilon(1e-9));
  CHECK(std::abs(sp.a(1, 1.0)) < 1e-10);
  CHECK(sp.gamma_k(2) == doctest::Approx(3.0739935817952846).epsilon(1e-9));
  CHECK(sp.gamma_k(3) == doctest::Approx(1.519438953).epsilon(1e-8));
  CHECK_THROWS_AS(sp.gamma_k(1), DomainError);
  // degree 0 and 1 carry no surface-tension term
  CHECK(sp.a(0, 5.0) == doctest::Approx(sp.a(0, 1.0)));
  CHECK(sp.a(1, 5.0) == doctest::Approx(sp.a(1, 1.0)));
  (void)s;
}

TEST_CASE("factored eigenvalue form") {
  const auto& sp = spec200();
  const auto& s = sp.stationary();
  for (int k : {2, 5, 50, 200}) {
    const auto m = modes::solve_u_mode(k, s);
    for (double g : {0.1, 1.0, 7.0}) {
      const double direct = spectrum::eigenvalue_ak(m, g, s);
      CHECK(direct == doctest::Approx(spectrum::eigenvalue_ak_factored(m, g, s)).epsilon(1e-10));
      CHECK(direct == doctest::Approx(sp.a(k, g)).epsilon(1e-12));
    }
  }
}

TEST_CASE("neutral tensions are positive, below their bound and decay like k^-3") {
  const auto& sp = spec200();
  const auto& s = sp.stationary();
  const auto g = sp.gamma_values();
  REQUIRE(g.size() == 199);
  for (int k = 2; k <= 200; ++k) {
    const double gk = g[static_cast<std::size_t>(k - 2)];
    CHECK(gk > 0.0);
    CHECK(gk < spectrum::gamma_k_bound(k, s));
    if (k > 2) CHECK(gk < g[static_cast<std::size_t>(k - 3)]);
  }
  const double ratio = g.back() / spectrum::gamma_k_asymptotic(200, s);
  CHECK(std::abs(ratio - 1.0) < 0.05);
}

TEST_CASE("threshold is certified and sits at degree 2 for the reference point") {
  const auto t = spectrum::gamma_star(spec200());
  CHECK(t.certified);
  CHECK(t.argmax_k == 2);
  CHECK(t.tail_bound < t.gamma_star);
  CHECK(t.gamma_star == doctest::Approx(3.0739935817952846).epsilon(1e-9));
}

TEST_CASE("short degree range triggers doubling") {
  const auto& s = spec200().stationary();
  const auto t = spectrum::gamma_star(s, 2);
  CHECK(t.kmax >= 2);
  CHECK(t.gamma_star == doctest::Approx(3.0739935817952846).epsilon(1e-9));
}

TEST_CASE("classification around the threshold") {
  using spectrum::Stability;
  CHECK(spectrum::classify(2.0, 1.0) == Stability::StableModuloTranslations);
  CHECK(spectrum::classify(0.5, 1.0) == Stability::Unstable);
  CHECK(spectrum::classify(1.0, 1.0) == Stability::Critical);
  CHECK(spectrum::classify(1.0 + 1e-10, 1.0) == Stability::Critical);
  CHECK(spectrum::to_string(Stability::StableModuloTranslations) == "stable-modulo-translations");

  const auto t = spectrum::gamma_star(spec200());
  const auto above = spectrum::classify_stability(spec200(), t, 1.05 * t.gamma_star);
  CHECK(above.classification == Stability::StableModuloTranslations);
  REQUIRE(above.kernel_degrees.size() == 1);
  CHECK(above.kernel_degrees[0] == 1);
  const auto below = spectrum::classify_stability(spec200(), t, 0.95 * t.gamma_star);
  CHECK(below.classification == Stability::Unstable);
  const auto at = spectrum::classify_stability(spec200(), t, t.gamma_star);
  CHECK(at.classification == Stability::Critical);
  CHECK(std::find(at.kernel_degrees.begin(), at.kernel_degrees.end(), 2) != at.kernel_degrees.end());
}

TEST_CASE("spectrum report validates its inputs") {
  const auto& s = spec200().stationary();
  CHECK_THROWS_AS(spectrum::spectrum_report(s, -1.0, 50), ConfigError);
  CHECK_THROWS_AS(spectrum::spectrum_report(s, 1.0, 1), ConfigError);
  const auto r = spectrum::spectrum_report(s, 1.0, 20);
  CHECK(r.kmax >= 20);
  CHECK(r.a_values.size() == static_cast<std::size_t>(r.kmax + 1));
  CHECK(r.gamma_values.size() == static_cast<std::size_t>(r.kmax - 1));
}

TEST_CASE("linearized operator is diagonal") {
  harmonics::HarmonicExpansion xi;
  xi.set({0, 1}, 1.0);
  xi.set({2, 3}, -0.5);
  xi.set({4, 9}, 2.0);
  const auto out = spectrum::apply_linearized_operator(xi, 1.5, spec200());
  CHECK(out.get({2, 3}) == doctest::Approx(-0.5 * spec200().a(2, 1.5)));
  CHECK(out.get({4, 9}) == doctest::Approx(2.0 * spec200().a(4, 1.5)));
  const auto out2 = spectrum::apply_linearized_operator(xi, 1.5, spec200().stationary());
  CHECK(out2.get({4, 9}) == doctest::Approx(out.get({4, 9})).epsilon(1e-12));
  harmonics::HarmonicExpansion big;
  big.set({300, 1}, 1.0);
  CHECK_THROWS_AS(spectrum::apply_linearized_operator(big, 1.0, spec200()), DomainError);
}

TEST_CASE("Hele-Shaw multipliers in exact arithmetic") {
  for (int n : {2, 3, 4}) {
    for (int k = 0; k <= 20; ++k) {
      const Rational expected(-static_cast<long long>(k) * (k - 1) * (k + n - 1), n - 1);
      CHECK(spectrum::heleshaw_mu(k, n) == expected);
      CHECK(spectrum::heleshaw_composition(k, n) == expected);
    }
    const auto h = spectrum::heleshaw_spectrum(n, 20);
    CHECK(h.kernel_dim == n + 1);
    CHECK(h.mu_values[0] == Rational(0));
    CHECK(h.mu_values[1] == Rational(0));
  }
  CHECK(spectrum::heleshaw_mu(3, 3) == Rational(-15));
  CHECK(spectrum::heleshaw_mu(2, 4) == Rational(-10, 3));
  CHECK(spectrum::harmonic_space_dim(0, 3) == 1);
  CHECK(spectrum::harmonic_space_dim(5, 3) == 11);
  CHECK(spectrum::harmonic_space_dim(1, 4) == 4);
  CHECK(spectrum::harmonic_space_dim(2, 4) == 9);
  CHECK(spectrum::harmonic_space_dim(3, 2) == 2);
  CHECK_THROWS(spectrum::heleshaw_mu(2, 1));
}

TEST_CASE("annulus multiplier against explicit harmonic extension") {
  CHECK(spectrum::dn_annulus_multiplier(0, 1.0, 2.0) == 2.0);
  double prev = 0.0;
  for (int k = 0; k <= 100; ++k) {
    const double l = spectrum::dn_annulus_multiplier(k, 1.0, 2.0);
    CHECK(l > prev);
    prev = l;
    if (k <= 40) CHECK(l == doctest::Approx(oracle::annulus_jump(k, 1.0, 2.0)).epsilon(1e-11));
  }
  CHECK(spectrum::dn_annulus_multiplier(3, 4.35, 5.78) == doctest::Approx(oracle::annulus_jump(3, 4.35, 5.78)));
  CHECK_THROWS_AS(spectrum::dn_annulus_multiplier(1, 2.0, 1.0), DomainError);
  CHECK_THROWS_AS(spectrum::dn_annulus_multiplier(1, 0.0, 1.0), DomainError);
}
