#include <doctest.h>

#include <algorithm>
#include <cmath>

#include "necrostab/modes.hpp"
#include "necrostab/radial.hpp"
#include "oracles.hpp"

using namespace necrostab;

namespace {

const radial::RadialStationary& p0() {
  static const auto s = radial::solve_stationary_radius(radial::ModelParams::reference());
  return s;
}

std::vector<double> interior(double lo, double hi, int n) {
  std::vector<double> r(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) r[static_cast<std::size_t>(i)] = lo + (hi - lo) * (i + 1.0) / (n + 1.0);
  return r;
}

}  // namespace

TEST_CASE("boundary values of the shot profile") {
  const auto& s = p0();
  for (int k : {0, 1, 5, 40, 200}) {
    const auto m = modes::solve_u_mode(k, s);
    CAPTURE(k);
    CHECK(std::abs(m.u(s.k_s)) < 1e-12);
    CHECK(m.u(s.r_s) == doctest::Approx(1.0).epsilon(1e-13));
    CHECK(m.z(s.r_s) == doctest::Approx(1.0).epsilon(1e-13));
    CHECK(m.du_at_k() > 0.0);
  }
}

TEST_CASE("degree-0 profile against a Richardson-extrapolated finite-difference solve") {
  const auto& s = p0();
  const auto m = modes::solve_u_mode(0, s);
  const int n = 10000;
  const auto coarse = oracle::fd_mode(0, s.k_s, s.r_s, n);
  const auto fine = oracle::fd_mode(0, s.k_s, s.r_s, 2 * n);
  double err = 0.0;
  for (int i = 0; i <= n; ++i) {
    const double r = s.k_s + (s.r_s - s.k_s) * i / n;
    const double extrap = (4.0 * fine[static_cast<std::size_t>(2 * i)] - coarse[static_cast<std::size_t>(i)]) / 3.0;
    err = std::max(err, std::abs(m.u(r) - extrap));
  }
  CHECK(err < 1e-7);
}

TEST_CASE("profiles against modified spherical Bessel closed forms") {
  const auto& s = p0();
  for (int k : {0, 1, 2, 3, 7, 15, 30}) {
    const auto m = modes::solve_u_mode(k, s);
    double err = 0.0;
    for (double r : interior(s.k_s, s.r_s, 200)) err = std::max(err, std::abs(m.u(r) - oracle::bessel_mode(k, s.k_s, s.r_s, r)));
    CAPTURE(k);
    CHECK(err < 1e-9);
  }
}

TEST_CASE("degree-1 profile equals the normalized nutrient slope") {
  const auto& s = p0();
  const auto m = modes::solve_u_mode(1, s);
  double err = 0.0;
  for (double r : interior(s.k_s, s.r_s, 1000)) {
    const double exact = s.r_s * s.sigma(r).derivative / (r * s.sigma(s.r_s).derivative);
    err = std::max(err, std::abs(m.u(r) - exact));
    CHECK(modes::u1_closed_form(r, s) == doctest::Approx(exact).epsilon(1e-13));
  }
  CHECK(err < 1e-8);
}

TEST_CASE("derivative of the profile matches finite differences") {
  const auto& s = p0();
  for (int k : {0, 4, 60}) {
    const auto m = modes::solve_u_mode(k, s);
    for (double r : interior(s.k_s, s.r_s, 7)) {
      const double h = 1e-5;
      const double fd = (m.u(r + h) - m.u(r - h)) / (2 * h);
      CHECK(std::abs(fd - m.du(r)) < 1e-6 * std::max(1.0, std::abs(m.du(r))));
    }
  }
}

TEST_CASE("high-degree profiles stay finite and monotone") {
  const auto& s = p0();
  const auto m = modes::solve_u_mode(400, s);
  double prev = 0.0;
  for (double r : interior(s.k_s, s.r_s, 500)) {
    const double u = m.u(r);
    CHECK(std::isfinite(u));
    CHECK(u >= prev);
    prev = u;
  }
  CHECK(std::isfinite(m.dv_at_rs()));
  CHECK(m.dv_at_rs() > 0.0);
}

TEST_CASE("parallel solve reproduces serial solves bit for bit") {
  const auto& s = p0();
  const auto all = modes::solve_u_modes(24, s);
  REQUIRE(all.size() == 25);
  for (int k : {0, 3, 24}) {
    const auto one = modes::solve_u_mode(k, s);
    CHECK(all[static_cast<std::size_t>(k)].k() == k);
    CHECK(all[static_cast<std::size_t>(k)].dv_at_rs() == one.dv_at_rs());
    CHECK(all[static_cast<std::size_t>(k)].u(0.5 * (s.k_s + s.r_s)) == one.u(0.5 * (s.k_s + s.r_s)));
  }
}

TEST_CASE("flux integral against composite Simpson quadrature") {
  const auto& s = p0();
  for (int k : {0, 2, 10}) {
    const auto m = modes::solve_u_mode(k, s);
    const double q = oracle::simpson(
        [&](double t) { return m.u(t) * std::pow(t / s.r_s, 2.0 * (k + 1)); }, s.k_s, s.r_s, 4000);
    CHECK(m.flux_integral() == doctest::Approx(q).epsilon(1e-9));
  }
}

TEST_CASE("two forms of the pressure slope agree and decrease with degree") {
  const auto& s = p0();
  const auto all = modes::solve_u_modes(60, s);
  double prev = INFINITY;
  for (const auto& m : all) {
    const auto f = modes::v_slope_forms(m, s);
    CAPTURE(m.k());
    CHECK(f.relative_gap() < 1e-9);
    CHECK(f.primary > 0.0);
    CHECK(f.primary < prev);
    prev = f.primary;
  }
}

TEST_CASE("pressure profile: boundary value, equation and interface jump") {
  const auto& s = p0();
  const auto& p = s.params;
  for (int k : {0, 1, 3, 12}) {
    const auto m = modes::solve_u_mode(k, s);
    const auto v = modes::solve_v_profile(m, s);
    CAPTURE(k);
    CHECK(std::abs(v.v(s.r_s)) < 1e-12);
    CHECK(v.dv(s.r_s) == doctest::Approx(m.dv_at_rs()).epsilon(1e-8));
    CHECK(v.v(0.5 * s.k_s) == doctest::Approx(v.core_value()));
    const double jump = (p.sigma_hat - p.sigma_tilde) / p.sigma_hat;
    CHECK(v.dv(s.k_s) == doctest::Approx(jump * m.du_at_k()).epsilon(1e-10));
    const double r = 0.5 * (s.k_s + s.r_s), h = 1e-4;
    const double vpp = (v.v(r + h) - 2 * v.v(r) + v.v(r - h)) / (h * h);
    CHECK(std::abs(vpp + 2.0 * (k + 1) / r * v.dv(r) - m.u(r)) < 1e-6);
  }
}

TEST_CASE("degree-1 pressure profile closed form") {
  const auto& s = p0();
  const auto& p = s.params;
  const auto m = modes::solve_u_mode(1, s);
  const auto v = modes::solve_v_profile(m, s);
  for (double r : interior(s.k_s, s.r_s, 50)) CHECK(v.v(r) == doctest::Approx(modes::v1_closed_form(r, s)).epsilon(1e-8));
  const double target = p.g1 / (p.a * s.sigma(s.r_s).derivative);
  CHECK(m.dv_at_rs() == doctest::Approx(target).epsilon(1e-9));
  CHECK(modes::v1_closed_form_derivative(s.r_s, s) == doctest::Approx(target).epsilon(1e-10));
}

TEST_CASE("perturbation fields vanish where the boundary data say they should") {
  const auto& s = p0();
  const double gamma = 2.0;
  const auto m = modes::solve_u_mode(3, s);
  const auto v = modes::solve_v_profile(m, s);
  const auto f = modes::mode_fields(3, 0.01, gamma, m, v, s);
  CHECK(std::abs(f.u_radial(s.k_s)) < 1e-14);
  const double amp = s.r_s * s.sigma(s.r_s).derivative;
  CHECK(f.u_radial(s.r_s) == doctest::Approx(-amp * 0.01).epsilon(1e-12));
  CHECK(f.v_radial(s.r_s) == doctest::Approx(0.01 * gamma * 2 * 5 / (2 * s.r_s)).epsilon(1e-12));
  CHECK(f.zeta() > 0.0);
}
