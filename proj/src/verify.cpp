#include "necrostab/verify.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <optional>

#include <fmt/format.h>

#include "necrostab/dynamics.hpp"
#include "necrostab/harmonics.hpp"
#include "necrostab/modes.hpp"
#include "necrostab/spectrum.hpp"

namespace necrostab::verify {

bool VerifyReport::all_pass() const {
  return std::all_of(checks.begin(), checks.end(), [](const CheckRecord& c) { return c.pass; });
}

std::size_t VerifyReport::failures() const {
  return static_cast<std::size_t>(std::count_if(checks.begin(), checks.end(), [](const CheckRecord& c) { return !c.pass; }));
}

namespace {

struct Outcome {
  double measured;
  bool pass;
  std::string detail = {};
};

class Recorder {
 public:
  explicit Recorder(VerifyReport& report) : report_(report) {}

  void group(std::string g) { group_ = std::move(g); }

  // pass iff measured <= tolerance
  bool bound(const std::string& name, double tolerance, const std::function<double()>& measure) {
    return run(name, tolerance, [&] {
      const double m = measure();
      return Outcome{m, m <= tolerance};
    });
  }

  bool run(const std::string& name, double tolerance, const std::function<Outcome()>& body) {
    CheckRecord rec{name, group_, 0.0, tolerance, false, {}};
    try {
      const auto o = body();
      rec.measured = o.measured;
      rec.pass = o.pass && std::isfinite(o.measured);
      rec.detail = o.detail;
    } catch (const std::exception& e) {
      rec.measured = std::nan("");
      rec.detail = e.what();
    }
    report_.checks.push_back(rec);
    return rec.pass;
  }

 private:
  VerifyReport& report_;
  std::string group_;
};

std::vector<double> interior_grid(double lo, double hi, int n) {
  std::vector<double> r(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) r[static_cast<std::size_t>(i)] = lo + (hi - lo) * (i + 1) / (n + 1);
  return r;
}

}  // namespace

VerifyReport verify_suite(const radial::ModelParams& p, const VerifyOptions& opt) {
  VerifyReport report;
  Recorder rec(report);

  rec.group("radial-stationary");
  std::optional<radial::RadialStationary> stat_opt;
  rec.run("stationary-solve", 0.0, [&] {
    stat_opt = radial::solve_stationary_radius(p);
    return Outcome{0.0, true, fmt::format("R*={:.17g} R_s={:.17g} K_s={:.17g}", stat_opt->r_star, stat_opt->r_s,
                                          stat_opt->k_s)};
  });
  if (!stat_opt) return report;
  const auto& s = *stat_opt;
  const double R = s.r_s, K = s.k_s;

  rec.bound("sigma-boundary", 1e-10, [&] { return std::abs(s.sigma(R).value - 1.0); });
  rec.bound("sigma-interface", 1e-10, [&] {
    const auto right = s.ball().sigma(std::nextafter(K, R));
    return std::max(std::abs(s.sigma(K).value - p.sigma_hat), std::abs(right.derivative));
  });
  rec.bound("pressure-interface-slope", 1e-10, [&] {
    return std::abs(s.pi0(K).derivative - p.b * K / 3.0) / (p.b * K / 3.0);
  });
  rec.bound("pressure-boundary-slope", 1e-10, [&] { return std::abs(s.pi0(R).derivative); });
  rec.bound("pressure-second-derivative", 1e-8, [&] { return std::abs(s.pi_second(R) + p.g1); });
  rec.bound("d-two-routes", 1e-10, [&] {
    const double matched = s.ball().d_by_slope_matching(s.ball().mass_integral(K) / p.a);
    return std::abs(matched - s.d_const) / std::abs(s.d_const);
  });
  rec.bound("mass-balance", 1e-10, [&] { return std::abs(radial::mass_balance_residual(s)); });

  rec.group("mode-profile-properties");
  std::vector<modes::ModeSolution> solved;
  rec.run("mode-solve", 0.0, [&] {
    solved = modes::solve_u_modes(std::max(opt.kmax, opt.ordering_kmax), s);
    return Outcome{0.0, true, fmt::format("k = 0..{}", solved.size() - 1)};
  });
  if (solved.empty()) return report;
  const auto grid = interior_grid(K, R, opt.grid);
  const int kord = std::min<int>(opt.ordering_kmax, static_cast<int>(solved.size()) - 1);

  rec.bound("u1-closed-form", 1e-8, [&] {
    double e = 0.0;
    for (double r : grid) e = std::max(e, std::abs(solved[1].u(r) - modes::u1_closed_form(r, s)));
    return e;
  });
  rec.bound("mode-bounds", 0.0, [&] {
    int bad = 0;
    for (int k = 0; k <= kord; ++k) {
      const auto& m = solved[static_cast<std::size_t>(k)];
      for (double r : grid) {
        const double u = m.u(r);
        if (!(u > 0.0 && u < 1.0) || !(m.du(r) > 0.0)) ++bad;
      }
    }
    return static_cast<double>(bad);
  });
  rec.bound("mode-ordering", 0.0, [&] {
    int bad = 0;
    for (int k = 1; k <= kord; ++k) {
      const auto& hi = solved[static_cast<std::size_t>(k)];
      const auto& lo = solved[static_cast<std::size_t>(k - 1)];
      for (double r : grid) {
        if (!(hi.u(r) > lo.u(r))) ++bad;
        if (!(hi.z(r) < lo.z(r))) ++bad;
      }
      if (!(hi.du_at_k() >= lo.du_at_k())) ++bad;
      if (!(hi.du_at_rs() <= lo.du_at_rs())) ++bad;
    }
    return static_cast<double>(bad);
  });
  rec.bound("flux-identity", 1e-8, [&] {
    double worst = 0.0;
    for (const auto& m : solved) {
      const double k1 = m.k() + 1;
      const double rhs = m.du_at_k() * std::exp(2.0 * k1 * std::log(K / R)) + m.flux_integral();
      worst = std::max(worst, std::abs(m.du_at_rs() - rhs) / std::abs(m.du_at_rs()));
    }
    return worst;
  });
  rec.bound("v1-closed-form", 1e-7, [&] {
    const auto vp = modes::solve_v_profile(solved[1], s);
    double e = 0.0;
    for (double r : grid) e = std::max(e, std::abs(vp.v(r) - modes::v1_closed_form(r, s)));
    return e;
  });
  rec.bound("v1-interface-slope", 1e-8, [&] {
    const double jump = (p.sigma_hat - p.sigma_tilde) / p.sigma_hat;
    return std::abs(modes::v1_closed_form_derivative(K, s) - jump * solved[1].du_at_k());
  });

  rec.group("dual-formula");
  rec.bound("v-slope-dual-forms", 1e-7, [&] {
    double worst = 0.0;
    for (const auto& m : solved) worst = std::max(worst, modes::v_slope_forms(m, s).relative_gap());
    return worst;
  });

  std::optional<spectrum::ModeSpectrum> spec;
  rec.run("v-slope-positive-decreasing", 0.0, [&] {
    spec.emplace(s, solved);
    int bad = 0;
    for (int k = 0; k <= spec->kmax(); ++k) {
      if (!(spec->dv_at_rs(k) > 0.0)) ++bad;
      if (k > 0 && !(spec->dv_at_rs(k) < spec->dv_at_rs(k - 1))) ++bad;
    }
    return Outcome{static_cast<double>(bad), bad == 0};
  });
  if (!spec) return report;
  const double sp = s.sigma(R).derivative;

  rec.group("translation-neutrality");
  const double a0 = spec->a(0, 1.0);
  rec.run("a1-zero", 1e-7 * std::max(1.0, std::abs(a0)), [&] {
    const double a1 = spec->a(1, 1.0);
    return Outcome{std::abs(a1), std::abs(a1) <= 1e-7 * std::max(1.0, std::abs(a0))};
  });
  rec.run("a0-negative", 0.0, [&] { return Outcome{a0, a0 < 0.0, "a_0 < 0"}; });
  rec.bound("v1-slope", 1e-7, [&] {
    const double target = p.g1 / (p.a * sp);
    return std::abs(spec->dv_at_rs(1) - target) / target;
  });

  rec.group("threshold-dichotomy");
  std::optional<spectrum::Threshold> thr;
  rec.run("gamma-star-certified", 0.0, [&] {
    thr = spectrum::gamma_star(*spec);
    return Outcome{thr->tail_bound / thr->gamma_star, thr->certified,
                   fmt::format("gamma*={:.17g} at k={}", thr->gamma_star, thr->argmax_k)};
  });
  rec.run("gamma-positive", 0.0, [&] {
    const auto g = spec->gamma_values();
    const double m = *std::min_element(g.begin(), g.end());
    return Outcome{m, m > 0.0, "min gamma_k > 0"};
  });
  rec.bound("gamma-asymptotics", 0.05, [&] {
    constexpr int k = 200;
    const double gk = k <= spec->kmax() ? spec->gamma_k(k) : spectrum::gamma_k(modes::solve_u_mode(k, s), s);
    return std::abs(gk / spectrum::gamma_k_asymptotic(k, s) - 1.0);
  });
  rec.bound("eigenvalue-factored-form", 1e-9, [&] {
    const double gamma = thr ? thr->gamma_star : 1.0;
    double worst = 0.0;
    for (int k = 2; k <= spec->kmax(); ++k) {
      const double c = static_cast<double>(k) * (k - 1) * (k + 2) / (2.0 * R * R);
      const double direct = spec->a(k, gamma);
      const double factored = -c * (gamma - spec->gamma_k(k));
      const double scale = std::max({std::abs(direct), c * gamma, p.g1 * R});
      worst = std::max(worst, std::abs(direct - factored) / scale);
    }
    return worst;
  });
  if (thr) {
    rec.bound("gamma-tail-monotone", 0.0, [&] {
      int bad = 0;
      for (int k = thr->argmax_k + 1; k <= spec->kmax(); ++k) {
        if (!(spec->gamma_k(k) < spec->gamma_k(k - 1))) ++bad;
      }
      return static_cast<double>(bad);
    });
    rec.run("stable-above-threshold", 0.0, [&] {
      const auto r = spectrum::classify_stability(*spec, *thr, 1.05 * thr->gamma_star);
      int positive = 0;
      for (int k = 2; k <= r.kmax; ++k) positive += r.a_values[static_cast<std::size_t>(k)] >= 0.0;
      const bool ok = r.classification == spectrum::Stability::StableModuloTranslations && positive == 0 &&
                      r.a_values[0] < 0.0 && r.kernel_degrees == std::vector<int>{1};
      return Outcome{static_cast<double>(positive), ok, std::string(spectrum::to_string(r.classification))};
    });
    rec.run("unstable-below-threshold", 0.0, [&] {
      const auto r = spectrum::classify_stability(*spec, *thr, 0.95 * thr->gamma_star);
      const double top = *std::max_element(r.a_values.begin() + 2, r.a_values.end());
      return Outcome{top, r.classification == spectrum::Stability::Unstable && top > 0.0,
                     std::string(spectrum::to_string(r.classification))};
    });
  }

  rec.group("hele-shaw-spectrum");
  rec.bound("heleshaw-composition", 0.0, [&] {
    int bad = 0;
    for (int n = 2; n <= 4; ++n) {
      for (int k = 0; k <= 20; ++k) bad += spectrum::heleshaw_mu(k, n) != spectrum::heleshaw_composition(k, n);
    }
    return static_cast<double>(bad);
  });
  rec.bound("heleshaw-kernel-dimension", 0.0, [&] {
    int bad = 0;
    for (int n = 2; n <= 4; ++n) bad += spectrum::heleshaw_spectrum(n, 20).kernel_dim != n + 1;
    return static_cast<double>(bad);
  });

  rec.group("annulus-multiplier");
  rec.bound("dn-positive-increasing", 0.0, [&] {
    int bad = 0;
    double prev = 0.0;
    for (int k = 0; k <= 100; ++k) {
      const double l = spectrum::dn_annulus_multiplier(k, K, R);
      bad += !(l > prev);
      prev = l;
    }
    return static_cast<double>(bad);
  });

  rec.group("radial-velocity");
  rec.bound("velocity-two-forms", dynamics::kVelocityTolerance, [&] {
    double worst = 0.0;
    for (int i = 1; i <= 100; ++i) {
      const double r = s.r_star + (3.0 * R - s.r_star) * i / 100.0;
      worst = std::max(worst, dynamics::radial_velocity_forms(r, p).relative_gap());
    }
    return worst;
  });
  rec.bound("velocity-root", 1e-10, [&] { return std::abs(dynamics::radial_velocity(R, p)); });
  rec.run("velocity-linearization", 1e-4, [&] {
    // The relative chart r = R_s(1 + rho) carries the constant mode as rho' = (a_0 / R_s) rho.
    const double slope = dynamics::velocity_slope(R, p);
    const double gap = std::abs(slope - a0 / R) / std::abs(a0 / R);
    return Outcome{gap, gap <= 1e-4, fmt::format("dPhi/dR={:.10g}, a_0/R_s={:.10g}", slope, a0 / R)};
  });

  rec.group("harmonics");
  const auto rule = harmonics::QuadratureRule::product(22);
  rec.bound("harmonics-gram", 1e-9, [&] {
    const int kmax = 10, n = (kmax + 1) * (kmax + 1);
    std::vector<double> gram(static_cast<std::size_t>(n * n), 0.0), y(static_cast<std::size_t>(n));
    for (std::size_t q = 0; q < rule.nodes.size(); ++q) {
      harmonics::eval_all_ylm(kmax, rule.nodes[q], y);
      for (int i = 0; i < n; ++i) {
        for (int j = 0; j < n; ++j) gram[static_cast<std::size_t>(i * n + j)] += rule.weights[q] * y[i] * y[j];
      }
    }
    double e = 0.0;
    for (int i = 0; i < n; ++i) {
      for (int j = 0; j < n; ++j) e = std::max(e, std::abs(gram[static_cast<std::size_t>(i * n + j)] - (i == j)));
    }
    return e;
  });
  rec.bound("harmonics-dirichlet-energy", 1e-8, [&] {
    double e = 0.0;
    for (int k = 0; k <= 10; ++k) {
      for (int l = 1; l <= 2 * k + 1; ++l) {
        e = std::max(e, std::abs(harmonics::dirichlet_energy({k, l}, rule) - harmonics::lambda(k)));
      }
    }
    return e;
  });

  return report;
}

}  // namespace necrostab::verify
