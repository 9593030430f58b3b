#include "necrostab/dynamics.hpp"

#include <array>
#include <cmath>
#include <numbers>

#include <boost/numeric/odeint.hpp>
#include <fmt/format.h>

#include "necrostab/error.hpp"
#include "numerics.hpp"

namespace necrostab::dynamics {

double VelocityForms::relative_gap() const {
  if (!has_pressure) return 0.0;
  return std::abs(direct - pressure) / std::max({std::abs(direct), std::abs(pressure), scale});
}

double radial_velocity_direct(double R, const ModelParams& p) {
  if (!(R > 0.0) || !std::isfinite(R)) throw DomainError(fmt::format("radius R={} must be positive", R));
  const double r_star = radial::solve_r_star(p);
  if (R <= r_star) {
    const double scale = 1.0 / detail::sinhc(R);
    const auto integrand = [&](double r) { return p.g(scale * detail::sinhc(r)) * r * r; };
    return detail::integrate(integrand, 0.0, R) / (R * R);
  }
  const radial::NecroticBall ball(R, r_star, p);
  const double K = ball.interface();
  const auto integrand = [&](double r) { return p.g(ball.sigma(r).value) * r * r; };
  // g = -b on the core, where sigma = sigma_hat and H(0) = 0
  const double core = -p.b * K * K * K / 3.0;
  return (core + detail::integrate(integrand, K, R)) / (R * R);
}

VelocityForms radial_velocity_forms(double R, const ModelParams& p) {
  VelocityForms f;
  f.direct = radial_velocity_direct(R, p);
  f.scale = (p.a * p.sigma_tilde + p.b) * R / 3.0;
  if (R > radial::solve_r_star(p)) {
    f.pressure = -radial::boundary_pressure_slope(R, p);
    f.has_pressure = true;
  }
  return f;
}

double radial_velocity(double R, const ModelParams& p) {
  const auto f = radial_velocity_forms(R, p);
  if (f.relative_gap() > kVelocityTolerance) {
    throw ConsistencyError(fmt::format("radial velocity at R={}: g-integral {} vs pressure slope {} (gap {:.3e})", R,
                                       f.direct, f.pressure, f.relative_gap()));
  }
  return f.direct;
}

EvolutionTrace evolve_radius(double R0, double t_end, const ModelParams& p, const EvolveOptions& opt) {
  namespace odeint = boost::numeric::odeint;
  if (!(R0 > 0.0) || !std::isfinite(R0)) throw DomainError(fmt::format("initial radius R0={} must be positive", R0));
  if (!(t_end > 0.0) || !std::isfinite(t_end)) throw DomainError(fmt::format("t_end={} must be positive", t_end));
  if (opt.samples < 2) throw DomainError("need at least two output samples");

  // The state is the offset R - R_s so that the error control resolves the
  // approach to equilibrium rather than R itself.
  using State = std::array<double, 1>;
  const double r_star = radial::solve_r_star(p);
  const double r_ref = radial::solve_stationary_radius(p).r_s;
  const auto rhs = [&](const State& x, State& dxdt, double) {
    const double R = r_ref + x[0];
    if (!(R > 0.0)) throw SolverError("radius evolution", fmt::format("radius left (0, inf): R={}", R));
    dxdt[0] = radial_velocity_direct(R, p);
  };

  EvolutionTrace trace;
  trace.kind = EvolutionTrace::Kind::Radius;
  trace.params = p;
  trace.initial_condition = fmt::format("R0={:.17g}", R0);
  trace.model = "radial reduction dR/dt = R^-2 int_0^R g(sigma) r^2 dr";
  trace.times.reserve(opt.samples);
  trace.values.reserve(opt.samples);

  const auto sample_time = [&](std::size_t i) {
    return i + 1 == opt.samples ? t_end : t_end * static_cast<double>(i) / static_cast<double>(opt.samples - 1);
  };
  std::size_t next = 0;
  const auto emit_until = [&](double t_hi, auto&& state_at) {
    while (next < opt.samples && sample_time(next) <= t_hi) {
      const double t = sample_time(next++);
      trace.times.push_back(t);
      trace.values.push_back(state_at(t));
    }
  };

  auto stepper = odeint::make_dense_output(opt.abs_tol, opt.rel_tol, odeint::runge_kutta_dopri5<State>());
  State x0{R0 - r_ref};
  stepper.initialize(x0, 0.0, std::min(1e-2, t_end / 100.0));
  emit_until(0.0, [&](double) { return R0; });
  bool crossed = false;
  std::size_t steps = 0;
  try {
    while (next < opt.samples) {
      const auto [t0, t1] = stepper.do_step(rhs);
      if (++steps > 10'000'000) throw SolverError("radius evolution", "step budget exhausted");
      if (!(stepper.current_time_step() > 1e-14 * std::max(1.0, t1))) {
        throw SolverError("radius evolution", "step size collapsed");
      }
      const auto state_at = [&](double t) {
        State s;
        stepper.calc_state(t, s);
        return r_ref + s[0];
      };
      const double x_lo = r_ref + stepper.previous_state()[0], x_hi = r_ref + stepper.current_state()[0];
      if (!std::isfinite(x_hi)) throw SolverError("radius evolution", "non-finite radius");
      if (!crossed && (x_lo - r_star) * (x_hi - r_star) < 0.0) {
        // Restart on the far side of R*, where the core appears or disappears.
        const double tc = detail::find_root([&](double t) { return state_at(t) - r_star; }, t0, t1, "R* crossing");
        emit_until(tc, state_at);
        State xc;
        stepper.calc_state(tc, xc);
        stepper.initialize(xc, tc, stepper.current_time_step());
        crossed = true;
        continue;
      }
      emit_until(t1, state_at);
    }
  } catch (const odeint::step_adjustment_error& e) {
    throw SolverError("radius evolution", e.what());
  }
  return trace;
}

double fit_decay_rate(const EvolutionTrace& trace, double r_s, double lo, double hi) {
  if (trace.kind != EvolutionTrace::Kind::Radius || trace.size() < 2) throw DomainError("need a radius trace");
  const double offset0 = std::abs(trace.at(0) - r_s);
  if (!(offset0 > 0.0)) throw DomainError("trace starts at the stationary radius; no decay to fit");
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  std::size_t n = 0;
  for (std::size_t i = 0; i < trace.size(); ++i) {
    const double rel = std::abs(trace.at(i) - r_s) / offset0;
    if (rel < lo || rel > hi) continue;
    const double t = trace.times[i], y = std::log(rel);
    sx += t;
    sy += y;
    sxx += t * t;
    sxy += t * y;
    ++n;
  }
  if (n < 3) throw DomainError(fmt::format("only {} samples fall in the fit window [{}, {}]", n, lo, hi));
  const double dn = static_cast<double>(n);
  return (dn * sxy - sx * sy) / (dn * sxx - sx * sx);
}

double velocity_slope(double R, const ModelParams& p, double rel_step) {
  const double h = rel_step * R;
  return (radial_velocity(R + h, p) - radial_velocity(R - h, p)) / (2.0 * h);
}

EvolutionTrace evolve_modes(const harmonics::HarmonicExpansion& initial, double gamma, const std::vector<double>& times,
                            const spectrum::ModeSpectrum& spec) {
  for (std::size_t i = 1; i < times.size(); ++i) {
    if (!(times[i] > times[i - 1])) throw DomainError("sample times must be strictly increasing");
  }
  if (initial.max_degree() > spec.kmax()) {
    throw DomainError(fmt::format("initial shape has degree {} beyond solved kmax {}", initial.max_degree(), spec.kmax()));
  }
  EvolutionTrace trace;
  trace.kind = EvolutionTrace::Kind::Modes;
  trace.params = spec.stationary().params;
  trace.gamma = gamma;
  trace.times = times;
  trace.initial_condition = fmt::format("{} harmonic coefficients", initial.size());
  trace.model = "linearized flow c_kl(t) = c_kl(0) exp(a_k t); not the nonlinear free-boundary evolution";
  std::vector<double> c0, rate;
  for (const auto& [idx, c] : initial) {
    trace.indices.push_back(idx);
    c0.push_back(c);
    rate.push_back(spec.a(idx.k, gamma));
  }
  trace.values.reserve(times.size() * c0.size());
  for (double t : times) {
    for (std::size_t j = 0; j < c0.size(); ++j) trace.values.push_back(c0[j] * std::exp(rate[j] * t));
  }
  return trace;
}

std::vector<ShapeSample> shape_snapshot(const EvolutionTrace& trace, std::size_t sample, double r_s, int n_theta,
                                        int n_phi) {
  if (trace.kind != EvolutionTrace::Kind::Modes) throw DomainError("shape snapshots need a mode trace");
  if (sample >= trace.size()) throw DomainError(fmt::format("sample {} out of range", sample));
  if (n_theta < 1 || n_phi < 1) throw DomainError("snapshot grid must be nonempty");
  harmonics::HarmonicExpansion shape;
  for (std::size_t j = 0; j < trace.indices.size(); ++j) shape.set(trace.indices[j], trace.at(sample, j));
  std::vector<ShapeSample> out;
  out.reserve(static_cast<std::size_t>(n_theta) * n_phi);
  for (int i = 0; i < n_theta; ++i) {
    const double theta = std::numbers::pi * (i + 0.5) / n_theta;
    for (int j = 0; j < n_phi; ++j) {
      const double phi = 2.0 * std::numbers::pi * j / n_phi;
      out.push_back({theta, phi, r_s * (1.0 + harmonics::synthesize(shape, {theta, phi}))});
    }
  }
  return out;
}

PlanarPoint toy_planar_flow(double x0, double y0, double t) noexcept { return {x0, y0 * std::exp(-t)}; }

PlanarPoint toy_planar_limit(double x0, double) noexcept { return {x0, 0.0}; }

bool toy_on_stable_manifold(double x0, double) noexcept { return x0 == 0.0; }

}  // namespace necrostab::dynamics
