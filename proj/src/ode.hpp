#pragma once

// Adaptive Dormand-Prince 5(4) stepping that lands exactly on the end point and
// reports every accepted step, so callers can record interpolation knots or
// renormalize linear states between steps.

#include <algorithm>
#include <array>
#include <cmath>
#include <string>

#include <boost/numeric/odeint.hpp>

#include "necrostab/error.hpp"

namespace necrostab::detail {

struct StepControl {
  double abs_tol = 1e-14;
  double rel_tol = 1e-12;
  double initial_step = 0.0;  // 0: span / 1000
  std::size_t max_steps = 2'000'000;
};

/// on_step(t, x) is invoked after every accepted step (and once at t0) and may
/// rescale x in place.
template <std::size_t N, class System, class OnStep>
std::size_t integrate_to(System&& system, std::array<double, N>& x, double t0, double t1, const StepControl& ctl,
                         OnStep&& on_step, const std::string& stage) {
  namespace odeint = boost::numeric::odeint;
  using State = std::array<double, N>;
  auto stepper = odeint::make_controlled(ctl.abs_tol, ctl.rel_tol, odeint::runge_kutta_dopri5<State>());

  const double span = t1 - t0;
  double t = t0;
  double dt = ctl.initial_step > 0.0 ? ctl.initial_step : span / 1000.0;
  const double min_step = std::abs(span) * 1e-15;
  std::size_t accepted = 0, attempts = 0;
  on_step(t, x);
  while (t < t1) {
    const bool last = t + dt >= t1;
    double trial = last ? t1 - t : dt;
    const double t_before = t;
    if (stepper.try_step(system, x, t, trial) == odeint::success) {
      if (last) t = t1;  // absorb rounding in t + (t1 - t)
      ++accepted;
      on_step(t, x);
      // try_step leaves the proposed next step in `trial`
      dt = last ? dt : trial;
      if (!last) dt = std::max(dt, min_step);
    } else {
      dt = trial;
      if (!(dt > min_step)) throw SolverError(stage, "step size collapsed");
    }
    if (t == t_before && ++attempts > ctl.max_steps) throw SolverError(stage, "too many rejected steps");
    if (accepted > ctl.max_steps) throw SolverError(stage, "step budget exhausted");
    for (double v : x) {
      if (!std::isfinite(v)) throw SolverError(stage, "non-finite state");
    }
  }
  return accepted;
}

}  // namespace necrostab::detail
