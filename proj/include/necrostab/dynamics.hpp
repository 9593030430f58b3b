#pragma once

// Radially symmetric evolution toward R_s, the exact linear flow of harmonic
// shape amplitudes, and the planar toy system x' = 0, y' = -y.

#include <string>
#include <vector>

#include "necrostab/harmonics.hpp"
#include "necrostab/radial.hpp"
#include "necrostab/spectrum.hpp"

namespace necrostab::dynamics {

using radial::ModelParams;
using radial::RadialStationary;

/// Both evaluations of dR/dt for a ball of radius R.
struct VelocityForms {
  double direct = 0.0;    // (1/R^2) integral_0^R g(sigma) r^2 dr
  double pressure = 0.0;  // -dV/dr(R, R); only when has_pressure
  bool has_pressure = false;
  double scale = 0.0;     // (a s~ + b) R / 3, magnitude of the competing terms
  double relative_gap() const;
};

inline constexpr double kVelocityTolerance = 1e-9;

VelocityForms radial_velocity_forms(double R, const ModelParams& p);

/// dR/dt. Above R* the two forms are compared and a gap beyond 1e-9 (relative to
/// max(|v|, scale)) raises ConsistencyError.
double radial_velocity(double R, const ModelParams& p);

/// Cheap form used inside the time integrator (no cross-check).
double radial_velocity_direct(double R, const ModelParams& p);

struct EvolutionTrace {
  enum class Kind { Radius, Modes };
  Kind kind = Kind::Radius;
  std::vector<double> times;
  /// Row-major samples: width() values per time.
  std::vector<double> values;
  std::vector<harmonics::HarmonicIndex> indices;  // Modes only
  ModelParams params;
  double gamma = 0.0;  // Modes only
  std::string initial_condition;
  std::string model;  // describes the evolution law that produced the trace

  std::size_t width() const noexcept { return kind == Kind::Radius ? 1 : indices.size(); }
  std::size_t size() const noexcept { return times.size(); }
  double at(std::size_t sample, std::size_t column = 0) const { return values.at(sample * width() + column); }
};

struct EvolveOptions {
  double rel_tol = 1e-10;
  double abs_tol = 1e-13;
  /// Uniform output samples on [0, t_end] (inclusive of both ends).
  std::size_t samples = 2001;
};

/// Integrates R' = radial_velocity(R) from R0 with dense-output Dormand-Prince.
/// A crossing of R* is located on the dense output and the stepper restarted there.
EvolutionTrace evolve_radius(double R0, double t_end, const ModelParams& p, const EvolveOptions& opt = {});

/// Least-squares slope of log|R - R_s| over samples with
/// lo <= |R - R_s| / |R0 - R_s| <= hi. DomainError if fewer than 3 samples qualify.
double fit_decay_rate(const EvolutionTrace& trace, double r_s, double lo = 1e-6, double hi = 1e-3);

/// Centered difference of radial_velocity at R.
double velocity_slope(double R, const ModelParams& p, double rel_step = 1e-5);

/// Exact linear flow c_kl(t) = c_kl(0) exp(a_k(gamma) t) at the given times.
EvolutionTrace evolve_modes(const harmonics::HarmonicExpansion& initial, double gamma, const std::vector<double>& times,
                            const spectrum::ModeSpectrum& spec);

struct ShapeSample {
  double theta, phi, r;
};

/// r(omega, t) = R_s (1 + sum c_kl(t) Y_kl(omega)) on an n_theta x n_phi grid
/// (theta at cell midpoints, phi uniform).
std::vector<ShapeSample> shape_snapshot(const EvolutionTrace& trace, std::size_t sample, double r_s, int n_theta,
                                        int n_phi);

struct PlanarPoint {
  double x = 0.0, y = 0.0;
};

PlanarPoint toy_planar_flow(double x0, double y0, double t) noexcept;
/// Limit of the toy trajectory as t -> infinity: the stationary point (x0, 0).
PlanarPoint toy_planar_limit(double x0, double y0) noexcept;
/// True iff the trajectory converges to the origin, i.e. x0 = 0.
bool toy_on_stable_manifold(double x0, double y0) noexcept;

}  // namespace necrostab::dynamics
