#pragma once

// Degree-k radial reductions of the linearized necrotic tumor problem around
// the stationary ball B(0, R_s) with necrotic core radius K_s.
//
// ubar_k solves   u'' + 2(k+1)/r u' = u     on (K_s, R_s),  u(K_s) = 0, u(R_s) = 1.
// It is computed through z_k = ubar_k (r/R_s)^{k+1}, which satisfies
//                 z'' = (k(k+1)/r^2 + 1) z, z(K_s) = 0, z(R_s) = 1,
// and carries no first-order term. vbar_k solves
//                 v'' + 2(k+1)/r v' = ubar_k on (K_s, R_s), bounded (hence
// constant) inside the core, v(R_s) = 0, with the slope jump
//                 v'(K_s+) - v'(K_s-) = ((sh - st)/sh) ubar_k'(K_s+).

#include <memory>
#include <vector>

#include "necrostab/radial.hpp"

namespace necrostab::detail {
class QuinticHermite;
}

namespace necrostab::modes {

using radial::ModelParams;
using radial::RadialStationary;

class ModeSolution {
 public:
  int k() const noexcept { return k_; }
  double r_inner() const noexcept { return k_s_; }
  double r_outer() const noexcept { return r_s_; }

  /// ubar_k(r) and ubar_k'(r) on [K_s, R_s].
  double u(double r) const;
  double du(double r) const;
  /// z_k(r) = ubar_k(r) (r/R_s)^{k+1}.
  double z(double r) const;

  double du_at_k() const noexcept { return du_at_k_; }
  double du_at_rs() const noexcept { return du_at_rs_; }
  /// vbar_k'(R_s) from the flux formula (primary route).
  double dv_at_rs() const noexcept { return dv_at_rs_; }
  /// integral_{K_s}^{R_s} ubar_k(t) (t/R_s)^{2(k+1)} dt.
  double flux_integral() const noexcept { return flux_integral_; }
  std::size_t steps() const noexcept { return steps_; }

 private:
  friend ModeSolution solve_u_mode(int k, const RadialStationary& stat);

  struct Segment;
  struct Eval {
    double zm;      // z mantissa
    double dzm;     // z' mantissa
    double log_scale;
  };
  Eval eval(double r) const;

  int k_ = 0;
  double k_s_ = 0.0, r_s_ = 0.0;
  double du_at_k_ = 0.0, du_at_rs_ = 0.0, dv_at_rs_ = 0.0, flux_integral_ = 0.0;
  std::size_t steps_ = 0;
  std::shared_ptr<const std::vector<Segment>> segments_;
};

/// Shooting solve of the z_k problem. Throws SolverError if the shot degenerates.
ModeSolution solve_u_mode(int k, const RadialStationary& stat);

/// Solves degrees 0..kmax (data-parallel, deterministic order).
std::vector<ModeSolution> solve_u_modes(int kmax, const RadialStationary& stat);

/// ubar_1(r) = R_s sigma_s'(r) / (r sigma_s'(R_s)), exact.
double u1_closed_form(double r, const RadialStationary& stat);

struct VSlopeForms {
  double primary;    // ((sh-st)/sh) ubar'(K+) (K/R)^{2(k+1)} + I
  double rewritten;  // ((sh-st)/sh) ubar'(R_s) + (st/sh) I
  double relative_gap() const;
};

VSlopeForms v_slope_forms(const ModeSolution& mode, const RadialStationary& stat);

/// vbar_k'(R_s); throws ConsistencyError when the two forms disagree by more
/// than 1e-7 relative.
double v_mode_slope(const ModeSolution& mode, const RadialStationary& stat);

/// vbar_1(r) = -R_s pi_s'(r) / (a r sigma_s'(R_s)) and its r-derivative.
double v1_closed_form(double r, const RadialStationary& stat);
double v1_closed_form_derivative(double r, const RadialStationary& stat);

/// Full vbar_k profile from one outward initial-value integration.
class VModeProfile {
 public:
  int k() const noexcept { return k_; }
  double v(double r) const;
  double dv(double r) const;
  /// Constant value taken inside the core r < K_s.
  double core_value() const noexcept { return core_value_; }

 private:
  friend VModeProfile solve_v_profile(const ModeSolution& mode, const RadialStationary& stat);
  int k_ = 0;
  double k_s_ = 0.0, r_s_ = 0.0, shift_ = 0.0, core_value_ = 0.0;
  std::shared_ptr<const detail::QuinticHermite> profile_;
};

VModeProfile solve_v_profile(const ModeSolution& mode, const RadialStationary& stat);

/// Radial factors of the degree-k perturbation fields for boundary coefficient c:
///   u = u_radial(r) c_kl Y_kl,  v = v_radial(r) c_kl Y_kl,  zeta = zeta c_kl Y_kl.
class ModeFields {
 public:
  int k() const noexcept { return k_; }
  double coefficient() const noexcept { return c_; }
  double zeta() const noexcept { return zeta_; }

  double u_radial(double r) const;
  double du_radial(double r) const;  // one-sided from the living side at K_s
  double v_radial(double r) const;
  /// Radial slope of v; `inner_side` selects the core limit at r = K_s.
  double dv_radial(double r, bool inner_side = false) const;

 private:
  friend ModeFields mode_fields(int k, double c, double gamma, const ModeSolution& mode, const VModeProfile& vprof,
                                const RadialStationary& stat);
  int k_ = 0;
  double c_ = 0.0, gamma_ = 0.0, zeta_ = 0.0;
  double amplitude_ = 0.0;  // R_s sigma_s'(R_s)
  double a_ = 0.0;
  ModeSolution mode_;
  VModeProfile vprof_;
  double k_s_ = 0.0, r_s_ = 0.0;
};

ModeFields mode_fields(int k, double c, double gamma, const ModeSolution& mode, const VModeProfile& vprof,
                       const RadialStationary& stat);

}  // namespace necrostab::modes
