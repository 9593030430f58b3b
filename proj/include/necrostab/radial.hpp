#pragma once

// Radially symmetric solutions of the necrotic tumor model with nutrient
// consumption rate and boundary nutrient level both normalized to 1:
//
//   Delta sigma = sigma H(sigma - sigma_hat),  -Delta pi0 = g(sigma)  in B(0,R)
//   sigma = 1,  pi0 = 0  on |x| = R
//   g(sigma) = a (sigma - sigma_tilde) H(sigma - sigma_hat) - b,  H(0) = 0.
//
// For R > R* the ball carries a necrotic core r < K(R) where sigma = sigma_hat.

#include <optional>

namespace necrostab::radial {

struct ModelParams {
  double a = 1.0;
  double b = 0.25;
  double sigma_hat = 0.5;
  double sigma_tilde = 0.25;  // sigma_hat - b/a
  double g1 = 0.5;            // g(1) = a(1 - sigma_tilde) - b
  std::optional<double> gamma;

  /// Validates 0 < sigma_hat < 1, a > 0, 0 < b < a sigma_hat and gamma > 0 when given;
  /// fills the derived fields. Throws ConfigError with a parameter diagnostic.
  static ModelParams make(double a, double b, double sigma_hat, std::optional<double> gamma = std::nullopt);

  /// Reference set P0 = (a=1, b=0.25, sigma_hat=0.5).
  static ModelParams reference() { return make(1.0, 0.25, 0.5); }

  /// g(sigma) with the Heaviside convention H(0) = 0.
  double g(double sigma) const noexcept;
};

struct ProfileValue {
  double value = 0.0;
  double derivative = 0.0;
};

/// Unique R* > 0 with sinh(R*)/R* = 1/sigma_hat.
double solve_r_star(const ModelParams& p);

/// Necrotic radius K(R) in (0, R), root of sinh(R-K) + K cosh(R-K) = R/sigma_hat.
/// Throws DomainError when R <= R* (no necrotic core).
double solve_k_of_r(double R, const ModelParams& p);

/// Nutrient U(r, R) and dU/dr for 0 <= r <= R, either branch.
ProfileValue sigma_profile(double r, double R, const ModelParams& p);

/// Pressure pi0 = V(r, R) and dV/dr on the necrotic branch R > R*.
ProfileValue pi_profile(double r, double R, const ModelParams& p);

/// The necrotic ball of radius R > R*: K, the matching constants C and D, and
/// evaluable U, V. Immutable after construction.
class NecroticBall {
 public:
  NecroticBall(double R, const ModelParams& p);
  /// Variant with a precomputed R* (skips one root solve).
  NecroticBall(double R, double r_star, const ModelParams& p);

  double radius() const noexcept { return R_; }
  double interface() const noexcept { return K_; }
  double c_const() const noexcept { return C_; }
  double d_const() const noexcept { return D_; }
  const ModelParams& params() const noexcept { return p_; }

  ProfileValue sigma(double r) const;
  /// U''(r); on r < K this is 0, on (K, R] it follows from U'' = U - 2U'/r.
  double sigma_second(double r) const;
  ProfileValue pi(double r) const;
  /// pi0'' from -Delta pi0 = g(sigma): pi0'' = -g(sigma) - 2 pi0'/r.
  double pi_second(double r) const;

  /// a * integral_{r}^{R} U(eta) eta^2 d eta.
  double mass_integral(double r) const;

  /// D recovered by slope matching V'(K+) = V'(K-) = bK/3, using the given
  /// value of integral_K^R U eta^2.
  double d_by_slope_matching(double integral_k_to_r) const;

 private:
  void init();
  double R_, K_, C_ = 0.0, D_ = 0.0;
  ModelParams p_;
};

struct RadialStationary {
  ModelParams params;
  double r_star = 0.0;
  double r_s = 0.0;
  double k_s = 0.0;
  double c_const = 0.0;
  double d_const = 0.0;

  ProfileValue sigma(double r) const;
  double sigma_second(double r) const;
  /// pi0 = V(r, R_s); the stationary pressure is pi_s = gamma/R_s + pi0.
  ProfileValue pi0(double r) const;
  ProfileValue pi_s(double r, double gamma) const;
  double pi_second(double r) const;
  const NecroticBall& ball() const;

 private:
  friend RadialStationary solve_stationary_radius(const ModelParams& p);
  std::optional<NecroticBall> ball_;
};

/// dV/dr(R, R); its unique zero on (R*, inf) is R_s.
double boundary_pressure_slope(double R, const ModelParams& p);

/// Solves boundary_pressure_slope(R) = 0 on (R*, inf), expanding the bracket.
RadialStationary solve_stationary_radius(const ModelParams& p);

/// (1/3) a s~ K^3 + a integral_K^R U eta^2 - (1/3)(a s~ + b) R^3 at R = R_s,
/// divided by (1/3)(a s~ + b) R_s^3.
double mass_balance_residual(const RadialStationary& s);

}  // namespace necrostab::radial
