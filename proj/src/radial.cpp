#include "necrostab/radial.hpp"

#include <cmath>

#include <fmt/format.h>

#include "necrostab/error.hpp"
#include "numerics.hpp"

namespace necrostab::radial {

using detail::find_root;
using detail::integrate;

ModelParams ModelParams::make(double a, double b, double sigma_hat, std::optional<double> gamma) {
  if (!std::isfinite(a) || !(a > 0.0)) throw ConfigError(fmt::format("invalid parameter a={}: need a > 0", a));
  if (!std::isfinite(sigma_hat) || !(sigma_hat > 0.0 && sigma_hat < 1.0)) {
    throw ConfigError(fmt::format("invalid parameter sigma_hat={}: need 0 < sigma_hat < 1", sigma_hat));
  }
  if (!std::isfinite(b) || !(b > 0.0)) throw ConfigError(fmt::format("invalid parameter b={}: need b > 0", b));
  if (!(b < a * sigma_hat)) {
    throw ConfigError(fmt::format("invalid parameters b={} a={} sigma_hat={}: need b < a*sigma_hat", b, a, sigma_hat));
  }
  if (gamma && (!std::isfinite(*gamma) || !(*gamma > 0.0))) {
    throw ConfigError(fmt::format("invalid parameter gamma={}: need gamma > 0", *gamma));
  }
  ModelParams p;
  p.a = a;
  p.b = b;
  p.sigma_hat = sigma_hat;
  p.sigma_tilde = sigma_hat - b / a;
  p.g1 = a * (1.0 - p.sigma_tilde) - b;
  p.gamma = gamma;
  return p;
}

double ModelParams::g(double sigma) const noexcept {
  const double h = sigma - sigma_hat > 0.0 ? 1.0 : 0.0;
  return a * (sigma - sigma_tilde) * h - b;
}

double solve_r_star(const ModelParams& p) {
  const double target = 1.0 / p.sigma_hat;
  const auto f = [&](double r) { return detail::sinhc(r) - target; };
  double hi = 1.0;
  while (f(hi) < 0.0) hi *= 2.0;
  return find_root(f, 0.0, hi, "R* root");
}

namespace {

double k_equation(double K, double R, double sigma_hat) {
  return std::sinh(R - K) + K * std::cosh(R - K) - R / sigma_hat;
}

// Non-necrotic branch U = R sinh r / (r sinh R).
ProfileValue sigma_no_core(double r, double R) {
  const double scale = 1.0 / detail::sinhc(R);
  return {scale * detail::sinhc(r), scale * detail::sinhc_prime(r)};
}

// Living-region branch sigma_hat [sinh(r-K) + K cosh(r-K)] / r for r >= K.
ProfileValue sigma_living(double r, double K, double sigma_hat) {
  const double s = std::sinh(r - K), c = std::cosh(r - K);
  const double n = s + K * c;
  const double dn = c + K * s;
  return {sigma_hat * n / r, sigma_hat * (dn * r - n) / (r * r)};
}

}  // namespace

double solve_k_of_r(double R, const ModelParams& p) {
  const double r_star = solve_r_star(p);
  if (!(R > r_star)) {
    throw DomainError(fmt::format("no necrotic core: R={} does not exceed R*={}", R, r_star));
  }
  return find_root([&](double K) { return k_equation(K, R, p.sigma_hat); }, 0.0, R, "K(R) root");
}

ProfileValue sigma_profile(double r, double R, const ModelParams& p) {
  if (!(R > 0.0)) throw DomainError(fmt::format("radius R={} must be positive", R));
  if (!(r >= 0.0 && r <= R)) throw DomainError(fmt::format("r={} outside [0, R={}]", r, R));
  const double r_star = solve_r_star(p);
  if (R <= r_star) {
    if (r == R) return {1.0, sigma_no_core(r, R).derivative};
    return sigma_no_core(r, R);
  }
  return NecroticBall(R, r_star, p).sigma(r);
}

ProfileValue pi_profile(double r, double R, const ModelParams& p) {
  const double r_star = solve_r_star(p);
  if (!(R > r_star)) {
    throw DomainError(fmt::format("pressure closed form needs a necrotic core: R={} <= R*={}", R, r_star));
  }
  if (!(r >= 0.0 && r <= R)) throw DomainError(fmt::format("r={} outside [0, R={}]", r, R));
  return NecroticBall(R, r_star, p).pi(r);
}

NecroticBall::NecroticBall(double R, const ModelParams& p) : NecroticBall(R, solve_r_star(p), p) {}

NecroticBall::NecroticBall(double R, double r_star, const ModelParams& p) : R_(R), K_(0.0), p_(p) {
  if (!(R > r_star)) {
    throw DomainError(fmt::format("no necrotic core: R={} does not exceed R*={}", R, r_star));
  }
  K_ = find_root([&](double K) { return k_equation(K, R, p.sigma_hat); }, 0.0, R, "K(R) root");
  init();
}

void NecroticBall::init() {
  const double integral = mass_integral(K_) / p_.a;
  D_ = -p_.a * p_.sigma_tilde * K_ * K_ * K_ / 3.0 - p_.a * integral;
  // C from value matching V(K+) = C + b K^2 / 6
  C_ = pi(K_).value - p_.b * K_ * K_ / 6.0;
}

double NecroticBall::d_by_slope_matching(double integral_k_to_r) const {
  // V'(K+) = D/K^2 + (1/3)(a s~ + b) K + a I / K^2 must equal V'(K-) = b K / 3
  const double inner_slope = p_.b * K_ / 3.0;
  return K_ * K_ * (inner_slope - (p_.a * p_.sigma_tilde + p_.b) * K_ / 3.0) - p_.a * integral_k_to_r;
}

ProfileValue NecroticBall::sigma(double r) const {
  if (r == R_) return {1.0, sigma_living(r, K_, p_.sigma_hat).derivative};
  if (r <= K_) return {p_.sigma_hat, 0.0};
  return sigma_living(r, K_, p_.sigma_hat);
}

double NecroticBall::sigma_second(double r) const {
  if (r <= K_) return 0.0;
  const auto s = sigma(r);
  return s.value - 2.0 * s.derivative / r;
}

double NecroticBall::mass_integral(double r) const {
  if (r >= R_) return 0.0;
  const double lo = std::max(r, K_);
  const double living = integrate([&](double eta) { return sigma_living(eta, K_, p_.sigma_hat).value * eta * eta; },
                                  lo, R_);
  const double core = r < K_ ? p_.sigma_hat * (K_ * K_ * K_ - r * r * r) / 3.0 : 0.0;
  return p_.a * (living + core);
}

ProfileValue NecroticBall::pi(double r) const {
  if (r < K_) return {C_ + p_.b * r * r / 6.0, p_.b * r / 3.0};
  const double q = (p_.a * p_.sigma_tilde + p_.b);
  if (r >= R_) return {0.0, D_ / (R_ * R_) + q * R_ / 3.0};
  // The double integral int_r^R int_xi^R U (eta/xi)^2 d eta d xi collapses to
  // int_r^R U(eta) (eta^2/r - eta) d eta after exchanging the order.
  const double inner = integrate(
      [&](double eta) { return sigma_living(eta, K_, p_.sigma_hat).value * (eta * eta / r - eta); }, r, R_);
  const double value = D_ * (1.0 / R_ - 1.0 / r) - q * (R_ * R_ - r * r) / 6.0 - p_.a * inner;
  const double slope = D_ / (r * r) + q * r / 3.0 + mass_integral(r) / (r * r);
  return {value, slope};
}

double NecroticBall::pi_second(double r) const {
  if (r < K_) return p_.b / 3.0;
  const auto v = pi(r);
  return -p_.g(sigma(r).value) - 2.0 * v.derivative / r;
}

double boundary_pressure_slope(double R, const ModelParams& p) {
  const NecroticBall ball(R, p);
  return ball.pi(R).derivative;
}

RadialStationary solve_stationary_radius(const ModelParams& p) {
  const double r_star = solve_r_star(p);
  const auto slope = [&](double R) { return NecroticBall(R, r_star, p).pi(R).derivative; };

  // slope < 0 just above R*, > 0 for large R
  double lo = r_star * (1.0 + 1e-9);
  double hi = 2.0 * r_star;
  int expansions = 0;
  while (slope(hi) <= 0.0) {
    lo = hi;
    hi *= 2.0;
    if (++expansions > 60) throw SolverError("stationary radius", "failed to bracket a sign change of dV/dr(R,R)");
  }
  const double r_s = find_root(slope, lo, hi, "stationary radius");

  RadialStationary s;
  s.params = p;
  s.r_star = r_star;
  s.r_s = r_s;
  s.ball_.emplace(r_s, r_star, p);
  s.k_s = s.ball_->interface();
  s.c_const = s.ball_->c_const();
  s.d_const = s.ball_->d_const();
  return s;
}

const NecroticBall& RadialStationary::ball() const {
  if (!ball_) throw DomainError("RadialStationary was not produced by solve_stationary_radius");
  return *ball_;
}

ProfileValue RadialStationary::sigma(double r) const {
  if (!(r >= 0.0 && r <= r_s)) throw DomainError(fmt::format("r={} outside [0, R_s={}]", r, r_s));
  return ball().sigma(r);
}

double RadialStationary::sigma_second(double r) const { return ball().sigma_second(r); }

ProfileValue RadialStationary::pi0(double r) const {
  if (!(r >= 0.0 && r <= r_s)) throw DomainError(fmt::format("r={} outside [0, R_s={}]", r, r_s));
  return ball().pi(r);
}

ProfileValue RadialStationary::pi_s(double r, double gamma) const {
  auto v = pi0(r);
  v.value += gamma / r_s;
  return v;
}

double RadialStationary::pi_second(double r) const { return ball().pi_second(r); }

double mass_balance_residual(const RadialStationary& s) {
  const auto& p = s.params;
  const double rhs = (p.a * p.sigma_tilde + p.b) * s.r_s * s.r_s * s.r_s / 3.0;
  const double lhs = p.a * p.sigma_tilde * s.k_s * s.k_s * s.k_s / 3.0 + s.ball().mass_integral(s.k_s);
  return (lhs - rhs) / rhs;
}

}  // namespace necrostab::radial
