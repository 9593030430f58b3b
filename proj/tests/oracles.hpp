#pragma once

// Independent reference computations used only by the tests. None of them
// call into the library's solvers.

#include <cmath>
#include <functional>
#include <vector>

namespace oracle {

inline double bisect(const std::function<double(double)>& f, double lo, double hi) {
  double flo = f(lo);
  for (int i = 0; i < 200 && hi - lo > 0.0; ++i) {
    const double mid = 0.5 * (lo + hi);
    if (mid == lo || mid == hi) break;
    const double fm = f(mid);
    if ((fm < 0.0) == (flo < 0.0)) {
      lo = mid;
      flo = fm;
    } else {
      hi = mid;
    }
  }
  return 0.5 * (lo + hi);
}

inline double r_star(double sigma_hat) {
  return bisect([&](double r) { return std::sinh(r) / r - 1.0 / sigma_hat; }, 0.1, 10.0);
}

inline double k_of_r(double R, double sigma_hat) {
  return bisect([&](double K) { return std::sinh(R - K) + K * std::cosh(R - K) - R / sigma_hat; }, 0.0, R);
}

/// Antiderivative of U(eta) eta^2 on the living shell.
inline double u_eta2_primitive(double eta, double K, double sigma_hat) {
  const double s = std::sinh(eta - K), c = std::cosh(eta - K);
  return sigma_hat * (eta * c - s + K * (eta * s - c));
}

inline double mass_integral(double K, double R, double sigma_hat) {
  return u_eta2_primitive(R, K, sigma_hat) - u_eta2_primitive(K, K, sigma_hat);
}

/// dV/dr(R, R) with D taken in closed form.
inline double boundary_slope(double R, double a, double b, double sigma_hat) {
  const double st = sigma_hat - b / a;
  const double K = k_of_r(R, sigma_hat);
  const double D = -a * st * K * K * K / 3.0 - a * mass_integral(K, R, sigma_hat);
  return D / (R * R) + (a * st + b) * R / 3.0;
}

inline double stationary_radius(double a, double b, double sigma_hat) {
  const double lo = r_star(sigma_hat) * (1.0 + 1e-9);
  double hi = 2.0 * lo;
  while (boundary_slope(hi, a, b, sigma_hat) <= 0.0) hi *= 2.0;
  return bisect([&](double R) { return boundary_slope(R, a, b, sigma_hat); }, lo, hi);
}

/// Tridiagonal solve (Thomas algorithm), in place on d.
inline void thomas(std::vector<double> lower, std::vector<double> diag, std::vector<double> upper,
                   std::vector<double>& d) {
  const std::size_t n = diag.size();
  for (std::size_t i = 1; i < n; ++i) {
    const double w = lower[i] / diag[i - 1];
    diag[i] -= w * upper[i - 1];
    d[i] -= w * d[i - 1];
  }
  d[n - 1] /= diag[n - 1];
  for (std::size_t i = n - 1; i-- > 0;) d[i] = (d[i] - upper[i] * d[i + 1]) / diag[i];
}

/// Second-order finite differences for u'' + 2(k+1)/r u' = u, u(K) = 0, u(R) = 1,
/// on n intervals. Returns nodal values including both ends.
inline std::vector<double> fd_mode(int k, double K, double R, int n) {
  const double h = (R - K) / n;
  const std::size_t m = static_cast<std::size_t>(n - 1);
  std::vector<double> lo(m), di(m), up(m), rhs(m, 0.0);
  for (std::size_t i = 0; i < m; ++i) {
    const double r = K + h * static_cast<double>(i + 1);
    const double c = (k + 1) / (r * h);
    lo[i] = 1.0 / (h * h) - c;
    up[i] = 1.0 / (h * h) + c;
    di[i] = -2.0 / (h * h) - 1.0;
  }
  rhs[m - 1] -= up[m - 1] * 1.0;
  thomas(lo, di, up, rhs);
  std::vector<double> u(static_cast<std::size_t>(n + 1));
  u.front() = 0.0;
  u.back() = 1.0;
  for (std::size_t i = 0; i < m; ++i) u[i + 1] = rhs[i];
  return u;
}

/// Modified spherical Bessel form: z = sqrt(r) [I_{k+1/2}(r) K_{k+1/2}(K) - K_{k+1/2}(r) I_{k+1/2}(K)],
/// normalized to z(R) = 1; returns ubar_k(r) = z (R/r)^{k+1}.
inline double bessel_mode(int k, double K, double R, double r) {
  const double nu = k + 0.5;
  const auto f = [&](double x) {
    return std::sqrt(x) * (std::cyl_bessel_i(nu, x) * std::cyl_bessel_k(nu, K) -
                           std::cyl_bessel_k(nu, x) * std::cyl_bessel_i(nu, K));
  };
  return f(r) / f(R) * std::pow(R / r, k + 1);
}

/// Slope jump across r = K of the harmonic function equal to Y_k on r = K,
/// zero on r = R and regular inside, built from r^k and r^{-(k+1)} directly.
inline double annulus_jump(int k, double K, double R) {
  // outer: A r^k + B r^{-k-1}, with A K^k + B K^{-k-1} = 1, A R^k + B R^{-k-1} = 0
  const double m11 = std::pow(K, k), m12 = std::pow(K, -k - 1);
  const double m21 = std::pow(R, k), m22 = std::pow(R, -k - 1);
  const double det = m11 * m22 - m12 * m21;
  const double A = m22 / det, B = -m21 / det;
  const double outer_slope = k * A * std::pow(K, k - 1) - (k + 1) * B * std::pow(K, -k - 2);
  const double inner_slope = static_cast<double>(k) / K;
  return inner_slope - outer_slope;
}

/// Composite Simpson rule with n (even) panels.
inline double simpson(const std::function<double(double)>& f, double a, double b, int n) {
  const double h = (b - a) / n;
  double s = f(a) + f(b);
  for (int i = 1; i < n; ++i) s += f(a + i * h) * (i % 2 ? 4.0 : 2.0);
  return s * h / 3.0;
}

}  // namespace oracle
