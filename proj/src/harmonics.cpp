#include "necrostab/harmonics.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

#include <fmt/format.h>

#include "necrostab/error.hpp"

namespace necrostab::harmonics {

namespace {

constexpr double kPi = std::numbers::pi;

// Fully normalized associated Legendre functions Pbar_k^m(x) for a fixed m and
// k = m..kmax, so that Y_k0 = Pbar_k^0 and the (cos, sin) pair carries sqrt(2).
// Upward recurrence in degree; the normalization is carried along so nothing
// overflows for k up to a few hundred.
void normalized_legendre_column(int m, int kmax, double x, double sin_t, std::vector<double>& col) {
  col.assign(static_cast<std::size_t>(kmax + 1), 0.0);
  if (m > kmax) return;
  double pmm = 1.0 / std::sqrt(4.0 * kPi);
  for (int i = 1; i <= m; ++i) {
    pmm *= std::sqrt((2.0 * i + 1.0) / (2.0 * i)) * sin_t;
  }
  col[m] = pmm;
  if (m + 1 > kmax) return;
  col[m + 1] = std::sqrt(2.0 * m + 3.0) * x * pmm;
  for (int k = m + 2; k <= kmax; ++k) {
    const double kk = k, mm = m;
    const double a = std::sqrt((4.0 * kk * kk - 1.0) / (kk * kk - mm * mm));
    const double b = std::sqrt(((kk - 1.0) * (kk - 1.0) - mm * mm) / (4.0 * (kk - 1.0) * (kk - 1.0) - 1.0));
    col[k] = a * (x * col[k - 1] - b * col[k - 2]);
  }
}

double legendre_value(int k, int m, double x, double sin_t) {
  std::vector<double> col;
  normalized_legendre_column(m, k, x, sin_t, col);
  return col[k];
}

}  // namespace

void require_valid(const HarmonicIndex& idx) {
  if (!idx.valid()) {
    throw DomainError(fmt::format("invalid harmonic index (k={}, l={}): need k >= 0 and 1 <= l <= 2k+1",
                                  idx.k, idx.l));
  }
}

SphericalPoint SphericalPoint::from_cartesian(double x, double y, double z) {
  const double r = std::sqrt(x * x + y * y + z * z);
  if (!(r > 0.0)) throw DomainError("direction must be nonzero");
  return {std::acos(std::clamp(z / r, -1.0, 1.0)), std::atan2(y, x)};
}

void HarmonicExpansion::set(const HarmonicIndex& idx, double c) {
  require_valid(idx);
  if (!std::isfinite(c)) throw DomainError("expansion coefficient must be finite");
  coefficients_[idx] = c;
  max_degree_ = std::max(max_degree_, idx.k);
}

void HarmonicExpansion::add(const HarmonicIndex& idx, double c) {
  set(idx, get(idx) + c);
}

double HarmonicExpansion::get(const HarmonicIndex& idx) const {
  const auto it = coefficients_.find(idx);
  return it == coefficients_.end() ? 0.0 : it->second;
}

HarmonicExpansion HarmonicExpansion::scaled(double alpha) const {
  HarmonicExpansion out;
  for (const auto& [idx, c] : coefficients_) out.set(idx, alpha * c);
  return out;
}

HarmonicExpansion operator+(const HarmonicExpansion& x, const HarmonicExpansion& y) {
  HarmonicExpansion out = x;
  for (const auto& [idx, c] : y) out.add(idx, c);
  return out;
}

void gauss_legendre(int n, std::vector<double>& nodes, std::vector<double>& weights) {
  if (n < 1) throw DomainError("Gauss-Legendre order must be positive");
  nodes.assign(static_cast<std::size_t>(n), 0.0);
  weights.assign(static_cast<std::size_t>(n), 0.0);
  const int half = (n + 1) / 2;
  for (int i = 0; i < half; ++i) {
    double x = std::cos(kPi * (i + 0.75) / (n + 0.5));
    double dp = 0.0;
    for (int iter = 0; iter < 100; ++iter) {
      double p0 = 1.0, p1 = 0.0;
      for (int j = 1; j <= n; ++j) {
        const double p2 = p1;
        p1 = p0;
        p0 = ((2.0 * j - 1.0) * x * p1 - (j - 1.0) * p2) / j;
      }
      dp = n * (x * p0 - p1) / (x * x - 1.0);
      const double dx = p0 / dp;
      x -= dx;
      if (std::abs(dx) < 1e-16) break;
    }
    // recompute the derivative at the converged node
    double p0 = 1.0, p1 = 0.0;
    for (int j = 1; j <= n; ++j) {
      const double p2 = p1;
      p1 = p0;
      p0 = ((2.0 * j - 1.0) * x * p1 - (j - 1.0) * p2) / j;
    }
    dp = n * (x * p0 - p1) / (x * x - 1.0);
    const double w = 2.0 / ((1.0 - x * x) * dp * dp);
    nodes[static_cast<std::size_t>(i)] = -x;
    nodes[static_cast<std::size_t>(n - 1 - i)] = x;
    weights[static_cast<std::size_t>(i)] = w;
    weights[static_cast<std::size_t>(n - 1 - i)] = w;
  }
}

QuadratureRule QuadratureRule::product(int degree) {
  if (degree < 0) throw DomainError("quadrature degree must be nonnegative");
  // n Gauss points are exact through degree 2n-1 in cos(theta); the trapezoid
  // with P points is exact for trigonometric degree P-1.
  const int n_theta = degree / 2 + 1;
  const int n_phi = degree + 2;
  std::vector<double> x, w;
  gauss_legendre(n_theta, x, w);

  QuadratureRule rule;
  rule.exact_degree = degree;
  rule.nodes.reserve(static_cast<std::size_t>(n_theta * n_phi));
  rule.weights.reserve(rule.nodes.capacity());
  const double dphi = 2.0 * kPi / n_phi;
  for (int i = 0; i < n_theta; ++i) {
    const double theta = std::acos(x[static_cast<std::size_t>(i)]);
    for (int j = 0; j < n_phi; ++j) {
      rule.nodes.push_back({theta, j * dphi});
      rule.weights.push_back(w[static_cast<std::size_t>(i)] * dphi);
    }
  }
  return rule;
}

double QuadratureRule::total_weight() const {
  double s = 0.0;
  for (double w : weights) s += w;
  return s;
}

double eval_ylm(const HarmonicIndex& idx, const SphericalPoint& p) {
  require_valid(idx);
  const int m = idx.order();
  const double x = std::cos(p.theta);
  const double s = std::sin(p.theta);
  const double plm = legendre_value(idx.k, m, x, s);
  if (m == 0) return plm;
  const double trig = idx.is_sine() ? std::sin(m * p.phi) : std::cos(m * p.phi);
  return std::numbers::sqrt2 * plm * trig;
}

void eval_all_ylm(int kmax, const SphericalPoint& p, std::span<double> out) {
  if (kmax < 0) throw DomainError("kmax must be nonnegative");
  const auto needed = static_cast<std::size_t>((kmax + 1) * (kmax + 1));
  if (out.size() < needed) throw DomainError("output span too small for eval_all_ylm");
  const double x = std::cos(p.theta);
  const double s = std::sin(p.theta);
  std::vector<double> col;
  for (int m = 0; m <= kmax; ++m) {
    normalized_legendre_column(m, kmax, x, s, col);
    const double c = std::cos(m * p.phi);
    const double sn = std::sin(m * p.phi);
    for (int k = m; k <= kmax; ++k) {
      if (m == 0) {
        out[static_cast<std::size_t>(k * k)] = col[k];
      } else {
        out[static_cast<std::size_t>(k * k + 2 * m - 1)] = std::numbers::sqrt2 * col[k] * c;
        out[static_cast<std::size_t>(k * k + 2 * m)] = std::numbers::sqrt2 * col[k] * sn;
      }
    }
  }
}

YlmGradient eval_ylm_gradient(const HarmonicIndex& idx, const SphericalPoint& p) {
  require_valid(idx);
  const int k = idx.k;
  const int m = idx.order();
  const double x = std::cos(p.theta);
  const double s = std::sin(p.theta);
  if (!(std::abs(s) > 0.0)) throw DomainError("surface gradient is not evaluated at the poles");

  std::vector<double> col;
  normalized_legendre_column(m, k, x, s, col);
  const double pk = col[k];
  const double pk1 = (k - 1 >= m) ? col[k - 1] : 0.0;
  // sin(t) dPbar_k^m/dt = k x Pbar_k^m - sqrt((2k+1)(k^2-m^2)/(2k-1)) Pbar_{k-1}^m
  const double coupling =
      k > 0 ? std::sqrt((2.0 * k + 1.0) * (static_cast<double>(k) * k - static_cast<double>(m) * m) / (2.0 * k - 1.0))
            : 0.0;
  const double dpk = (k * x * pk - coupling * pk1) / s;

  YlmGradient g;
  if (m == 0) {
    g.value = pk;
    g.d_theta = dpk;
    return g;
  }
  const double c = std::cos(m * p.phi);
  const double sn = std::sin(m * p.phi);
  const double trig = idx.is_sine() ? sn : c;
  const double dtrig = idx.is_sine() ? m * c : -m * sn;
  g.value = std::numbers::sqrt2 * pk * trig;
  g.d_theta = std::numbers::sqrt2 * dpk * trig;
  g.d_phi_over_sin = std::numbers::sqrt2 * pk * dtrig / s;
  return g;
}

HarmonicExpansion expand(const std::function<double(const SphericalPoint&)>& f,
                         const QuadratureRule& rule, int kmax) {
  if (kmax < 0) throw DomainError("kmax must be nonnegative");
  if (2 * kmax > rule.exact_degree) {
    throw ConfigError(fmt::format("quadrature rule exact to degree {} cannot resolve kmax={} (needs {})",
                                  rule.exact_degree, kmax, 2 * kmax));
  }
  const auto n = static_cast<std::size_t>((kmax + 1) * (kmax + 1));
  std::vector<double> acc(n, 0.0), ylm(n);
  for (std::size_t q = 0; q < rule.nodes.size(); ++q) {
    const double fw = f(rule.nodes[q]) * rule.weights[q];
    if (fw == 0.0) continue;
    eval_all_ylm(kmax, rule.nodes[q], ylm);
    for (std::size_t i = 0; i < n; ++i) acc[i] += fw * ylm[i];
  }
  HarmonicExpansion out;
  for (int k = 0; k <= kmax; ++k) {
    for (int l = 1; l <= 2 * k + 1; ++l) {
      out.set({k, l}, acc[static_cast<std::size_t>(k * k + l - 1)]);
    }
  }
  return out;
}

double synthesize(const HarmonicExpansion& expansion, const SphericalPoint& p) {
  if (expansion.empty()) return 0.0;
  const int kmax = expansion.max_degree();
  std::vector<double> ylm(static_cast<std::size_t>((kmax + 1) * (kmax + 1)));
  eval_all_ylm(kmax, p, ylm);
  double s = 0.0;
  for (const auto& [idx, c] : expansion) s += c * ylm[static_cast<std::size_t>(idx.flat())];
  return s;
}

double dirichlet_energy(const HarmonicIndex& idx, const QuadratureRule& rule) {
  require_valid(idx);
  if (rule.exact_degree < 2 * idx.k) {
    throw ConfigError(fmt::format("quadrature rule exact to degree {} too coarse for |grad Y_k|^2 with k={}",
                                  rule.exact_degree, idx.k));
  }
  double s = 0.0;
  for (std::size_t q = 0; q < rule.nodes.size(); ++q) {
    const auto g = eval_ylm_gradient(idx, rule.nodes[q]);
    s += rule.weights[q] * (g.d_theta * g.d_theta + g.d_phi_over_sin * g.d_phi_over_sin);
  }
  return s;
}

}  // namespace necrostab::harmonics
