#include "necrostab/spectrum.hpp"

#include <algorithm>
#include <cmath>
#include <optional>
#include <set>

#include <fmt/format.h>

#include "necrostab/error.hpp"
#include "numerics.hpp"

namespace necrostab::spectrum {

namespace {

double cubic_factor(int k) { return static_cast<double>(k) * (k - 1) * (k + 2); }

double surface_slope(const RadialStationary& stat) { return stat.sigma(stat.r_s).derivative; }

double ak_from_slope(int k, double dv, double gamma, const RadialStationary& stat) {
  const auto& p = stat.params;
  const double R = stat.r_s;
  return -gamma * cubic_factor(k) / (2.0 * R * R) - p.a * R * surface_slope(stat) * dv + p.g1 * R;
}

double gamma_from_slope(int k, double dv, const RadialStationary& stat) {
  if (k < 2) throw DomainError(fmt::format("gamma_k is defined for k >= 2, got k={}", k));
  const auto& p = stat.params;
  const double R = stat.r_s;
  return 2.0 * R * R * R / cubic_factor(k) * (p.g1 - p.a * surface_slope(stat) * dv);
}

// |a_1| counts as zero at this scale; it vanishes identically in exact arithmetic.
double neutral_tolerance(double a0) { return 1e-7 * std::max(1.0, std::abs(a0)); }

}  // namespace

double eigenvalue_ak(const modes::ModeSolution& mode, double gamma, const RadialStationary& stat) {
  return ak_from_slope(mode.k(), modes::v_mode_slope(mode, stat), gamma, stat);
}

double eigenvalue_ak_factored(const modes::ModeSolution& mode, double gamma, const RadialStationary& stat) {
  const double R = stat.r_s;
  return -cubic_factor(mode.k()) * (gamma - gamma_k(mode, stat)) / (2.0 * R * R);
}

double gamma_k(const modes::ModeSolution& mode, const RadialStationary& stat) {
  if (mode.k() < 2) throw DomainError(fmt::format("gamma_k is defined for k >= 2, got k={}", mode.k()));
  return gamma_from_slope(mode.k(), modes::v_mode_slope(mode, stat), stat);
}

double gamma_k_bound(int k, const RadialStationary& stat) {
  if (k < 2) throw DomainError(fmt::format("gamma_k is defined for k >= 2, got k={}", k));
  return 2.0 * std::pow(stat.r_s, 3) * stat.params.g1 / cubic_factor(k);
}

double gamma_k_asymptotic(int k, const RadialStationary& stat) {
  return 2.0 * std::pow(stat.r_s, 3) * stat.params.g1 / std::pow(static_cast<double>(k), 3);
}

ModeSpectrum::ModeSpectrum(const RadialStationary& stat, int kmax) : stat_(stat) {
  if (kmax < 1) throw DomainError(fmt::format("kmax={} must be at least 1", kmax));
  dv_.resize(static_cast<std::size_t>(kmax) + 1);
  detail::parallel_for(dv_.size(), [&](std::size_t k) {
    const auto mode = modes::solve_u_mode(static_cast<int>(k), stat_);
    dv_[k] = modes::v_mode_slope(mode, stat_);
  });
}

ModeSpectrum::ModeSpectrum(const RadialStationary& stat, const std::vector<modes::ModeSolution>& solved)
    : stat_(stat) {
  if (solved.size() < 2) throw DomainError("need solved modes for at least k = 0, 1");
  for (std::size_t k = 0; k < solved.size(); ++k) {
    if (solved[k].k() != static_cast<int>(k)) throw DomainError("solved modes must be ordered k = 0, 1, ...");
    dv_.push_back(modes::v_mode_slope(solved[k], stat_));
  }
}

double ModeSpectrum::a(int k, double gamma) const { return ak_from_slope(k, dv_at_rs(k), gamma, stat_); }

double ModeSpectrum::gamma_k(int k) const { return gamma_from_slope(k, dv_at_rs(k), stat_); }

std::vector<double> ModeSpectrum::a_values(double gamma) const {
  std::vector<double> out;
  out.reserve(dv_.size());
  for (int k = 0; k <= kmax(); ++k) out.push_back(a(k, gamma));
  return out;
}

std::vector<double> ModeSpectrum::gamma_values() const {
  std::vector<double> out;
  for (int k = 2; k <= kmax(); ++k) out.push_back(gamma_k(k));
  return out;
}

Threshold gamma_star(const ModeSpectrum& spec) {
  if (spec.kmax() < 2) throw DomainError("gamma* needs kmax >= 2");
  Threshold t;
  t.kmax = spec.kmax();
  t.gamma_star = -1.0;
  for (int k = 2; k <= spec.kmax(); ++k) {
    const double g = spec.gamma_k(k);
    if (g > t.gamma_star) {
      t.gamma_star = g;
      t.argmax_k = k;
    }
  }
  const auto& stat = spec.stationary();
  t.tail_bound = std::max(2.0 * gamma_k_asymptotic(t.kmax, stat), gamma_k_bound(t.kmax + 1, stat));
  t.certified = t.tail_bound < t.gamma_star;
  return t;
}

Threshold gamma_star(const RadialStationary& stat, int kmax) {
  if (kmax < 2) throw DomainError(fmt::format("kmax={} must be at least 2", kmax));
  Threshold t;
  for (int attempt = 0; attempt < 3; ++attempt, kmax *= 2) {
    t = gamma_star(ModeSpectrum(stat, kmax));
    if (t.certified) break;
  }
  return t;
}

std::string_view to_string(Stability s) noexcept {
  switch (s) {
    case Stability::StableModuloTranslations:
      return "stable-modulo-translations";
    case Stability::Unstable:
      return "unstable";
    case Stability::Critical:
      return "critical";
  }
  return "critical";
}

Stability classify(double gamma, double gamma_star) noexcept {
  if (std::abs(gamma - gamma_star) <= kCriticalBand * gamma_star) return Stability::Critical;
  return gamma > gamma_star ? Stability::StableModuloTranslations : Stability::Unstable;
}

SpectrumReport classify_stability(const ModeSpectrum& spec, const Threshold& threshold, double gamma) {
  const auto& stat = spec.stationary();
  SpectrumReport r;
  r.params = stat.params;
  r.params.gamma = gamma;
  r.r_star = stat.r_star;
  r.r_s = stat.r_s;
  r.k_s = stat.k_s;
  r.kmax = spec.kmax();
  r.gamma = gamma;
  r.a_values = spec.a_values(gamma);
  r.gamma_values = spec.gamma_values();
  r.threshold = threshold;
  r.classification = classify(gamma, threshold.gamma_star);

  const double tol = neutral_tolerance(r.a_values[0]);
  for (int k = 0; k <= 1; ++k) {
    if (std::abs(r.a_values[static_cast<std::size_t>(k)]) <= tol) r.kernel_degrees.push_back(k);
  }
  for (int k = 2; k <= r.kmax; ++k) {
    const double gk = r.gamma_values[static_cast<std::size_t>(k - 2)];
    if (std::abs(gamma - gk) <= kCriticalBand * gk) r.kernel_degrees.push_back(k);
  }
  return r;
}

SpectrumReport spectrum_report(const RadialStationary& stat, double gamma, int kmax) {
  if (!(gamma > 0.0) || !std::isfinite(gamma)) throw ConfigError(fmt::format("invalid gamma={}: need gamma > 0", gamma));
  if (kmax < 2) throw ConfigError(fmt::format("invalid kmax={}: need kmax >= 2", kmax));
  Threshold t;
  std::optional<ModeSpectrum> spec;
  for (int attempt = 0; attempt < 3; ++attempt, kmax *= 2) {
    spec.emplace(stat, kmax);
    t = gamma_star(*spec);
    if (t.certified) break;
  }
  return classify_stability(*spec, t, gamma);
}

SpectrumReport spectrum_report(const ModelParams& params, double gamma, int kmax) {
  return spectrum_report(radial::solve_stationary_radius(params), gamma, kmax);
}

Rational heleshaw_mu(int k, int n) {
  if (k < 0 || n < 2) throw DomainError(fmt::format("heleshaw_mu needs k >= 0, n >= 2 (k={}, n={})", k, n));
  const long long kk = k, nn = n;
  return Rational(-kk * (kk - 1) * (kk + nn - 1), nn - 1);
}

Rational heleshaw_composition(int k, int n) {
  if (k < 0 || n < 2) throw DomainError(fmt::format("heleshaw_composition needs k >= 0, n >= 2 (k={}, n={})", k, n));
  const long long kk = k, nn = n;
  const Rational dn(kk);                      // Dirichlet-Neumann on the unit ball
  const Rational laplace(-kk * (kk + nn - 2));  // Laplace-Beltrami on S^{n-1}
  return Rational(1, nn - 1) * laplace * dn + dn;
}

long long harmonic_space_dim(int k, int n) {
  if (k < 0 || n < 2) throw DomainError("harmonic_space_dim needs k >= 0, n >= 2");
  const auto binom = [](long long top, long long bottom) -> long long {
    if (top < bottom || top < 0) return 0;
    long long r = 1;
    for (long long i = 1; i <= bottom; ++i) r = r * (top - bottom + i) / i;
    return r;
  };
  return binom(k + n - 1, n - 1) - binom(k + n - 3, n - 1);
}

HeleShawSpectrum heleshaw_spectrum(int n, int kmax) {
  if (n < 2) throw DomainError(fmt::format("dimension n={} must be at least 2", n));
  if (kmax < 0) throw DomainError("kmax must be nonnegative");
  HeleShawSpectrum s;
  s.n = n;
  for (int k = 0; k <= kmax; ++k) {
    s.mu_values.push_back(heleshaw_mu(k, n));
    if (s.mu_values.back() == Rational(0)) s.kernel_dim += harmonic_space_dim(k, n);
  }
  return s;
}

double dn_annulus_multiplier(int k, double K, double R) {
  if (k < 0) throw DomainError(fmt::format("degree k={} must be nonnegative", k));
  if (!(K > 0.0 && K < R)) throw DomainError(fmt::format("annulus needs 0 < K < R (K={}, R={})", K, R));
  const double ratio = std::pow(K / R, 2 * k + 1);
  return (2 * k + 1) / ((1.0 - ratio) * K);
}

harmonics::HarmonicExpansion apply_linearized_operator(const harmonics::HarmonicExpansion& xi, double gamma,
                                                       const ModeSpectrum& spec) {
  if (xi.max_degree() > spec.kmax()) {
    throw DomainError(fmt::format("expansion degree {} exceeds solved kmax {}", xi.max_degree(), spec.kmax()));
  }
  harmonics::HarmonicExpansion out;
  for (const auto& [idx, c] : xi) out.set(idx, spec.a(idx.k, gamma) * c);
  return out;
}

harmonics::HarmonicExpansion apply_linearized_operator(const harmonics::HarmonicExpansion& xi, double gamma,
                                                       const RadialStationary& stat) {
  std::set<int> degrees;
  for (const auto& [idx, c] : xi) degrees.insert(idx.k);
  const std::vector<int> ks(degrees.begin(), degrees.end());
  std::vector<double> factor(ks.size());
  detail::parallel_for(ks.size(), [&](std::size_t i) {
    factor[i] = eigenvalue_ak(modes::solve_u_mode(ks[i], stat), gamma, stat);
  });
  harmonics::HarmonicExpansion out;
  for (const auto& [idx, c] : xi) {
    const auto pos = std::lower_bound(ks.begin(), ks.end(), idx.k) - ks.begin();
    out.set(idx, factor[static_cast<std::size_t>(pos)] * c);
  }
  return out;
}

}  // namespace necrostab::spectrum
