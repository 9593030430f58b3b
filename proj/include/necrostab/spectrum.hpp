#pragma once

// Spectrum of the linearized tumor operator around the stationary ball,
// surface-tension thresholds, the Hele-Shaw multipliers and the annulus
// Dirichlet-Neumann multiplier.
//
// On degree-k harmonics the linearization acts as multiplication by
//   a_k(gamma) = -gamma k(k-1)(k+2) / (2 R_s^2) - a R_s sigma_s'(R_s) vbar_k'(R_s) + g(1) R_s
//              = -k(k-1)(k+2) (gamma - gamma_k) / (2 R_s^2),   k >= 2.

#include <string_view>
#include <vector>

#include <boost/rational.hpp>

#include "necrostab/harmonics.hpp"
#include "necrostab/modes.hpp"

namespace necrostab::spectrum {

using radial::ModelParams;
using radial::RadialStationary;

/// a_k(gamma) from one solved mode.
double eigenvalue_ak(const modes::ModeSolution& mode, double gamma, const RadialStationary& stat);
/// Factored form -k(k-1)(k+2)(gamma - gamma_k)/(2 R_s^2); k >= 2.
double eigenvalue_ak_factored(const modes::ModeSolution& mode, double gamma, const RadialStationary& stat);

/// Neutral surface tension of degree k >= 2. DomainError for k < 2.
double gamma_k(const modes::ModeSolution& mode, const RadialStationary& stat);

/// 2 R_s^3 g(1) / (k(k-1)(k+2)): a strict upper bound for gamma_k since vbar_k'(R_s) > 0.
double gamma_k_bound(int k, const RadialStationary& stat);
/// Leading asymptotic 2 R_s^3 g(1) k^{-3}.
double gamma_k_asymptotic(int k, const RadialStationary& stat);

/// vbar_k'(R_s) for k = 0..kmax, each cross-checked between its two forms.
class ModeSpectrum {
 public:
  ModeSpectrum(const RadialStationary& stat, int kmax);
  /// From already solved modes for k = 0..n-1 (in order).
  ModeSpectrum(const RadialStationary& stat, const std::vector<modes::ModeSolution>& solved);

  const RadialStationary& stationary() const noexcept { return stat_; }
  int kmax() const noexcept { return static_cast<int>(dv_.size()) - 1; }
  double dv_at_rs(int k) const { return dv_.at(static_cast<std::size_t>(k)); }

  double a(int k, double gamma) const;
  double gamma_k(int k) const;
  std::vector<double> a_values(double gamma) const;      // k = 0..kmax
  std::vector<double> gamma_values() const;              // k = 2..kmax

 private:
  RadialStationary stat_;
  std::vector<double> dv_;
};

struct Threshold {
  double gamma_star = 0.0;
  int argmax_k = 2;
  int kmax = 0;          // degree range actually searched
  bool certified = false;
  double tail_bound = 0.0;  // max(2x asymptotic at kmax, strict bound at kmax+1)
};

/// gamma* = max_{k>=2} gamma_k with a tail certificate. When the tail bound does
/// not clear the maximum, kmax is doubled (at most twice); the result is then
/// flagged uncertified rather than thrown.
Threshold gamma_star(const RadialStationary& stat, int kmax);
/// Same, reusing an already solved spectrum (no doubling beyond its kmax).
Threshold gamma_star(const ModeSpectrum& spec);

enum class Stability { StableModuloTranslations, Unstable, Critical };

std::string_view to_string(Stability s) noexcept;

/// Relative half-width of the critical band around gamma*.
inline constexpr double kCriticalBand = 1e-9;

Stability classify(double gamma, double gamma_star) noexcept;

struct SpectrumReport {
  ModelParams params;
  double r_star = 0.0, r_s = 0.0, k_s = 0.0;
  int kmax = 0;
  double gamma = 0.0;
  std::vector<double> a_values;      // k = 0..kmax
  std::vector<double> gamma_values;  // k = 2..kmax
  Threshold threshold;
  Stability classification = Stability::Critical;
  std::vector<int> kernel_degrees;
};

SpectrumReport classify_stability(const ModeSpectrum& spec, const Threshold& threshold, double gamma);
/// Solves modes and the certified threshold, then classifies at gamma.
SpectrumReport spectrum_report(const RadialStationary& stat, double gamma, int kmax);
SpectrumReport spectrum_report(const ModelParams& params, double gamma, int kmax);

using Rational = boost::rational<long long>;

/// mu_k = -k(k-1)(k+n-1)/(n-1), n >= 2.
Rational heleshaw_mu(int k, int n);
/// Multiplier of (1/(n-1)) Delta_omega D + D on degree k, with D the unit-ball
/// Dirichlet-Neumann operator (multiplier k): k(n-1-k(k+n-2))/(n-1).
Rational heleshaw_composition(int k, int n);
/// Dimension of degree-k spherical harmonics on S^{n-1}.
long long harmonic_space_dim(int k, int n);

struct HeleShawSpectrum {
  int n = 3;
  std::vector<Rational> mu_values;  // k = 0..kmax
  long long kernel_dim = 0;         // sum of harmonic_space_dim over degrees with mu_k = 0
};

HeleShawSpectrum heleshaw_spectrum(int n, int kmax);

/// Multiplier (2k+1)/([1-(K/R)^{2k+1}] K) of L = (jump of radial slope across r = K)
/// for the harmonic function equal to zeta on r = K, vanishing on r = R and
/// regular in r < K. Sum of the inner-ball and annulus Dirichlet-Neumann maps.
double dn_annulus_multiplier(int k, double K, double R);

/// c_kl -> a_k(gamma) c_kl. Degrees beyond spec.kmax() raise DomainError.
harmonics::HarmonicExpansion apply_linearized_operator(const harmonics::HarmonicExpansion& xi, double gamma,
                                                       const ModeSpectrum& spec);
/// Convenience form that solves exactly the degrees present in xi.
harmonics::HarmonicExpansion apply_linearized_operator(const harmonics::HarmonicExpansion& xi, double gamma,
                                                       const RadialStationary& stat);

}  // namespace necrostab::spectrum
