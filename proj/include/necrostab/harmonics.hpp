#pragma once

// Real orthonormal spherical harmonics on S^2.
//
// Basis convention. Degree k carries 2k+1 functions indexed l = 1..2k+1:
//   l = 1        zonal      Y = Nbar_k0 P_k(cos t)
//   l = 2m       (m >= 1)   Y = sqrt(2) Nbar_km P_k^m(cos t) cos(m p)
//   l = 2m + 1   (m >= 1)   Y = sqrt(2) Nbar_km P_k^m(cos t) sin(m p)
// with no Condon-Shortley phase. Every operator in this library is
// degree-diagonal, so the ordering inside a degree is immaterial.

#include <compare>
#include <functional>
#include <map>
#include <span>
#include <vector>

namespace necrostab::harmonics {

struct HarmonicIndex {
  int k = 0;
  int l = 1;

  constexpr auto operator<=>(const HarmonicIndex&) const = default;

  bool valid() const noexcept { return k >= 0 && l >= 1 && l <= 2 * k + 1; }
  /// Order m >= 0 and whether this is the sine member of the (cos, sin) pair.
  int order() const noexcept { return l / 2; }
  bool is_sine() const noexcept { return l > 1 && (l % 2) == 1; }
  /// Position in the flat layout k^2 + (l-1) used by eval_all_ylm.
  int flat() const noexcept { return k * k + (l - 1); }
};

/// Throws DomainError when the index is out of range.
void require_valid(const HarmonicIndex& idx);

/// Polar angle theta in [0, pi], azimuth phi.
struct SphericalPoint {
  double theta = 0.0;
  double phi = 0.0;

  static SphericalPoint from_cartesian(double x, double y, double z);
};

class HarmonicExpansion {
 public:
  using Map = std::map<HarmonicIndex, double>;

  HarmonicExpansion() = default;

  void set(const HarmonicIndex& idx, double c);
  void add(const HarmonicIndex& idx, double c);
  double get(const HarmonicIndex& idx) const;
  bool empty() const noexcept { return coefficients_.empty(); }
  std::size_t size() const noexcept { return coefficients_.size(); }
  int max_degree() const noexcept { return max_degree_; }
  const Map& coefficients() const noexcept { return coefficients_; }

  auto begin() const { return coefficients_.begin(); }
  auto end() const { return coefficients_.end(); }

  HarmonicExpansion scaled(double alpha) const;
  friend HarmonicExpansion operator+(const HarmonicExpansion& x, const HarmonicExpansion& y);

 private:
  Map coefficients_;
  int max_degree_ = -1;
};

/// Product rule: Gauss-Legendre in cos(theta) times the periodic trapezoid in phi.
/// Integrates every spherical polynomial of degree <= exact_degree exactly.
struct QuadratureRule {
  std::vector<SphericalPoint> nodes;
  std::vector<double> weights;
  int exact_degree = 0;

  /// Smallest product rule exact through `degree`.
  static QuadratureRule product(int degree);
  double total_weight() const;
};

/// Gauss-Legendre nodes and weights on [-1, 1], ascending nodes.
void gauss_legendre(int n, std::vector<double>& nodes, std::vector<double>& weights);

double eval_ylm(const HarmonicIndex& idx, const SphericalPoint& p);

/// All harmonics of degree <= kmax at p, stored at HarmonicIndex::flat().
void eval_all_ylm(int kmax, const SphericalPoint& p, std::span<double> out);

struct YlmGradient {
  double value = 0.0;
  double d_theta = 0.0;
  double d_phi_over_sin = 0.0;  // (1/sin t) dY/dphi, the azimuthal gradient component
};

/// Value and surface gradient. Undefined exactly at the poles.
YlmGradient eval_ylm_gradient(const HarmonicIndex& idx, const SphericalPoint& p);

HarmonicExpansion expand(const std::function<double(const SphericalPoint&)>& f,
                         const QuadratureRule& rule, int kmax);

double synthesize(const HarmonicExpansion& expansion, const SphericalPoint& p);

/// Integral of |grad Y|^2 over S^2; equals k(k+1).
double dirichlet_energy(const HarmonicIndex& idx, const QuadratureRule& rule);

/// Laplace-Beltrami eigenvalue k(k+1) on S^2.
constexpr double lambda(int k) { return static_cast<double>(k) * (k + 1); }

}  // namespace necrostab::harmonics
