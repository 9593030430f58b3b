#pragma once

// Internal numerical plumbing shared by the radial, modes and dynamics modules.

#include <cmath>
#include <cstdint>
#include <functional>
#include <string>
#include <vector>

namespace necrostab::detail {

/// Bracketed root of f on [lo, hi] (TOMS 748, Brent-style hybrid), converged to
/// machine precision. Throws SolverError naming `stage` if f(lo), f(hi) have the
/// same sign or the iteration budget is exhausted.
double find_root(const std::function<double(double)>& f, double lo, double hi, const std::string& stage);

/// Adaptive Gauss-Kronrod (31-point) integral of f over [a, b].
double integrate(const std::function<double(double)>& f, double a, double b, double rel_tol = 1e-13);

/// Piecewise quintic Hermite interpolant through (x_i, y_i, y'_i, y''_i).
class QuinticHermite {
 public:
  void push(double x, double y, double dy, double d2y);
  std::size_t size() const noexcept { return x_.size(); }
  double front_x() const { return x_.front(); }
  double back_x() const { return x_.back(); }

  struct Value {
    double y;
    double dy;
  };
  Value eval(double x) const;

  /// Multiply every stored ordinate from index `first` on by `factor`.
  void scale_from(std::size_t first, double factor);

 private:
  std::size_t locate(double x) const;
  std::vector<double> x_, y_, dy_, d2y_;
};

/// Worker count from NECROSTAB_THREADS, else hardware concurrency (at least 1).
unsigned worker_count();

/// Runs body(i) for i in [0, n). Each index is handled by exactly one worker;
/// results must be written to preassigned slots so output order never depends
/// on scheduling.
void parallel_for(std::size_t n, const std::function<void(std::size_t)>& body);

/// Taylor-safe sinh(r)/r and its derivative.
double sinhc(double r);
double sinhc_prime(double r);

}  // namespace necrostab::detail
