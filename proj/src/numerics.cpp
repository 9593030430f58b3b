#include "numerics.hpp"

#include <algorithm>
#include <atomic>
#include <cstdlib>
#include <exception>
#include <mutex>
#include <thread>

#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <boost/math/tools/roots.hpp>
#include <fmt/format.h>

#include "necrostab/error.hpp"

namespace necrostab::detail {

double find_root(const std::function<double(double)>& f, double lo, double hi, const std::string& stage) {
  const double flo = f(lo);
  const double fhi = f(hi);
  if (flo == 0.0) return lo;
  if (fhi == 0.0) return hi;
  if (!std::isfinite(flo) || !std::isfinite(fhi) || std::signbit(flo) == std::signbit(fhi)) {
    throw SolverError(stage, fmt::format("root not bracketed on [{}, {}] (f = {}, {})", lo, hi, flo, fhi));
  }
  std::uintmax_t max_iter = 200;
  const auto tol = boost::math::tools::eps_tolerance<double>(std::numeric_limits<double>::digits - 1);
  const auto [a, b] = boost::math::tools::toms748_solve(f, lo, hi, flo, fhi, tol, max_iter);
  if (max_iter >= 200) throw SolverError(stage, "root iteration did not converge");
  return 0.5 * (a + b);
}

double integrate(const std::function<double(double)>& f, double a, double b, double rel_tol) {
  if (a == b) return 0.0;
  return boost::math::quadrature::gauss_kronrod<double, 31>::integrate(f, a, b, 15, rel_tol);
}

void QuinticHermite::push(double x, double y, double dy, double d2y) {
  if (!x_.empty() && !(x > x_.back())) throw SolverError("interpolation", "knots must increase");
  x_.push_back(x);
  y_.push_back(y);
  dy_.push_back(dy);
  d2y_.push_back(d2y);
}

void QuinticHermite::scale_from(std::size_t first, double factor) {
  for (std::size_t i = first; i < x_.size(); ++i) {
    y_[i] *= factor;
    dy_[i] *= factor;
    d2y_[i] *= factor;
  }
}

std::size_t QuinticHermite::locate(double x) const {
  const auto it = std::upper_bound(x_.begin(), x_.end(), x);
  if (it == x_.begin()) return 0;
  const auto i = static_cast<std::size_t>(it - x_.begin()) - 1;
  return std::min(i, x_.size() - 2);
}

QuinticHermite::Value QuinticHermite::eval(double x) const {
  if (x_.size() < 2) throw SolverError("interpolation", "need at least two knots");
  const std::size_t i = locate(x);
  const double h = x_[i + 1] - x_[i];
  const double t = (x - x_[i]) / h;
  const double t2 = t * t, t3 = t2 * t, t4 = t3 * t, t5 = t4 * t;

  // quintic Hermite basis on [0,1] and its derivative
  const double h00 = 1 - 10 * t3 + 15 * t4 - 6 * t5;
  const double h01 = 10 * t3 - 15 * t4 + 6 * t5;
  const double h10 = t - 6 * t3 + 8 * t4 - 3 * t5;
  const double h11 = -4 * t3 + 7 * t4 - 3 * t5;
  const double h20 = 0.5 * (t2 - 3 * t3 + 3 * t4 - t5);
  const double h21 = 0.5 * (t3 - 2 * t4 + t5);

  const double d00 = -30 * t2 + 60 * t3 - 30 * t4;
  const double d01 = -d00;
  const double d10 = 1 - 18 * t2 + 32 * t3 - 15 * t4;
  const double d11 = -12 * t2 + 28 * t3 - 15 * t4;
  const double d20 = 0.5 * (2 * t - 9 * t2 + 12 * t3 - 5 * t4);
  const double d21 = 0.5 * (3 * t2 - 8 * t3 + 5 * t4);

  const double y = h00 * y_[i] + h01 * y_[i + 1] + h * (h10 * dy_[i] + h11 * dy_[i + 1]) +
                   h * h * (h20 * d2y_[i] + h21 * d2y_[i + 1]);
  const double dy = (d00 * y_[i] + d01 * y_[i + 1]) / h + (d10 * dy_[i] + d11 * dy_[i + 1]) +
                    h * (d20 * d2y_[i] + d21 * d2y_[i + 1]);
  return {y, dy};
}

unsigned worker_count() {
  if (const char* env = std::getenv("NECROSTAB_THREADS")) {
    const int n = std::atoi(env);
    if (n >= 1) return static_cast<unsigned>(n);
  }
  return std::max(1u, std::thread::hardware_concurrency());
}

void parallel_for(std::size_t n, const std::function<void(std::size_t)>& body) {
  const unsigned workers = static_cast<unsigned>(std::min<std::size_t>(worker_count(), n));
  if (workers <= 1) {
    for (std::size_t i = 0; i < n; ++i) body(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::exception_ptr first_error;
  std::mutex error_mutex;
  {
    std::vector<std::jthread> pool;
    pool.reserve(workers);
    for (unsigned w = 0; w < workers; ++w) {
      pool.emplace_back([&] {
        for (std::size_t i = next++; i < n; i = next++) {
          try {
            body(i);
          } catch (...) {
            std::lock_guard lock(error_mutex);
            if (!first_error) first_error = std::current_exception();
          }
        }
      });
    }
  }
  if (first_error) std::rethrow_exception(first_error);
}

double sinhc(double r) {
  if (std::abs(r) < 1e-4) {
    const double r2 = r * r;
    return 1.0 + r2 / 6.0 * (1.0 + r2 / 20.0 * (1.0 + r2 / 42.0));
  }
  return std::sinh(r) / r;
}

double sinhc_prime(double r) {
  if (std::abs(r) < 1e-4) {
    const double r2 = r * r;
    return r / 3.0 * (1.0 + r2 / 10.0 * (1.0 + r2 / 28.0 * (1.0 + r2 / 54.0)));
  }
  return (r * std::cosh(r) - std::sinh(r)) / (r * r);
}

}  // namespace necrostab::detail
