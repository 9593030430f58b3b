#include "necrostab/modes.hpp"

#include <algorithm>
#include <array>
#include <cmath>

#include <fmt/format.h>

#include "necrostab/error.hpp"
#include "numerics.hpp"
#include "ode.hpp"

namespace necrostab::modes {

using detail::QuinticHermite;

namespace {

// The shooting state is renormalized whenever it grows past this bound so
// that (R_s/K_s)^{k+1} growth never overflows for large k.
constexpr double kRescaleThreshold = 1e150;
const double kLogRescale = std::log(kRescaleThreshold);

constexpr double kVSlopeTolerance = 1e-7;

detail::StepControl mode_step_control(double span) {
  detail::StepControl ctl;
  ctl.abs_tol = 1e-15;
  ctl.rel_tol = 1e-13;
  ctl.initial_step = span * 1e-4;
  return ctl;
}

}  // namespace

struct ModeSolution::Segment {
  QuinticHermite z;  // knots carry (z, z', z'') mantissas
  double log_norm = 0.0;  // true normalized z = mantissa * exp(log_norm)
  double r_begin = 0.0, r_end = 0.0;
};

ModeSolution::Eval ModeSolution::eval(double r) const {
  if (!(r >= k_s_ && r <= r_s_)) {
    throw DomainError(fmt::format("r={} outside the living shell [{}, {}]", r, k_s_, r_s_));
  }
  const auto& segs = *segments_;
  auto it = std::find_if(segs.begin(), segs.end(), [r](const Segment& s) { return r <= s.r_end; });
  if (it == segs.end()) it = std::prev(segs.end());
  const auto v = it->z.eval(r);
  return {v.y, v.dy, it->log_norm};
}

double ModeSolution::u(double r) const {
  if (r == r_s_) return 1.0;
  if (r == k_s_) return 0.0;
  const auto e = eval(r);
  return e.zm * std::exp(e.log_scale + (k_ + 1) * std::log(r_s_ / r));
}

double ModeSolution::du(double r) const {
  if (r == r_s_) return du_at_rs_;
  if (r == k_s_) return du_at_k_;
  const auto e = eval(r);
  return (e.dzm - (k_ + 1) * e.zm / r) * std::exp(e.log_scale + (k_ + 1) * std::log(r_s_ / r));
}

double ModeSolution::z(double r) const {
  if (r == r_s_) return 1.0;
  const auto e = eval(r);
  return e.zm * std::exp(e.log_scale);
}

ModeSolution solve_u_mode(int k, const RadialStationary& stat) {
  if (k < 0) throw DomainError(fmt::format("mode degree k={} must be nonnegative", k));
  const double K = stat.k_s, R = stat.r_s;
  const double kk1 = static_cast<double>(k) * (k + 1);
  const double log_kr = std::log(K / R);

  // state: z, z', w = integral_K^r z(t) (t/R)^{k+1} dt
  using State = std::array<double, 3>;
  const auto rhs = [&](const State& x, State& dxdr, double r) {
    dxdr[0] = x[1];
    dxdr[1] = (kk1 / (r * r) + 1.0) * x[0];
    dxdr[2] = x[0] * std::exp((k + 1) * std::log(r / R));
  };

  auto segments = std::make_shared<std::vector<ModeSolution::Segment>>();
  std::vector<double> raw_log_offset;  // cumulative rescaling per segment
  segments->emplace_back();
  segments->back().r_begin = K;
  raw_log_offset.push_back(0.0);

  const auto on_step = [&](double r, State& x) {
    auto* seg = &segments->back();
    seg->z.push(r, x[0], x[1], (kk1 / (r * r) + 1.0) * x[0]);
    seg->r_end = r;
    if (std::max({std::abs(x[0]), std::abs(x[1]), std::abs(x[2])}) > kRescaleThreshold) {
      for (double& v : x) v /= kRescaleThreshold;
      const double offset = raw_log_offset.back() + kLogRescale;
      segments->emplace_back();
      seg = &segments->back();
      seg->r_begin = r;
      raw_log_offset.push_back(offset);
      seg->z.push(r, x[0], x[1], (kk1 / (r * r) + 1.0) * x[0]);
      seg->r_end = r;
    }
  };

  // Shooting on the initial slope s: z(R; s) is linear in s with z(R; 0) = 0,
  // so the secant through s = 0 and the unit shot s = 1 is exact.
  State x{0.0, 1.0, 0.0};
  const std::size_t steps =
      detail::integrate_to<3>(rhs, x, K, R, mode_step_control(R - K), on_step, fmt::format("mode k={} shooting", k));
  if (segments->back().z.size() < 2) segments->pop_back(), raw_log_offset.pop_back();

  const double z_end = x[0];
  if (!(z_end > 0.0) || !std::isfinite(z_end)) {
    throw SolverError(fmt::format("mode k={} shooting", k), "unit shot did not produce a positive end value");
  }
  const double log_final = raw_log_offset.back() + std::log(z_end);
  for (std::size_t i = 0; i < segments->size(); ++i) (*segments)[i].log_norm = raw_log_offset[i] - log_final;

  ModeSolution m;
  m.k_ = k;
  m.k_s_ = K;
  m.r_s_ = R;
  m.steps_ = steps;
  const double first_log_norm = segments->front().log_norm;
  m.du_at_k_ = std::exp(first_log_norm - (k + 1) * log_kr);  // z'(K) mantissa = 1
  m.du_at_rs_ = x[1] / z_end - (k + 1) / R;
  m.flux_integral_ = x[2] / z_end;
  const auto& p = stat.params;
  const double jump = (p.sigma_hat - p.sigma_tilde) / p.sigma_hat;
  // ubar'(K) (K/R)^{2(k+1)} = exp(first_log_norm + (k+1) log(K/R))
  m.dv_at_rs_ = jump * std::exp(first_log_norm + (k + 1) * log_kr) + m.flux_integral_;
  m.segments_ = std::move(segments);
  return m;
}

std::vector<ModeSolution> solve_u_modes(int kmax, const RadialStationary& stat) {
  if (kmax < 0) throw DomainError("kmax must be nonnegative");
  std::vector<ModeSolution> out(static_cast<std::size_t>(kmax + 1));
  detail::parallel_for(out.size(), [&](std::size_t i) { out[i] = solve_u_mode(static_cast<int>(i), stat); });
  return out;
}

double u1_closed_form(double r, const RadialStationary& stat) {
  if (!(r >= stat.k_s && r <= stat.r_s)) throw DomainError(fmt::format("r={} outside [K_s, R_s]", r));
  const double ds_r = stat.sigma(r).derivative;
  const double ds_rs = stat.sigma(stat.r_s).derivative;
  return stat.r_s * ds_r / (r * ds_rs);
}

double VSlopeForms::relative_gap() const {
  return std::abs(primary - rewritten) / std::max(std::abs(primary), std::abs(rewritten));
}

VSlopeForms v_slope_forms(const ModeSolution& mode, const RadialStationary& stat) {
  const auto& p = stat.params;
  const double jump = (p.sigma_hat - p.sigma_tilde) / p.sigma_hat;
  return {mode.dv_at_rs(), jump * mode.du_at_rs() + (p.sigma_tilde / p.sigma_hat) * mode.flux_integral()};
}

double v_mode_slope(const ModeSolution& mode, const RadialStationary& stat) {
  const auto forms = v_slope_forms(mode, stat);
  if (!(forms.relative_gap() <= kVSlopeTolerance)) {
    throw ConsistencyError(fmt::format("vbar_{}'(R_s): flux form {} and rewritten form {} differ by {:.3e} relative",
                                       mode.k(), forms.primary, forms.rewritten, forms.relative_gap()));
  }
  return forms.primary;
}

double v1_closed_form(double r, const RadialStationary& stat) {
  if (!(r >= stat.k_s && r <= stat.r_s)) throw DomainError(fmt::format("r={} outside [K_s, R_s]", r));
  const double ds_rs = stat.sigma(stat.r_s).derivative;
  if (r == stat.r_s) return 0.0;
  return -stat.r_s * stat.pi0(r).derivative / (stat.params.a * r * ds_rs);
}

double v1_closed_form_derivative(double r, const RadialStationary& stat) {
  if (!(r >= stat.k_s && r <= stat.r_s)) throw DomainError(fmt::format("r={} outside [K_s, R_s]", r));
  const auto& p = stat.params;
  const double ds_rs = stat.sigma(stat.r_s).derivative;
  // living-side value of g: the Heaviside factor is 1 on [K_s, R_s] as a limit
  const double g_living = p.a * (stat.sigma(r).value - p.sigma_tilde) - p.b;
  return stat.r_s / (p.a * ds_rs) * (3.0 * stat.pi0(r).derivative / (r * r) + g_living / r);
}

double VModeProfile::v(double r) const {
  if (r < k_s_) return core_value_;
  if (r == r_s_) return 0.0;
  return profile_->eval(r).y - shift_;
}

double VModeProfile::dv(double r) const {
  if (r < k_s_) return 0.0;
  return profile_->eval(r).dy;
}

VModeProfile solve_v_profile(const ModeSolution& mode, const RadialStationary& stat) {
  const int k = mode.k();
  const double K = stat.k_s, R = stat.r_s;
  const auto& p = stat.params;
  const double jump = (p.sigma_hat - p.sigma_tilde) / p.sigma_hat;

  using State = std::array<double, 2>;
  const auto second = [&](double r, double dv) { return mode.u(std::min(r, R)) - 2.0 * (k + 1) * dv / r; };
  const auto rhs = [&](const State& x, State& dxdr, double r) {
    dxdr[0] = x[1];
    dxdr[1] = second(r, x[1]);
  };
  auto profile = std::make_shared<QuinticHermite>();
  const auto on_step = [&](double r, State& x) { profile->push(r, x[0], x[1], second(r, x[1])); };

  State x{0.0, jump * mode.du_at_k()};
  detail::integrate_to<2>(rhs, x, K, R, mode_step_control(R - K), on_step, fmt::format("vbar_{} profile", k));

  VModeProfile out;
  out.k_ = k;
  out.k_s_ = K;
  out.r_s_ = R;
  out.shift_ = x[0];
  out.core_value_ = -x[0];
  out.profile_ = std::move(profile);
  return out;
}

double ModeFields::u_radial(double r) const {
  if (r <= k_s_) return 0.0;
  return -amplitude_ * c_ * std::pow(r / r_s_, k_) * mode_.u(r);
}

double ModeFields::du_radial(double r) const {
  if (r < k_s_) return 0.0;
  const double ratio_k = std::pow(r / r_s_, k_);
  return -amplitude_ * c_ * ratio_k * (k_ / r * mode_.u(r) + mode_.du(r));
}

double ModeFields::v_radial(double r) const {
  const double surface = gamma_ * (k_ - 1) * (k_ + 2) / (2.0 * r_s_);
  return c_ * (surface + a_ * amplitude_ * vprof_.v(r)) * std::pow(r / r_s_, k_);
}

double ModeFields::dv_radial(double r, bool inner_side) const {
  const double surface = gamma_ * (k_ - 1) * (k_ + 2) / (2.0 * r_s_);
  const bool core = r < k_s_ || (r == k_s_ && inner_side);
  const double vbar = core ? vprof_.core_value() : vprof_.v(r);
  const double dvbar = core ? 0.0 : vprof_.dv(r);
  // d/dr (r/R)^k = k r^{k-1} / R^k
  const double d_ratio = k_ == 0 ? 0.0 : k_ * std::pow(r, k_ - 1) / std::pow(r_s_, k_);
  return c_ * ((surface + a_ * amplitude_ * vbar) * d_ratio + a_ * amplitude_ * dvbar * std::pow(r / r_s_, k_));
}

ModeFields mode_fields(int k, double c, double gamma, const ModeSolution& mode, const VModeProfile& vprof,
                       const RadialStationary& stat) {
  if (mode.k() != k || vprof.k() != k) throw DomainError("mode_fields: degree mismatch between inputs");
  ModeFields f;
  f.k_ = k;
  f.c_ = c;
  f.gamma_ = gamma;
  f.a_ = stat.params.a;
  f.k_s_ = stat.k_s;
  f.r_s_ = stat.r_s;
  f.mode_ = mode;
  f.vprof_ = vprof;
  // Linearizing sigma = 1 on r = R_s(1 + eps xi) gives u(R_s) = -R_s sigma_s'(R_s) xi.
  f.amplitude_ = stat.r_s * stat.sigma(stat.r_s).derivative;
  f.zeta_ = f.amplitude_ * c * std::pow(stat.k_s / stat.r_s, k) * mode.du_at_k() / (stat.params.sigma_hat * stat.k_s);
  return f;
}

}  // namespace necrostab::modes
