#include "necrostab/necrostab.h"

#include <cmath>
#include <memory>
#include <stdexcept>
#include <string>

#include <fmt/format.h>

#include "necrostab/dynamics.hpp"
#include "necrostab/error.hpp"
#include "necrostab/report_io.hpp"
#include "necrostab/spectrum.hpp"
#include "necrostab/verify.hpp"

using namespace necrostab;

struct nst_model {
  radial::RadialStationary stat;
};

struct nst_spectrum {
  spectrum::SpectrumReport report;
};

struct nst_trace {
  dynamics::EvolutionTrace trace;
  double r_s = 0.0;
};

struct nst_verify {
  verify::VerifyReport report;
};

namespace {

thread_local std::string last_error;

struct BadArgument : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

nst_status fail(nst_status s, const char* what) {
  last_error = what;
  return s;
}

template <class F>
nst_status guard(F&& body) noexcept {
  try {
    last_error.clear();
    body();
    return NST_OK;
  } catch (const BadArgument& e) {
    return fail(NST_ERR_INVALID_ARGUMENT, e.what());
  } catch (const ConfigError& e) {
    return fail(NST_ERR_CONFIG, e.what());
  } catch (const DomainError& e) {
    return fail(NST_ERR_DOMAIN, e.what());
  } catch (const SolverError& e) {
    return fail(NST_ERR_SOLVER, e.what());
  } catch (const ConsistencyError& e) {
    return fail(NST_ERR_CONSISTENCY, e.what());
  } catch (const IoError& e) {
    return fail(NST_ERR_IO, e.what());
  } catch (const std::exception& e) {
    return fail(NST_ERR_INTERNAL, e.what());
  } catch (...) {
    return fail(NST_ERR_INTERNAL, "unknown exception");
  }
}

template <class T>
T& require(T* p, const char* what) {
  if (!p) throw BadArgument(fmt::format("{} must not be null", what));
  return *p;
}

std::string require_path(const char* path) {
  if (!path || !*path) throw BadArgument("output path must be a nonempty string");
  return path;
}

}  // namespace

extern "C" {

const char* nst_version(void) { return NECROSTAB_VERSION; }

const char* nst_last_error(void) { return last_error.c_str(); }

const char* nst_status_name(nst_status status) {
  switch (status) {
    case NST_OK:
      return "ok";
    case NST_ERR_INVALID_ARGUMENT:
      return "invalid argument";
    case NST_ERR_CONFIG:
      return "invalid configuration";
    case NST_ERR_DOMAIN:
      return "domain error";
    case NST_ERR_SOLVER:
      return "solver failure";
    case NST_ERR_CONSISTENCY:
      return "consistency failure";
    case NST_ERR_IO:
      return "i/o error";
    case NST_ERR_INTERNAL:
      return "internal error";
  }
  return "unknown status";
}

const char* nst_stability_name(nst_stability s) {
  switch (s) {
    case NST_STABLE_MODULO_TRANSLATIONS:
      return "stable-modulo-translations";
    case NST_UNSTABLE:
      return "unstable";
    case NST_CRITICAL:
      return "critical";
  }
  return "unknown";
}

nst_status nst_model_create(double a, double b, double sigma_hat, nst_model** out) {
  return guard([&] {
    auto& slot = require(out, "out");
    slot = nullptr;
    const auto params = radial::ModelParams::make(a, b, sigma_hat);
    slot = new nst_model{radial::solve_stationary_radius(params)};
  });
}

void nst_model_destroy(nst_model* model) { delete model; }

nst_status nst_model_info(const nst_model* model, nst_stationary_info* out) {
  return guard([&] {
    const auto& s = require(model, "model").stat;
    auto& o = require(out, "out");
    o = {s.params.a, s.params.b, s.params.sigma_hat, s.params.sigma_tilde, s.params.g1, s.r_star, s.r_s, s.k_s,
         s.c_const, s.d_const, s.sigma(s.r_s).derivative};
  });
}

nst_status nst_model_profile(const nst_model* model, double r, double* sigma, double* dsigma, double* pi0,
                             double* dpi0) {
  return guard([&] {
    const auto& s = require(model, "model").stat;
    const auto sig = s.sigma(r);
    const auto pi = s.pi0(r);
    if (sigma) *sigma = sig.value;
    if (dsigma) *dsigma = sig.derivative;
    if (pi0) *pi0 = pi.value;
    if (dpi0) *dpi0 = pi.derivative;
  });
}

nst_status nst_model_write_profile_csv(const nst_model* model, int intervals, const char* path) {
  return guard([&] {
    const auto& s = require(model, "model").stat;
    io::write_atomic(require_path(path), io::stationary_csv(s, intervals));
  });
}

nst_status nst_model_write_mode_csv(const nst_model* model, int k, int intervals, const char* path) {
  return guard([&] {
    const auto& s = require(model, "model").stat;
    const auto target = require_path(path);
    io::write_atomic(target, io::mode_profile_csv(modes::solve_u_mode(k, s), intervals));
  });
}

nst_status nst_radial_velocity(double a, double b, double sigma_hat, double R, double* out) {
  return guard([&] {
    auto& o = require(out, "out");
    o = dynamics::radial_velocity(R, radial::ModelParams::make(a, b, sigma_hat));
  });
}

nst_status nst_spectrum_compute(const nst_model* model, double gamma, int kmax, nst_spectrum** out) {
  return guard([&] {
    const auto& s = require(model, "model").stat;
    auto& slot = require(out, "out");
    slot = nullptr;
    slot = new nst_spectrum{spectrum::spectrum_report(s, gamma, kmax)};
  });
}

void nst_spectrum_destroy(nst_spectrum* spectrum) { delete spectrum; }

nst_status nst_spectrum_info_get(const nst_spectrum* spectrum, nst_spectrum_info* out) {
  return guard([&] {
    const auto& r = require(spectrum, "spectrum").report;
    auto& o = require(out, "out");
    o.gamma = r.gamma;
    o.gamma_star = r.threshold.gamma_star;
    o.argmax_k = r.threshold.argmax_k;
    o.kmax = r.kmax;
    o.certified = r.threshold.certified ? 1 : 0;
    o.tail_bound = r.threshold.tail_bound;
    o.classification = static_cast<nst_stability>(static_cast<int>(r.classification));
    o.kernel_degree_count = static_cast<int>(r.kernel_degrees.size());
  });
}

nst_status nst_spectrum_a(const nst_spectrum* spectrum, int k, double* out) {
  return guard([&] {
    const auto& r = require(spectrum, "spectrum").report;
    if (k < 0 || k > r.kmax) throw DomainError(fmt::format("degree {} outside 0..{}", k, r.kmax));
    require(out, "out") = r.a_values[static_cast<std::size_t>(k)];
  });
}

nst_status nst_spectrum_gamma_k(const nst_spectrum* spectrum, int k, double* out) {
  return guard([&] {
    const auto& r = require(spectrum, "spectrum").report;
    if (k < 2 || k > r.kmax) throw DomainError(fmt::format("gamma_k needs 2 <= k <= {}, got {}", r.kmax, k));
    require(out, "out") = r.gamma_values[static_cast<std::size_t>(k - 2)];
  });
}

nst_status nst_spectrum_kernel_degree(const nst_spectrum* spectrum, int index, int* out) {
  return guard([&] {
    const auto& r = require(spectrum, "spectrum").report;
    if (index < 0 || index >= static_cast<int>(r.kernel_degrees.size())) throw DomainError("kernel index out of range");
    require(out, "out") = r.kernel_degrees[static_cast<std::size_t>(index)];
  });
}

nst_status nst_spectrum_write_json(const nst_spectrum* spectrum, const char* path) {
  return guard([&] { io::write_atomic(require_path(path), io::spectrum_json(require(spectrum, "spectrum").report)); });
}

nst_status nst_spectrum_write_csv(const nst_spectrum* spectrum, const char* path) {
  return guard([&] { io::write_atomic(require_path(path), io::spectrum_csv(require(spectrum, "spectrum").report)); });
}

nst_status nst_evolve_radius(const nst_model* model, double r0, double t_end, size_t samples, nst_trace** out) {
  return guard([&] {
    const auto& s = require(model, "model").stat;
    auto& slot = require(out, "out");
    slot = nullptr;
    dynamics::EvolveOptions opt;
    if (samples) opt.samples = samples;
    slot = new nst_trace{dynamics::evolve_radius(r0, t_end, s.params, opt), s.r_s};
  });
}

nst_status nst_evolve_modes(const nst_model* model, double gamma, const int* k, const int* l, const double* c,
                            size_t terms, const double* times, size_t n_times, nst_trace** out) {
  return guard([&] {
    const auto& s = require(model, "model").stat;
    auto& slot = require(out, "out");
    slot = nullptr;
    if (terms && (!k || !l || !c)) throw BadArgument("coefficient arrays must not be null");
    if (n_times && !times) throw BadArgument("times must not be null");
    if (!(gamma > 0.0) || !std::isfinite(gamma)) throw ConfigError(fmt::format("invalid gamma={}: need gamma > 0", gamma));
    harmonics::HarmonicExpansion xi;
    for (size_t i = 0; i < terms; ++i) xi.add({k[i], l[i]}, c[i]);
    const spectrum::ModeSpectrum spec(s, std::max(1, xi.max_degree()));
    slot = new nst_trace{dynamics::evolve_modes(xi, gamma, std::vector<double>(times, times + n_times), spec), s.r_s};
  });
}

void nst_trace_destroy(nst_trace* trace) { delete trace; }

nst_status nst_trace_shape(const nst_trace* trace, size_t* samples, size_t* width) {
  return guard([&] {
    const auto& t = require(trace, "trace").trace;
    if (samples) *samples = t.size();
    if (width) *width = t.width();
  });
}

nst_status nst_trace_index(const nst_trace* trace, size_t column, int* k, int* l) {
  return guard([&] {
    const auto& tr = require(trace, "trace").trace;
    if (column >= tr.indices.size()) throw DomainError("not a mode-trace column");
    if (k) *k = tr.indices[column].k;
    if (l) *l = tr.indices[column].l;
  });
}

nst_status nst_trace_value(const nst_trace* trace, size_t sample, size_t column, double* t, double* value) {
  return guard([&] {
    const auto& tr = require(trace, "trace").trace;
    if (sample >= tr.size() || column >= tr.width()) throw DomainError("trace index out of range");
    if (t) *t = tr.times[sample];
    if (value) *value = tr.at(sample, column);
  });
}

nst_status nst_trace_decay_rate(const nst_trace* trace, double* out) {
  return guard([&] {
    const auto& tr = require(trace, "trace");
    require(out, "out") = dynamics::fit_decay_rate(tr.trace, tr.r_s);
  });
}

nst_status nst_trace_write_csv(const nst_trace* trace, const char* path) {
  return guard([&] {
    const auto& t = require(trace, "trace").trace;
    const auto target = require_path(path);
    io::write_atomic(target, t.kind == dynamics::EvolutionTrace::Kind::Radius ? io::radius_trace_csv(t)
                                                                               : io::mode_trace_csv(t));
  });
}

nst_status nst_trace_write_shape_csv(const nst_trace* trace, size_t sample, int n_theta, int n_phi, const char* path) {
  return guard([&] {
    const auto& tr = require(trace, "trace");
    const auto target = require_path(path);
    io::write_atomic(target, io::shape_csv(dynamics::shape_snapshot(tr.trace, sample, tr.r_s, n_theta, n_phi)));
  });
}

nst_status nst_heleshaw_mu(int k, int n, long long* numerator, long long* denominator) {
  return guard([&] {
    const auto mu = spectrum::heleshaw_mu(k, n);
    require(numerator, "numerator") = mu.numerator();
    require(denominator, "denominator") = mu.denominator();
  });
}

nst_status nst_heleshaw_kernel_dim(int n, int kmax, long long* out) {
  return guard([&] { require(out, "out") = spectrum::heleshaw_spectrum(n, kmax).kernel_dim; });
}

nst_status nst_heleshaw_write_csv(int n, int kmax, const char* path) {
  return guard([&] {
    const auto target = require_path(path);
    io::write_atomic(target, io::heleshaw_csv(spectrum::heleshaw_spectrum(n, kmax)));
  });
}

nst_status nst_dn_annulus_multiplier(int k, double K, double R, double* out) {
  return guard([&] { require(out, "out") = spectrum::dn_annulus_multiplier(k, K, R); });
}

nst_status nst_toy_flow(double x0, double y0, double t, double* x, double* y, int* on_stable_manifold) {
  return guard([&] {
    const auto p = dynamics::toy_planar_flow(x0, y0, t);
    if (x) *x = p.x;
    if (y) *y = p.y;
    if (on_stable_manifold) *on_stable_manifold = dynamics::toy_on_stable_manifold(x0, y0) ? 1 : 0;
  });
}

nst_status nst_verify_run(double a, double b, double sigma_hat, int kmax, nst_verify** out) {
  return guard([&] {
    auto& slot = require(out, "out");
    slot = nullptr;
    const auto params = radial::ModelParams::make(a, b, sigma_hat);
    verify::VerifyOptions opt;
    if (kmax > 0) opt.kmax = kmax;
    slot = new nst_verify{verify::verify_suite(params, opt)};
  });
}

void nst_verify_destroy(nst_verify* report) { delete report; }

nst_status nst_verify_count(const nst_verify* report, size_t* out) {
  return guard([&] { require(out, "out") = require(report, "report").report.checks.size(); });
}

nst_status nst_verify_check(const nst_verify* report, size_t index, nst_check_info* out) {
  return guard([&] {
    const auto& checks = require(report, "report").report.checks;
    if (index >= checks.size()) throw DomainError("check index out of range");
    const auto& c = checks[index];
    require(out, "out") = {c.name.c_str(), c.group.c_str(), c.detail.c_str(), c.measured, c.tolerance, c.pass ? 1 : 0};
  });
}

nst_status nst_verify_all_pass(const nst_verify* report, int* out) {
  return guard([&] { require(out, "out") = require(report, "report").report.all_pass() ? 1 : 0; });
}

nst_status nst_verify_write_csv(const nst_verify* report, const char* path) {
  return guard([&] { io::write_atomic(require_path(path), io::verify_csv(require(report, "report").report)); });
}

}  // extern "C"
