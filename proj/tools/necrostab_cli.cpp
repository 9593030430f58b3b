// Batch front end over the C interface.
//
// Exit status: 0 success, 1 invalid input, 2 solver failure, 3 verification failure.

#include <cstdio>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <fmt/format.h>

#include "necrostab/necrostab.h"

namespace {

enum Exit { kOk = 0, kInvalid = 1, kSolver = 2, kVerify = 3 };

struct Failure {
  int code;
};

std::string num(double x) { return fmt::format("{:.17g}", x); }

void check(nst_status s, const char* stage) {
  if (s == NST_OK) return;
  fmt::print(stderr, "necrostab: {} failed ({}): {}\n", stage, nst_status_name(s), nst_last_error());
  switch (s) {
    case NST_ERR_SOLVER:
    case NST_ERR_CONSISTENCY:
    case NST_ERR_INTERNAL:
      throw Failure{kSolver};
    default:
      throw Failure{kInvalid};
  }
}

template <class T, void (*Destroy)(T*)>
struct Handle {
  T* p = nullptr;
  Handle() = default;
  Handle(const Handle&) = delete;
  Handle& operator=(const Handle&) = delete;
  ~Handle() { Destroy(p); }
};

using Model = Handle<nst_model, nst_model_destroy>;
using Spectrum = Handle<nst_spectrum, nst_spectrum_destroy>;
using Trace = Handle<nst_trace, nst_trace_destroy>;
using Verify = Handle<nst_verify, nst_verify_destroy>;

struct Config {
  double a = 1.0, b = 0.25, sigma_hat = 0.5, gamma = 1.0;
  int kmax = 200;

  // stationary
  std::string profile_csv;
  int intervals = 200;
  int mode_k = -1;
  std::string mode_csv;

  // spectrum
  std::string json_out, csv_out;

  // evolve
  double r0 = 0.0, r0_factor = 1.2, t_end = 300.0;
  std::size_t samples = 2001;
  std::string trace_csv;

  // modes
  std::string perturbation;
  std::string mode_trace_csv;
  std::string shape_prefix;
  int shape_theta = 16, shape_phi = 32;

  // heleshaw
  int n = 3;
  int hs_kmax = 10;
  std::string hs_csv;

  // verify
  std::string verify_csv;
};

void create_model(const Config& c, Model& m) { check(nst_model_create(c.a, c.b, c.sigma_hat, &m.p), "model setup"); }

int run_stationary(const Config& c) {
  Model m;
  create_model(c, m);
  nst_stationary_info info{};
  check(nst_model_info(m.p, &info), "stationary");
  fmt::print("r_star {}\nr_s {}\nk_s {}\nc_const {}\nd_const {}\ndsigma_rs {}\n", num(info.r_star), num(info.r_s),
             num(info.k_s), num(info.c_const), num(info.d_const), num(info.dsigma_at_rs));
  if (!c.profile_csv.empty()) check(nst_model_write_profile_csv(m.p, c.intervals, c.profile_csv.c_str()), "profile export");
  if (!c.mode_csv.empty()) {
    if (c.mode_k < 0) {
      fmt::print(stderr, "necrostab: --mode-csv needs --mode-k >= 0\n");
      throw Failure{kInvalid};
    }
    check(nst_model_write_mode_csv(m.p, c.mode_k, c.intervals, c.mode_csv.c_str()), "mode export");
  }
  return kOk;
}

void print_threshold(const nst_spectrum_info& info) {
  fmt::print("gamma_star {}\nargmax_k {}\nkmax {}\ncertified {}\ngamma {}\nclassification {}\n", num(info.gamma_star),
             info.argmax_k, info.kmax, info.certified ? "yes" : "no", num(info.gamma),
             nst_stability_name(info.classification));
  if (!info.certified) {
    fmt::print(stderr, "necrostab: warning: tail bound does not clear gamma*; threshold inconclusive\n");
  }
}

int run_spectrum(const Config& c, bool table) {
  Model m;
  create_model(c, m);
  Spectrum s;
  check(nst_spectrum_compute(m.p, c.gamma, c.kmax, &s.p), "spectrum");
  nst_spectrum_info info{};
  check(nst_spectrum_info_get(s.p, &info), "spectrum");
  print_threshold(info);
  std::string kernel;
  for (int i = 0; i < info.kernel_degree_count; ++i) {
    int k = 0;
    check(nst_spectrum_kernel_degree(s.p, i, &k), "spectrum");
    kernel += (i ? "," : "") + std::to_string(k);
  }
  fmt::print("kernel_degrees {}\n", kernel.empty() ? "none" : kernel);
  if (table) {
    for (int k = 0; k <= info.kmax; ++k) {
      double a = 0.0;
      check(nst_spectrum_a(s.p, k, &a), "spectrum");
      fmt::print("a {} {}\n", k, num(a));
    }
  }
  if (!c.json_out.empty()) check(nst_spectrum_write_json(s.p, c.json_out.c_str()), "json export");
  if (!c.csv_out.empty()) check(nst_spectrum_write_csv(s.p, c.csv_out.c_str()), "csv export");
  return kOk;
}

int run_evolve(const Config& c) {
  Model m;
  create_model(c, m);
  nst_stationary_info info{};
  check(nst_model_info(m.p, &info), "stationary");
  const double r0 = c.r0 > 0.0 ? c.r0 : c.r0_factor * info.r_s;
  Trace t;
  check(nst_evolve_radius(m.p, r0, c.t_end, c.samples, &t.p), "radius evolution");
  std::size_t n = 0, w = 0;
  check(nst_trace_shape(t.p, &n, &w), "radius evolution");
  double tf = 0.0, rf = 0.0;
  check(nst_trace_value(t.p, n - 1, 0, &tf, &rf), "radius evolution");
  fmt::print("r0 {}\nr_s {}\nt_end {}\nr_end {}\noffset_end {}\n", num(r0), num(info.r_s), num(tf), num(rf),
             num(rf - info.r_s));
  double rate = 0.0;
  if (nst_trace_decay_rate(t.p, &rate) == NST_OK) fmt::print("decay_rate {}\n", num(rate));
  if (!c.trace_csv.empty()) check(nst_trace_write_csv(t.p, c.trace_csv.c_str()), "trace export");
  return kOk;
}

struct Perturbation {
  std::vector<int> k, l;
  std::vector<double> c;
};

Perturbation read_perturbation(const std::string& path) {
  std::ifstream f(path);
  if (!f) {
    fmt::print(stderr, "necrostab: cannot open perturbation file '{}'\n", path);
    throw Failure{kInvalid};
  }
  Perturbation p;
  std::string line;
  for (int lineno = 1; std::getline(f, line); ++lineno) {
    if (const auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    std::istringstream ss(line);
    int k = 0, l = 0;
    double c = 0.0;
    if (!(ss >> k)) continue;  // blank line
    std::string extra;
    if (!(ss >> l >> c) || (ss >> extra)) {
      fmt::print(stderr, "necrostab: {}:{}: expected 'k l c'\n", path, lineno);
      throw Failure{kInvalid};
    }
    p.k.push_back(k);
    p.l.push_back(l);
    p.c.push_back(c);
  }
  return p;
}

int run_modes(const Config& c) {
  if (c.perturbation.empty()) {
    fmt::print(stderr, "necrostab: modes needs --perturbation FILE\n");
    throw Failure{kInvalid};
  }
  if (c.samples < 2) {
    fmt::print(stderr, "necrostab: --samples must be at least 2\n");
    throw Failure{kInvalid};
  }
  const auto pert = read_perturbation(c.perturbation);
  std::vector<double> times(c.samples);
  for (std::size_t i = 0; i < c.samples; ++i) times[i] = c.t_end * static_cast<double>(i) / static_cast<double>(c.samples - 1);

  Model m;
  create_model(c, m);
  Trace t;
  check(nst_evolve_modes(m.p, c.gamma, pert.k.data(), pert.l.data(), pert.c.data(), pert.k.size(), times.data(),
                         times.size(), &t.p),
        "mode evolution");
  std::size_t n = 0, w = 0;
  check(nst_trace_shape(t.p, &n, &w), "mode evolution");
  fmt::print("gamma {}\nterms {}\nsamples {}\n", num(c.gamma), w, n);
  for (std::size_t j = 0; j < w; ++j) {
    double t0 = 0, c0 = 0, t1 = 0, c1 = 0;
    int k = 0, l = 0;
    check(nst_trace_index(t.p, j, &k, &l), "mode evolution");
    check(nst_trace_value(t.p, 0, j, &t0, &c0), "mode evolution");
    check(nst_trace_value(t.p, n - 1, j, &t1, &c1), "mode evolution");
    fmt::print("c {} {} {} {}\n", k, l, num(c0), num(c1));
  }
  if (!c.mode_trace_csv.empty()) check(nst_trace_write_csv(t.p, c.mode_trace_csv.c_str()), "trace export");
  if (!c.shape_prefix.empty()) {
    for (std::size_t i = 0; i < n; ++i) {
      const auto path = fmt::format("{}{:04d}.csv", c.shape_prefix, i);
      check(nst_trace_write_shape_csv(t.p, i, c.shape_theta, c.shape_phi, path.c_str()), "shape export");
    }
  }
  return kOk;
}

int run_heleshaw(const Config& c) {
  for (int k = 0; k <= c.hs_kmax; ++k) {
    long long num_ = 0, den = 1;
    check(nst_heleshaw_mu(k, c.n, &num_, &den), "hele-shaw");
    if (den == 1) {
      fmt::print("{} {}\n", k, num_);
    } else {
      fmt::print("{} {}/{}\n", k, num_, den);
    }
  }
  long long dim = 0;
  check(nst_heleshaw_kernel_dim(c.n, c.hs_kmax, &dim), "hele-shaw");
  fmt::print("kernel_dim {}\n", dim);
  if (!c.hs_csv.empty()) check(nst_heleshaw_write_csv(c.n, c.hs_kmax, c.hs_csv.c_str()), "csv export");
  return kOk;
}

int run_verify(const Config& c) {
  Verify v;
  check(nst_verify_run(c.a, c.b, c.sigma_hat, c.kmax, &v.p), "verification");
  std::size_t n = 0;
  check(nst_verify_count(v.p, &n), "verification");
  std::string group;
  for (std::size_t i = 0; i < n; ++i) {
    nst_check_info ci{};
    check(nst_verify_check(v.p, i, &ci), "verification");
    if (group != ci.group) {
      group = ci.group;
      fmt::print("[{}]\n", group);
    }
    fmt::print("  {:<28} {:<4} measured={} tol={}{}{}\n", ci.name, ci.pass ? "pass" : "FAIL", num(ci.measured),
               num(ci.tolerance), *ci.detail ? "  " : "", ci.detail);
  }
  int ok = 0;
  check(nst_verify_all_pass(v.p, &ok), "verification");
  if (!c.verify_csv.empty()) check(nst_verify_write_csv(v.p, c.verify_csv.c_str()), "csv export");
  fmt::print("overall {}\n", ok ? "pass" : "FAIL");
  return ok ? kOk : kVerify;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"necrostab: stationary states, spectra and stability thresholds of the necrotic tumor model"};
  app.set_version_flag("--version", std::string(nst_version()));
  app.set_config("--config", "", "flat key = value file; command-line flags take precedence");
  app.require_subcommand(1);
  app.fallthrough();
  bool show_config = false;
  app.add_flag("--show-config", show_config, "print the effective configuration (with defaults) and exit")
      ->configurable(false);

  Config c;
  app.add_option("--a", c.a, "proliferation coefficient a > 0")->capture_default_str();
  app.add_option("--b", c.b, "dissolution rate 0 < b < a*sigma_hat")->capture_default_str();
  app.add_option("--sigma-hat", c.sigma_hat, "necrosis threshold 0 < sigma_hat < 1")->capture_default_str();
  app.add_option("--gamma", c.gamma, "surface tension gamma > 0")->capture_default_str();
  app.add_option("--kmax", c.kmax, "highest harmonic degree")->capture_default_str();

  auto* stationary = app.add_subcommand("stationary", "R*, R_s, K_s and profile CSV");
  stationary->add_option("--profile", c.profile_csv, "write r,sigma,dsigma,pi0,dpi0");
  stationary->add_option("--intervals", c.intervals, "profile intervals")->capture_default_str();
  stationary->add_option("--mode-k", c.mode_k, "degree for --mode-csv");
  stationary->add_option("--mode-csv", c.mode_csv, "write r,u_k,z_k for degree --mode-k");

  auto* spectrum = app.add_subcommand("spectrum", "a_k / gamma_k table and JSON report");
  spectrum->add_option("--json", c.json_out, "JSON report path");
  spectrum->add_option("--csv", c.csv_out, "CSV table path (k,a_k,gamma_k)");

  auto* threshold = app.add_subcommand("threshold", "gamma*, its degree and the classification at --gamma");

  auto* evolve = app.add_subcommand("evolve", "radially symmetric evolution trace");
  evolve->add_option("--r0", c.r0, "initial radius (overrides --r0-factor)");
  evolve->add_option("--r0-factor", c.r0_factor, "initial radius as a multiple of R_s")->capture_default_str();
  evolve->add_option("--t-end", c.t_end, "final time")->capture_default_str();
  evolve->add_option("--samples", c.samples, "output samples")->capture_default_str();
  evolve->add_option("--out", c.trace_csv, "trace CSV (t,R)");

  auto* modes = app.add_subcommand("modes", "linearized harmonic amplitude flow from a perturbation file");
  modes->add_option("--perturbation", c.perturbation, "file of 'k l c' lines");
  modes->add_option("--t-end", c.t_end, "final time")->capture_default_str();
  modes->add_option("--samples", c.samples, "output samples")->capture_default_str();
  modes->add_option("--out", c.mode_trace_csv, "trace CSV (t, c_k_l...)");
  modes->add_option("--shape-prefix", c.shape_prefix, "write <prefix>NNNN.csv shape snapshots (theta,phi,r)");
  modes->add_option("--shape-theta", c.shape_theta, "snapshot polar points")->capture_default_str();
  modes->add_option("--shape-phi", c.shape_phi, "snapshot azimuthal points")->capture_default_str();

  auto* heleshaw = app.add_subcommand("heleshaw", "Hele-Shaw multipliers mu_k");
  heleshaw->add_option("--n", c.n, "space dimension n >= 2")->capture_default_str();
  heleshaw->add_option("--kmax", c.hs_kmax, "highest degree")->capture_default_str();
  heleshaw->add_option("--csv", c.hs_csv, "CSV table path");

  auto* verify = app.add_subcommand("verify", "property suite; exit 3 if any check fails");
  verify->add_option("--csv", c.verify_csv, "CSV report path");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForVersion& e) {
    return app.exit(e);
  } catch (const CLI::RequiredError& e) {
    if (show_config) {
      std::fputs(app.config_to_str(true, true).c_str(), stdout);
      return kOk;
    }
    app.exit(e);
    return kInvalid;
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kInvalid;
  }
  if (show_config) {
    std::fputs(app.config_to_str(true, true).c_str(), stdout);
    return kOk;
  }

  try {
    if (stationary->parsed()) return run_stationary(c);
    if (spectrum->parsed()) return run_spectrum(c, true);
    if (threshold->parsed()) return run_spectrum(c, false);
    if (evolve->parsed()) return run_evolve(c);
    if (modes->parsed()) return run_modes(c);
    if (heleshaw->parsed()) return run_heleshaw(c);
    if (verify->parsed()) return run_verify(c);
  } catch (const Failure& f) {
    return f.code;
  }
  return kInvalid;
}
