#include <doctest.h>

#include <cmath>
#include <cstdio>
#include <string>
#include <vector>

#include "necrostab/necrostab.h"

namespace {

struct Model {
  nst_model* m = nullptr;
  Model() { REQUIRE(nst_model_create(1.0, 0.25, 0.5, &m) == NST_OK); }
  ~Model() { nst_model_destroy(m); }
};

}  // namespace

TEST_CASE("version and names") {
  CHECK(std::string(nst_version()).size() > 0);
  CHECK(std::string(nst_status_name(NST_ERR_CONFIG)) != std::string(nst_status_name(NST_OK)));
  CHECK(std::string(nst_stability_name(NST_UNSTABLE)) == "unstable");
}

TEST_CASE("invalid parameters give a config error and a message") {
  nst_model* m = nullptr;
  CHECK(nst_model_create(1.0, 0.25, 1.2, &m) == NST_ERR_CONFIG);
  CHECK(m == nullptr);
  CHECK(std::string(nst_last_error()).find("sigma_hat") != std::string::npos);
  CHECK(nst_model_create(1.0, 0.25, 0.5, nullptr) == NST_ERR_INVALID_ARGUMENT);
  nst_model_destroy(nullptr);
}

TEST_CASE("stationary info") {
  Model m;
  nst_stationary_info info{};
  REQUIRE(nst_model_info(m.m, &info) == NST_OK);
  CHECK(info.r_s == doctest::Approx(5.7764639544452514).epsilon(1e-12));
  CHECK(info.k_s == doctest::Approx(4.3485829147431545).epsilon(1e-12));
  CHECK(info.r_star == doctest::Approx(2.1773189849653067).epsilon(1e-12));
  double s, ds, p, dp;
  REQUIRE(nst_model_profile(m.m, info.r_s, &s, &ds, &p, &dp) == NST_OK);
  CHECK(s == doctest::Approx(1.0));
  CHECK(nst_model_profile(m.m, -1.0, &s, &ds, &p, &dp) == NST_ERR_DOMAIN);
}

TEST_CASE("spectrum through the C interface") {
  Model m;
  nst_spectrum* sp = nullptr;
  REQUIRE(nst_spectrum_compute(m.m, 4.0, 50, &sp) == NST_OK);
  nst_spectrum_info info{};
  REQUIRE(nst_spectrum_info_get(sp, &info) == NST_OK);
  CHECK(info.gamma_star == doctest::Approx(3.0739935817952846).epsilon(1e-9));
  CHECK(info.argmax_k == 2);
  CHECK(info.certified == 1);
  CHECK(info.classification == NST_STABLE_MODULO_TRANSLATIONS);
  REQUIRE(info.kernel_degree_count == 1);
  int kd = -1;
  CHECK(nst_spectrum_kernel_degree(sp, 0, &kd) == NST_OK);
  CHECK(kd == 1);
  double a0 = 0.0, g2 = 0.0;
  CHECK(nst_spectrum_a(sp, 0, &a0) == NST_OK);
  CHECK(a0 < 0.0);
  CHECK(nst_spectrum_gamma_k(sp, 2, &g2) == NST_OK);
  CHECK(g2 == info.gamma_star);
  CHECK(nst_spectrum_gamma_k(sp, 1, &g2) != NST_OK);
  CHECK(nst_spectrum_a(sp, 10000, &a0) != NST_OK);
  CHECK(nst_spectrum_write_json(sp, "no/such/dir/x.json") == NST_ERR_IO);
  nst_spectrum_destroy(sp);
  CHECK(nst_spectrum_compute(m.m, -1.0, 50, &sp) == NST_ERR_CONFIG);
}

TEST_CASE("radius trace and decay rate") {
  Model m;
  nst_stationary_info info{};
  nst_model_info(m.m, &info);
  nst_trace* tr = nullptr;
  REQUIRE(nst_evolve_radius(m.m, 1.2 * info.r_s, 300.0, 601, &tr) == NST_OK);
  size_t n = 0, w = 0;
  nst_trace_shape(tr, &n, &w);
  CHECK(n == 601);
  CHECK(w == 1);
  double t = 0.0, r = 0.0;
  nst_trace_value(tr, n - 1, 0, &t, &r);
  CHECK(t == doctest::Approx(300.0));
  CHECK(std::abs(r - info.r_s) < 1e-6);
  double rate = 0.0;
  REQUIRE(nst_trace_decay_rate(tr, &rate) == NST_OK);
  CHECK(rate < 0.0);
  CHECK(nst_trace_value(tr, n, 0, &t, &r) != NST_OK);
  nst_trace_destroy(tr);
}

TEST_CASE("mode trace keeps the requested indices") {
  Model m;
  const int k[] = {3, 1};
  const int l[] = {2, 3};
  const double c[] = {1e-3, 2e-3};
  const double times[] = {0.0, 2.0};
  nst_trace* tr = nullptr;
  REQUIRE(nst_evolve_modes(m.m, 4.0, k, l, c, 2, times, 2, &tr) == NST_OK);
  for (size_t j = 0; j < 2; ++j) {
    int kk = 0, ll = 0;
    double t = 0.0, v = 0.0;
    nst_trace_index(tr, j, &kk, &ll);
    nst_trace_value(tr, 0, j, &t, &v);
    CHECK(v == (kk == 3 ? 1e-3 : 2e-3));
  }
  nst_trace_destroy(tr);
  const int bad_l[] = {9, 3};
  CHECK(nst_evolve_modes(m.m, 4.0, k, bad_l, c, 2, times, 2, &tr) == NST_ERR_DOMAIN);
}

TEST_CASE("Hele-Shaw, annulus and toy entry points") {
  long long num = 0, den = 0;
  REQUIRE(nst_heleshaw_mu(2, 4, &num, &den) == NST_OK);
  CHECK(num == -10);
  CHECK(den == 3);
  long long dim = 0;
  CHECK(nst_heleshaw_kernel_dim(3, 20, &dim) == NST_OK);
  CHECK(dim == 4);
  double l0 = 0.0;
  CHECK(nst_dn_annulus_multiplier(0, 1.0, 2.0, &l0) == NST_OK);
  CHECK(l0 == 2.0);
  CHECK(nst_dn_annulus_multiplier(0, 2.0, 1.0, &l0) == NST_ERR_DOMAIN);
  double x, y;
  int on = -1;
  CHECK(nst_toy_flow(0.0, 1.0, 20.0, &x, &y, &on) == NST_OK);
  CHECK(on == 1);
  CHECK(nst_toy_flow(0.5, 1.0, 20.0, &x, &y, &on) == NST_OK);
  CHECK(on == 0);
}

TEST_CASE("velocity and verify entry points") {
  double v = 1.0;
  CHECK(nst_radial_velocity(1.0, 0.25, 0.5, 5.7764639544452514, &v) == NST_OK);
  CHECK(std::abs(v) < 1e-10);
  nst_verify* rep = nullptr;
  REQUIRE(nst_verify_run(1.0, 0.25, 0.5, 40, &rep) == NST_OK);
  size_t n = 0;
  nst_verify_count(rep, &n);
  CHECK(n > 30);
  int pass = 0;
  nst_verify_all_pass(rep, &pass);
  CHECK(pass == 1);
  nst_check_info ci{};
  CHECK(nst_verify_check(rep, 0, &ci) == NST_OK);
  CHECK(ci.name != nullptr);
  CHECK(nst_verify_check(rep, n, &ci) != NST_OK);
  nst_verify_destroy(rep);
}
