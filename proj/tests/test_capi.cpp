// Exercises the shared-library C API end to end: handles, error codes,
// JSON surfaces and the thread-local error message.

#include <doctest.h>

#include <cmath>
#include <complex>
#include <cstring>
#include <string>

#include <json.hpp>

#include <schwinger.h>

namespace {

struct StringGuard {
  char* s = nullptr;
  ~StringGuard() { sw_string_free(s); }
};

}  // namespace

TEST_CASE("hamiltonian creation and validation") {
  sw_hamiltonian* h = nullptr;
  REQUIRE(sw_hamiltonian_oscillator(1.0, 1.0, 1.0, &h) == SW_OK);
  REQUIRE(h != nullptr);
  sw_hamiltonian_free(h);

  CHECK(sw_hamiltonian_create(-1.0, 0.0, 0.0, 0.0, 0.0, 1.0, &h) ==
        SW_ERR_INVALID_ARGUMENT);
  CHECK(h == nullptr);
  CHECK(std::strlen(sw_last_error_message()) > 0);

  CHECK(sw_hamiltonian_oscillator(1.0, 1.0, 1.0, nullptr) ==
        SW_ERR_NULL_POINTER);
}

TEST_CASE("kernel build, evaluation and frozen value") {
  sw_hamiltonian* h = nullptr;
  REQUIRE(sw_hamiltonian_oscillator(1.0, 1.0, 1.0, &h) == SW_OK);

  sw_kernel* k = nullptr;
  REQUIRE(sw_kernel_build(h, M_PI / 2, SW_REP_MOMENTUM, &k) == SW_OK);
  CHECK(sw_kernel_is_degenerate(k) == 0);

  double re = 0, im = 0;
  REQUIRE(sw_kernel_eval(k, 2.0, 3.0, &re, &im) == SW_OK);
  const std::complex<double> expect =
      std::exp(std::complex<double>(0.0, -6.0)) /
      std::sqrt(std::complex<double>(0.0, 2.0 * M_PI));
  CHECK(std::abs(std::complex<double>(re, im) - expect) < 1e-14);

  double t = 0;
  REQUIRE(sw_kernel_time(k, &t) == SW_OK);
  CHECK(t == M_PI / 2);
  sw_rep rep;
  REQUIRE(sw_kernel_rep(k, &rep) == SW_OK);
  CHECK(rep == SW_REP_MOMENTUM);

  REQUIRE(sw_kernel_coefficient(k, SW_COEFF_A_T0, &re, &im) == SW_OK);
  CHECK(re == doctest::Approx(-1.0));
  CHECK(im == 0.0);

  sw_kernel_free(k);
  sw_hamiltonian_free(h);
}

TEST_CASE("error codes for caustic and degenerate kernels") {
  sw_hamiltonian* h = nullptr;
  REQUIRE(sw_hamiltonian_oscillator(1.0, 1.0, 1.0, &h) == SW_OK);
  sw_kernel* k = nullptr;
  CHECK(sw_kernel_build(h, M_PI, SW_REP_MOMENTUM, &k) == SW_ERR_CAUSTIC);
  CHECK(k == nullptr);
  CHECK(sw_kernel_build(h, 0.0, SW_REP_MOMENTUM, &k) ==
        SW_ERR_INVALID_ARGUMENT);
  sw_hamiltonian_free(h);

  sw_hamiltonian* hf = nullptr;
  REQUIRE(sw_hamiltonian_free_particle(1.0, 1.0, &hf) == SW_OK);
  REQUIRE(sw_kernel_build(hf, 1.0, SW_REP_MOMENTUM, &k) == SW_OK);
  CHECK(sw_kernel_is_degenerate(k) == 1);

  double re = 0, im = 0;
  CHECK(sw_kernel_eval(k, 0.0, 0.0, &re, &im) == SW_ERR_DEGENERATE);
  REQUIRE(sw_kernel_delta_phase(k, 1.0, &re, &im) == SW_OK);
  CHECK(std::abs(std::complex<double>(re, im) -
                 std::exp(std::complex<double>(0.0, -0.5))) == 0.0);
  sw_kernel_free(k);
  sw_hamiltonian_free(hf);
}

TEST_CASE("kernel JSON round trip through the C surface") {
  sw_hamiltonian* h = nullptr;
  REQUIRE(sw_hamiltonian_oscillator(1.0, 1.0, 1.0, &h) == SW_OK);
  sw_kernel* k = nullptr;
  REQUIRE(sw_kernel_build(h, 0.7, SW_REP_MOMENTUM, &k) == SW_OK);

  StringGuard text;
  REQUIRE(sw_kernel_to_json(k, &text.s) == SW_OK);
  const auto j = nlohmann::json::parse(text.s);
  CHECK(j["schema"] == "schwinger.kernel/1");
  CHECK(j["rep"] == "momentum");
  CHECK(j["degenerate"] == false);

  sw_kernel* back = nullptr;
  REQUIRE(sw_kernel_from_json(text.s, &back) == SW_OK);
  double re1, im1, re2, im2;
  REQUIRE(sw_kernel_eval(k, 1.1, -0.4, &re1, &im1) == SW_OK);
  REQUIRE(sw_kernel_eval(back, 1.1, -0.4, &re2, &im2) == SW_OK);
  CHECK(re1 == re2);
  CHECK(im1 == im2);

  sw_kernel* bad = nullptr;
  CHECK(sw_kernel_from_json("{\"schema\": \"nope\"}", &bad) ==
        SW_ERR_BAD_FORMAT);

  sw_kernel_free(back);
  sw_kernel_free(k);
  sw_hamiltonian_free(h);
}

TEST_CASE("grid states through the C surface") {
  sw_grid* g = nullptr;
  REQUIRE(sw_grid_gaussian(-20.0, 20.0, 4096, SW_REP_MOMENTUM, 1.0, 0.0, 1.0,
                           1.0, &g) == SW_OK);
  double norm = 0;
  REQUIRE(sw_grid_norm(g, &norm) == SW_OK);
  CHECK(std::abs(norm - 1.0) < 1e-12);

  int n = 0;
  REQUIRE(sw_grid_size(g, &n) == SW_OK);
  CHECK(n == 4096);

  sw_grid* bad = nullptr;
  CHECK(sw_grid_gaussian(-3.0, 3.0, 256, SW_REP_POSITION, 1.0, 0.0, 0.0, 1.0,
                         &bad) == SW_ERR_GRID);
  CHECK(sw_grid_gaussian(-20.0, 20.0, 1000, SW_REP_POSITION, 1.0, 0.0, 0.0,
                         1.0, &bad) == SW_ERR_INVALID_ARGUMENT);

  sw_hamiltonian* h = nullptr;
  REQUIRE(sw_hamiltonian_oscillator(1.0, 1.0, 1.0, &h) == SW_OK);
  sw_kernel* k = nullptr;
  REQUIRE(sw_kernel_build(h, 0.7, SW_REP_MOMENTUM, &k) == SW_OK);

  sw_grid* via_kernel = nullptr;
  REQUIRE(sw_grid_apply_kernel(g, k, &via_kernel) == SW_OK);
  sw_grid* via_oracle = nullptr;
  REQUIRE(sw_grid_evolve(g, h, 0.7, 2048, &via_oracle) == SW_OK);
  double dist = 0;
  REQUIRE(sw_grid_l2_distance(via_kernel, via_oracle, &dist) == SW_OK);
  CHECK(dist < 1e-5);

  double fid = 0;
  REQUIRE(sw_grid_fidelity(g, g, &fid) == SW_OK);
  CHECK(std::abs(fid - 1.0) < 1e-12);

  sw_grid* dual = nullptr;
  REQUIRE(sw_grid_transform(g, &dual) == SW_OK);
  sw_grid* back = nullptr;
  REQUIRE(sw_grid_transform(dual, &back) == SW_OK);
  REQUIRE(sw_grid_l2_distance(g, back, &dist) == SW_OK);
  CHECK(dist < 1e-12);

  StringGuard text;
  REQUIRE(sw_grid_to_json(g, &text.s) == SW_OK);
  sw_grid* parsed = nullptr;
  REQUIRE(sw_grid_from_json(text.s, &parsed) == SW_OK);
  REQUIRE(sw_grid_l2_distance(g, parsed, &dist) == SW_OK);
  CHECK(dist == 0.0);

  sw_grid_free(parsed);
  sw_grid_free(back);
  sw_grid_free(dual);
  sw_grid_free(via_oracle);
  sw_grid_free(via_kernel);
  sw_kernel_free(k);
  sw_hamiltonian_free(h);
  sw_grid_free(g);
}

TEST_CASE("rep mismatch surfaces as SW_ERR_REP_MISMATCH") {
  sw_hamiltonian* h = nullptr;
  REQUIRE(sw_hamiltonian_oscillator(1.0, 1.0, 1.0, &h) == SW_OK);
  sw_kernel* k = nullptr;
  REQUIRE(sw_kernel_build(h, 0.7, SW_REP_POSITION, &k) == SW_OK);
  sw_grid* g = nullptr;
  REQUIRE(sw_grid_gaussian(-20.0, 20.0, 1024, SW_REP_MOMENTUM, 1.0, 0.0, 0.0,
                           1.0, &g) == SW_OK);
  sw_grid* out = nullptr;
  CHECK(sw_grid_apply_kernel(g, k, &out) == SW_ERR_REP_MISMATCH);
  sw_grid_free(g);
  sw_kernel_free(k);
  sw_hamiltonian_free(h);
}

TEST_CASE("verification through the C surface") {
  sw_hamiltonian* h = nullptr;
  REQUIRE(sw_hamiltonian_oscillator(1.0, 1.0, 1.0, &h) == SW_OK);

  sw_report* r = nullptr;
  REQUIRE(sw_verify_run(h,
                        R"({"times": [0.3], "delta_times": [1e-2, 1e-3],
                            "composition_splits_ignored": 0,
                            "grid_n": 2048, "evolve_steps": 1024})",
                        &r) == SW_OK);
  CHECK(sw_report_overall(r) == 1);
  int count = 0;
  REQUIRE(sw_report_entry_count(r, &count) == SW_OK);
  CHECK(count >= 10);

  StringGuard text;
  REQUIRE(sw_report_to_json(r, &text.s) == SW_OK);
  const auto j = nlohmann::json::parse(text.s);
  CHECK(j["overall"] == true);
  CHECK(j["entries"].is_array());
  sw_report_free(r);

  CHECK(sw_verify_run(h, "not json", &r) == SW_ERR_BAD_FORMAT);
  sw_hamiltonian_free(h);
}

TEST_CASE("version string is present") {
  CHECK(std::strlen(sw_version()) > 0);
}
