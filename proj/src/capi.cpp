#include "schwinger.h"

#include <cstring>
#include <new>
#include <string>

#include <json.hpp>

#include "schwinger/hamiltonian.hpp"
#include "schwinger/kernel_builder.hpp"
#include "schwinger/reference_evolver.hpp"
#include "schwinger/serialization.hpp"
#include "schwinger/verification.hpp"

struct sw_hamiltonian {
  schwinger::QuadraticHamiltonian value;
};
struct sw_kernel {
  schwinger::GaussianKernel value;
};
struct sw_grid {
  schwinger::WaveFunctionGrid value;
};
struct sw_report {
  schwinger::VerificationReport value;
};

namespace {

thread_local std::string g_last_error;

sw_status status_for(const schwinger::Error& e) {
  using schwinger::ErrorCode;
  switch (e.code()) {
    case ErrorCode::InvalidArgument: return SW_ERR_INVALID_ARGUMENT;
    case ErrorCode::DegenerateMap: return SW_ERR_DEGENERATE;
    case ErrorCode::Caustic: return SW_ERR_CAUSTIC;
    case ErrorCode::BranchCut: return SW_ERR_BRANCH;
    case ErrorCode::RepMismatch: return SW_ERR_REP_MISMATCH;
    case ErrorCode::GridTooSmall: return SW_ERR_GRID;
    case ErrorCode::StepCount: return SW_ERR_STEP_COUNT;
    case ErrorCode::UnsupportedCoupling: return SW_ERR_UNSUPPORTED;
    case ErrorCode::BadFormat: return SW_ERR_BAD_FORMAT;
  }
  return SW_ERR_INTERNAL;
}

// Runs fn, translating exceptions into status codes and the thread-local
// error message.
template <typename Fn>
sw_status guarded(Fn&& fn) {
  try {
    return fn();
  } catch (const schwinger::Error& e) {
    g_last_error = e.what();
    return status_for(e);
  } catch (const std::bad_alloc&) {
    g_last_error = "out of memory";
    return SW_ERR_INTERNAL;
  } catch (const std::exception& e) {
    g_last_error = e.what();
    return SW_ERR_INTERNAL;
  }
}

sw_status null_pointer() {
  g_last_error = "null pointer argument";
  return SW_ERR_NULL_POINTER;
}

char* copy_string(const std::string& s) {
  char* out = new char[s.size() + 1];
  std::memcpy(out, s.c_str(), s.size() + 1);
  return out;
}

schwinger::Representation to_rep(sw_rep rep) {
  return rep == SW_REP_MOMENTUM ? schwinger::Representation::Momentum
                                : schwinger::Representation::Position;
}

}  // namespace

extern "C" {

const char* sw_version(void) { return "1.0.0"; }

const char* sw_last_error_message(void) { return g_last_error.c_str(); }

void sw_string_free(char* s) { delete[] s; }

sw_status sw_hamiltonian_create(double kinetic, double potential, double cross,
                                double linear_p, double linear_x, double hbar,
                                sw_hamiltonian** out) {
  if (!out) return null_pointer();
  *out = nullptr;
  return guarded([&]() {
    schwinger::QuadraticHamiltonian h;
    h.kinetic = kinetic;
    h.potential = potential;
    h.cross = cross;
    h.linear_p = linear_p;
    h.linear_x = linear_x;
    h.hbar = hbar;
    h.validate();
    *out = new sw_hamiltonian{h};
    return SW_OK;
  });
}

sw_status sw_hamiltonian_oscillator(double mass, double omega, double hbar,
                                    sw_hamiltonian** out) {
  if (!out) return null_pointer();
  *out = nullptr;
  return guarded([&]() {
    if (!(mass > 0.0)) {
      throw schwinger::Error(schwinger::ErrorCode::InvalidArgument,
                             "mass must be positive");
    }
    if (omega < 0.0) {
      throw schwinger::Error(schwinger::ErrorCode::InvalidArgument,
                             "omega must be non-negative");
    }
    *out = new sw_hamiltonian{
        schwinger::QuadraticHamiltonian::oscillator(mass, omega, hbar)};
    return SW_OK;
  });
}

sw_status sw_hamiltonian_free_particle(double mass, double hbar,
                                       sw_hamiltonian** out) {
  return sw_hamiltonian_oscillator(mass, 0.0, hbar, out);
}

void sw_hamiltonian_free(sw_hamiltonian* h) { delete h; }

sw_status sw_kernel_build(const sw_hamiltonian* h, double t, sw_rep rep,
                          sw_kernel** out) {
  if (!h || !out) return null_pointer();
  *out = nullptr;
  return guarded([&]() {
    *out = new sw_kernel{schwinger::build_kernel(h->value, t, to_rep(rep))};
    return SW_OK;
  });
}

void sw_kernel_free(sw_kernel* k) { delete k; }

int sw_kernel_is_degenerate(const sw_kernel* k) {
  return k && k->value.degenerate ? 1 : 0;
}

sw_status sw_kernel_eval(const sw_kernel* k, double q_end, double q_start,
                         double* out_re, double* out_im) {
  if (!k || !out_re || !out_im) return null_pointer();
  return guarded([&]() {
    const auto v = schwinger::evaluate_kernel(k->value, q_end, q_start);
    *out_re = v.real();
    *out_im = v.imag();
    return SW_OK;
  });
}

sw_status sw_kernel_delta_phase(const sw_kernel* k, double q, double* out_re,
                                double* out_im) {
  if (!k || !out_re || !out_im) return null_pointer();
  return guarded([&]() {
    const auto v = k->value.delta_phase(q);
    *out_re = v.real();
    *out_im = v.imag();
    return SW_OK;
  });
}

sw_status sw_kernel_coefficient(const sw_kernel* k, sw_kernel_coeff which,
                                double* out_re, double* out_im) {
  if (!k || !out_re || !out_im) return null_pointer();
  std::complex<double> v;
  switch (which) {
    case SW_COEFF_A_TT: v = k->value.a_tt; break;
    case SW_COEFF_A_00: v = k->value.a_00; break;
    case SW_COEFF_A_T0: v = k->value.a_t0; break;
    case SW_COEFF_B_T: v = k->value.b_t; break;
    case SW_COEFF_B_0: v = k->value.b_0; break;
    case SW_COEFF_S: v = k->value.s; break;
    case SW_COEFF_LOG_NORM: v = k->value.log_norm; break;
    default:
      g_last_error = "unknown coefficient selector";
      return SW_ERR_INVALID_ARGUMENT;
  }
  *out_re = v.real();
  *out_im = v.imag();
  return SW_OK;
}

sw_status sw_kernel_time(const sw_kernel* k, double* out) {
  if (!k || !out) return null_pointer();
  *out = k->value.time;
  return SW_OK;
}

sw_status sw_kernel_rep(const sw_kernel* k, sw_rep* out) {
  if (!k || !out) return null_pointer();
  *out = k->value.rep == schwinger::Representation::Momentum
             ? SW_REP_MOMENTUM
             : SW_REP_POSITION;
  return SW_OK;
}

sw_status sw_kernel_to_json(const sw_kernel* k, char** out) {
  if (!k || !out) return null_pointer();
  *out = nullptr;
  return guarded([&]() {
    *out = copy_string(schwinger::kernel_to_json(k->value));
    return SW_OK;
  });
}

sw_status sw_kernel_from_json(const char* text, sw_kernel** out) {
  if (!text || !out) return null_pointer();
  *out = nullptr;
  return guarded([&]() {
    *out = new sw_kernel{schwinger::kernel_from_json(text)};
    return SW_OK;
  });
}

sw_status sw_grid_gaussian(double q_min, double q_max, int n, sw_rep rep,
                           double hbar, double center, double conj_center,
                           double width, sw_grid** out) {
  if (!out) return null_pointer();
  *out = nullptr;
  return guarded([&]() {
    schwinger::GridSpec spec{q_min, q_max, n, to_rep(rep), hbar};
    *out = new sw_grid{
        schwinger::gaussian_packet(spec, center, conj_center, width)};
    return SW_OK;
  });
}

void sw_grid_free(sw_grid* g) { delete g; }

sw_status sw_grid_size(const sw_grid* g, int* out) {
  if (!g || !out) return null_pointer();
  *out = g->value.n;
  return SW_OK;
}

sw_status sw_grid_norm(const sw_grid* g, double* out) {
  if (!g || !out) return null_pointer();
  *out = g->value.norm();
  return SW_OK;
}

sw_status sw_grid_fidelity(const sw_grid* a, const sw_grid* b, double* out) {
  if (!a || !b || !out) return null_pointer();
  return guarded([&]() {
    *out = std::abs(a->value.inner_product(b->value));
    return SW_OK;
  });
}

sw_status sw_grid_l2_distance(const sw_grid* a, const sw_grid* b,
                              double* out) {
  if (!a || !b || !out) return null_pointer();
  return guarded([&]() {
    *out = a->value.l2_distance(b->value);
    return SW_OK;
  });
}

sw_status sw_grid_suggested_steps(const sw_grid* g, const sw_hamiltonian* h,
                                  double t, int* out) {
  if (!g || !h || !out) return null_pointer();
  return guarded([&]() {
    *out = schwinger::suggested_min_steps(g->value, h->value, t);
    return SW_OK;
  });
}

sw_status sw_grid_evolve(const sw_grid* g, const sw_hamiltonian* h, double t,
                         int steps, sw_grid** out) {
  if (!g || !h || !out) return null_pointer();
  *out = nullptr;
  return guarded([&]() {
    const int effective =
        steps > 0 ? steps
                  : schwinger::suggested_min_steps(g->value, h->value, t);
    *out = new sw_grid{schwinger::evolve(g->value, h->value, t, effective)};
    return SW_OK;
  });
}

sw_status sw_grid_apply_kernel(const sw_grid* g, const sw_kernel* k,
                               sw_grid** out) {
  if (!g || !k || !out) return null_pointer();
  *out = nullptr;
  return guarded([&]() {
    *out = new sw_grid{schwinger::apply_kernel(k->value, g->value)};
    return SW_OK;
  });
}

sw_status sw_grid_transform(const sw_grid* g, sw_grid** out) {
  if (!g || !out) return null_pointer();
  *out = nullptr;
  return guarded([&]() {
    *out = new sw_grid{g->value.rep == schwinger::Representation::Position
                           ? schwinger::to_momentum(g->value)
                           : schwinger::to_position(g->value)};
    return SW_OK;
  });
}

sw_status sw_grid_to_json(const sw_grid* g, char** out) {
  if (!g || !out) return null_pointer();
  *out = nullptr;
  return guarded([&]() {
    *out = copy_string(schwinger::grid_to_json(g->value));
    return SW_OK;
  });
}

sw_status sw_grid_from_json(const char* text, sw_grid** out) {
  if (!text || !out) return null_pointer();
  *out = nullptr;
  return guarded([&]() {
    *out = new sw_grid{schwinger::grid_from_json(text)};
    return SW_OK;
  });
}

sw_status sw_verify_run(const sw_hamiltonian* h, const char* config_json,
                        sw_report** out) {
  if (!h || !out) return null_pointer();
  *out = nullptr;
  return guarded([&]() {
    schwinger::SuiteConfig config;
    if (config_json && *config_json) {
      const auto j = nlohmann::json::parse(config_json, nullptr, false);
      if (j.is_discarded() || !j.is_object()) {
        throw schwinger::Error(schwinger::ErrorCode::BadFormat,
                               "verify config is not a JSON object");
      }
      if (j.contains("rep")) {
        config.rep = schwinger::representation_from_string(
            j["rep"].get<std::string>());
      }
      if (j.contains("times")) {
        config.times = j["times"].get<std::vector<double>>();
      }
      if (j.contains("delta_times")) {
        config.delta_times = j["delta_times"].get<std::vector<double>>();
      }
      if (j.contains("seed")) {
        config.seed = j["seed"].get<std::uint64_t>();
      }
      if (j.contains("grid_n")) {
        config.grid_n = j["grid_n"].get<int>();
      }
      if (j.contains("grid_half_width")) {
        config.grid_half_width = j["grid_half_width"].get<double>();
      }
      if (j.contains("evolve_steps")) {
        config.evolve_steps = j["evolve_steps"].get<int>();
      }
      if (j.contains("timings")) {
        config.measure_runtimes = j["timings"].get<bool>();
      }
      if (j.contains("kernel")) {
        config.kernel_override =
            schwinger::kernel_from_json(j["kernel"].dump());
      }
    }
    *out = new sw_report{schwinger::run_suite(h->value, config)};
    return SW_OK;
  });
}

void sw_report_free(sw_report* r) { delete r; }

int sw_report_overall(const sw_report* r) {
  return r && r->value.overall ? 1 : 0;
}

sw_status sw_report_entry_count(const sw_report* r, int* out) {
  if (!r || !out) return null_pointer();
  *out = static_cast<int>(r->value.entries.size());
  return SW_OK;
}

sw_status sw_report_to_json(const sw_report* r, char** out) {
  if (!r || !out) return null_pointer();
  *out = nullptr;
  return guarded([&]() {
    *out = copy_string(schwinger::report_to_json(r->value));
    return SW_OK;
  });
}

}  // extern "C"
