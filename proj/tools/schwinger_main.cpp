// Command-line front end: derive | verify | evolve. Talks to the library
// exclusively through the C API in schwinger.h.
//
// Exit codes: 0 success (verify: all checks passed), 1 verify failure,
// 2 validation/config error, 3 caustic or degenerate kernel.

#include <CLI11.hpp>
#include <json.hpp>

#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <memory>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <schwinger.h>

namespace {

using nlohmann::json;
using ordered_json = nlohmann::ordered_json;

constexpr int kExitOk = 0;
constexpr int kExitVerifyFailed = 1;
constexpr int kExitValidation = 2;
constexpr int kExitDegenerate = 3;

struct HamiltonianHandle {
  sw_hamiltonian* ptr = nullptr;
  ~HamiltonianHandle() { sw_hamiltonian_free(ptr); }
};
struct KernelHandle {
  sw_kernel* ptr = nullptr;
  ~KernelHandle() { sw_kernel_free(ptr); }
};
struct GridHandle {
  sw_grid* ptr = nullptr;
  ~GridHandle() { sw_grid_free(ptr); }
};
struct ReportHandle {
  sw_report* ptr = nullptr;
  ~ReportHandle() { sw_report_free(ptr); }
};

std::string take_string(char* s) {
  std::string out = s ? s : "";
  sw_string_free(s);
  return out;
}

// Every flag mirrors a config-file key of the same name; values given on the
// command line override the file.
struct Options {
  double m = 1.0, omega = 1.0, hbar = 1.0;
  std::optional<double> kinetic, potential, cross, linear_p, linear_x;
  std::string rep = "momentum";
  double t = 0.0;
  std::vector<double> times = {0.3, 0.7, 0.78539816339744831};
  std::vector<double> delta_times = {1e-2, 1e-3, 1e-4};
  double grid_min = -20.0, grid_max = 20.0;
  int grid_n = 4096;
  int steps = -1;  // -1: guard-derived default
  double center_q = 1.0, center_p = 0.0, width = 1.0;
  std::string engine = "oracle";
  std::uint64_t seed = 20260810;
  std::string output;
  std::string kernel_file;
  bool pretty = false;
  bool timings = false;
};

int fail_validation(const std::string& message) {
  std::cerr << "error: " << message << "\n";
  return kExitValidation;
}

int fail_degenerate(const std::string& message) {
  std::cerr << "error: " << message << "\n";
  return kExitDegenerate;
}

// Applies config-file values for keys the user did not pass explicitly.
void merge_config(const json& cfg, CLI::App* cmd, Options& opt) {
  const auto overridden = [&](const std::string& flag) {
    const CLI::Option* o = cmd->get_option_no_throw("--" + flag);
    return o != nullptr && o->count() > 0;
  };
  const auto load_d = [&](const char* key, double& into) {
    if (cfg.contains(key) && !overridden(key)) into = cfg[key].get<double>();
  };
  const auto load_opt = [&](const char* key, const char* flag,
                            std::optional<double>& into) {
    if (cfg.contains(key) && !overridden(flag)) into = cfg[key].get<double>();
  };
  load_d("m", opt.m);
  load_d("omega", opt.omega);
  load_d("hbar", opt.hbar);
  load_opt("kinetic", "kinetic", opt.kinetic);
  load_opt("potential", "potential", opt.potential);
  load_opt("cross", "cross", opt.cross);
  load_opt("linear_p", "linear-p", opt.linear_p);
  load_opt("linear_x", "linear-x", opt.linear_x);
  load_d("t", opt.t);
  load_d("grid_min", opt.grid_min);
  load_d("grid_max", opt.grid_max);
  load_d("center_q", opt.center_q);
  load_d("center_p", opt.center_p);
  load_d("width", opt.width);
  if (cfg.contains("grid_n") && !overridden("grid-n"))
    opt.grid_n = cfg["grid_n"].get<int>();
  if (cfg.contains("steps") && !overridden("steps"))
    opt.steps = cfg["steps"].get<int>();
  if (cfg.contains("rep") && !overridden("rep"))
    opt.rep = cfg["rep"].get<std::string>();
  if (cfg.contains("engine") && !overridden("engine"))
    opt.engine = cfg["engine"].get<std::string>();
  if (cfg.contains("seed") && !overridden("seed"))
    opt.seed = cfg["seed"].get<std::uint64_t>();
  if (cfg.contains("times") && !overridden("times"))
    opt.times = cfg["times"].get<std::vector<double>>();
  if (cfg.contains("delta_times") && !overridden("delta-times"))
    opt.delta_times = cfg["delta_times"].get<std::vector<double>>();
  if (cfg.contains("output") && !overridden("output"))
    opt.output = cfg["output"].get<std::string>();
  if (cfg.contains("kernel_file") && !overridden("kernel-file"))
    opt.kernel_file = cfg["kernel_file"].get<std::string>();
  if (cfg.contains("pretty") && !overridden("pretty"))
    opt.pretty = cfg["pretty"].get<bool>();
  if (cfg.contains("timings") && !overridden("timings"))
    opt.timings = cfg["timings"].get<bool>();
}

int make_hamiltonian(const Options& opt, HamiltonianHandle& h) {
  sw_status st;
  if (opt.kinetic || opt.potential || opt.cross || opt.linear_p ||
      opt.linear_x) {
    st = sw_hamiltonian_create(opt.kinetic.value_or(0.5),
                               opt.potential.value_or(0.0),
                               opt.cross.value_or(0.0),
                               opt.linear_p.value_or(0.0),
                               opt.linear_x.value_or(0.0), opt.hbar, &h.ptr);
  } else {
    st = sw_hamiltonian_oscillator(opt.m, opt.omega, opt.hbar, &h.ptr);
  }
  if (st != SW_OK) return fail_validation(sw_last_error_message());
  return kExitOk;
}

sw_rep rep_of(const Options& opt) {
  return opt.rep == "position" ? SW_REP_POSITION : SW_REP_MOMENTUM;
}

int validate_rep(const Options& opt) {
  if (opt.rep != "momentum" && opt.rep != "position") {
    return fail_validation("--rep must be 'momentum' or 'position'");
  }
  return kExitOk;
}

int write_output(const Options& opt, const std::string& text) {
  if (opt.output.empty()) {
    std::cout << text << "\n";
    return kExitOk;
  }
  std::ofstream out(opt.output);
  if (!out) return fail_validation("cannot open output file " + opt.output);
  out << text << "\n";
  return kExitOk;
}

std::string format_coeff(const sw_kernel* k, sw_kernel_coeff which) {
  double re = 0, im = 0;
  sw_kernel_coefficient(k, which, &re, &im);
  std::ostringstream s;
  s.precision(15);
  if (im == 0.0) {
    s << re;
  } else {
    s << "(" << re << (im < 0 ? " - " : " + ") << std::abs(im) << "i)";
  }
  return s.str();
}

int cmd_derive(const Options& opt) {
  if (int rc = validate_rep(opt); rc != kExitOk) return rc;
  if (!(opt.t > 0.0) || !std::isfinite(opt.t)) {
    return fail_validation("time must be positive");
  }

  HamiltonianHandle h;
  if (int rc = make_hamiltonian(opt, h); rc != kExitOk) return rc;

  KernelHandle k;
  const sw_status st = sw_kernel_build(h.ptr, opt.t, rep_of(opt), &k.ptr);
  if (st == SW_ERR_CAUSTIC || st == SW_ERR_DEGENERATE) {
    return fail_degenerate(sw_last_error_message());
  }
  if (st != SW_OK) return fail_validation(sw_last_error_message());

  char* text = nullptr;
  if (sw_kernel_to_json(k.ptr, &text) != SW_OK) {
    return fail_validation(sw_last_error_message());
  }
  const std::string body = take_string(text);

  if (sw_kernel_is_degenerate(k.ptr)) {
    // Conserved-momentum kernel: delta(p'-p) times a phase. The record is
    // still emitted for inspection; the exit code flags the degeneracy.
    const int rc = write_output(opt, body);
    if (rc != kExitOk) return rc;
    std::cerr << "degenerate kernel: K(p', p) = delta(p' - p) * "
                 "exp(-i E(p) t / hbar) with conserved energy E(p) = "
                 "delta_energy_quad * p^2 + delta_energy_lin * p\n";
    return kExitDegenerate;
  }

  const int rc = write_output(opt, body);
  if (rc != kExitOk) return rc;

  if (opt.pretty) {
    const char* var = rep_of(opt) == SW_REP_MOMENTUM ? "p" : "x";
    std::cout << "\nK(" << var << "', " << var
              << ") = exp(log_norm) * exp( (i/hbar) [ "
              << format_coeff(k.ptr, SW_COEFF_A_TT) << " " << var << "'^2 + "
              << format_coeff(k.ptr, SW_COEFF_A_00) << " " << var << "^2 + "
              << format_coeff(k.ptr, SW_COEFF_A_T0) << " " << var << "'" << var
              << " + " << format_coeff(k.ptr, SW_COEFF_B_T) << " " << var
              << "' + " << format_coeff(k.ptr, SW_COEFF_B_0) << " " << var
              << " + " << format_coeff(k.ptr, SW_COEFF_S) << " ] )\n"
              << "log_norm = " << format_coeff(k.ptr, SW_COEFF_LOG_NORM)
              << "\n";
  }
  return kExitOk;
}

int cmd_verify(const Options& opt) {
  if (int rc = validate_rep(opt); rc != kExitOk) return rc;
  for (double t : opt.times) {
    if (!(t > 0.0)) return fail_validation("times must be strictly positive");
  }

  HamiltonianHandle h;
  if (int rc = make_hamiltonian(opt, h); rc != kExitOk) return rc;

  ordered_json cfg;
  cfg["rep"] = opt.rep;
  cfg["times"] = opt.times;
  cfg["delta_times"] = opt.delta_times;
  cfg["seed"] = opt.seed;
  cfg["grid_n"] = opt.grid_n;
  cfg["grid_half_width"] =
      std::max(std::abs(opt.grid_min), std::abs(opt.grid_max));
  if (opt.steps > 0) cfg["evolve_steps"] = opt.steps;
  cfg["timings"] = opt.timings;

  if (!opt.kernel_file.empty()) {
    std::ifstream in(opt.kernel_file);
    if (!in) {
      return fail_validation("cannot read kernel file " + opt.kernel_file);
    }
    std::stringstream buffer;
    buffer << in.rdbuf();
    const json parsed = json::parse(buffer.str(), nullptr, false);
    if (parsed.is_discarded()) {
      return fail_validation("kernel file is not valid JSON");
    }
    cfg["kernel"] = parsed;
  }

  ReportHandle report;
  const sw_status st = sw_verify_run(h.ptr, cfg.dump().c_str(), &report.ptr);
  if (st != SW_OK) return fail_validation(sw_last_error_message());

  char* text = nullptr;
  if (sw_report_to_json(report.ptr, &text) != SW_OK) {
    return fail_validation(sw_last_error_message());
  }
  if (int rc = write_output(opt, take_string(text)); rc != kExitOk) return rc;
  return sw_report_overall(report.ptr) ? kExitOk : kExitVerifyFailed;
}

int cmd_evolve(const Options& opt, bool steps_given) {
  if (int rc = validate_rep(opt); rc != kExitOk) return rc;
  if (!(opt.t > 0.0) || !std::isfinite(opt.t)) {
    return fail_validation("time must be positive");
  }
  if (steps_given && opt.steps <= 0) {
    return fail_validation("steps must be positive");
  }
  if (opt.engine != "kernel" && opt.engine != "oracle") {
    return fail_validation("--engine must be 'kernel' or 'oracle'");
  }

  HamiltonianHandle h;
  if (int rc = make_hamiltonian(opt, h); rc != kExitOk) return rc;

  GridHandle initial;
  if (sw_grid_gaussian(opt.grid_min, opt.grid_max, opt.grid_n, rep_of(opt),
                       opt.hbar, opt.center_q, opt.center_p, opt.width,
                       &initial.ptr) != SW_OK) {
    return fail_validation(sw_last_error_message());
  }

  GridHandle final_state;
  int steps_used = 0;
  if (opt.engine == "kernel") {
    KernelHandle k;
    const sw_status st = sw_kernel_build(h.ptr, opt.t, rep_of(opt), &k.ptr);
    if (st == SW_ERR_CAUSTIC || st == SW_ERR_DEGENERATE) {
      return fail_degenerate(sw_last_error_message());
    }
    if (st != SW_OK) return fail_validation(sw_last_error_message());
    if (sw_grid_apply_kernel(initial.ptr, k.ptr, &final_state.ptr) != SW_OK) {
      return fail_validation(sw_last_error_message());
    }
  } else {
    steps_used = opt.steps;
    if (steps_used <= 0 &&
        sw_grid_suggested_steps(initial.ptr, h.ptr, opt.t, &steps_used) !=
            SW_OK) {
      return fail_validation(sw_last_error_message());
    }
    const sw_status st =
        sw_grid_evolve(initial.ptr, h.ptr, opt.t, steps_used, &final_state.ptr);
    if (st != SW_OK) return fail_validation(sw_last_error_message());
  }

  double norm = 0.0, fidelity = 0.0;
  sw_grid_norm(final_state.ptr, &norm);
  sw_grid_fidelity(initial.ptr, final_state.ptr, &fidelity);

  char* text = nullptr;
  if (sw_grid_to_json(final_state.ptr, &text) != SW_OK) {
    return fail_validation(sw_last_error_message());
  }
  ordered_json state = ordered_json::parse(take_string(text));
  ordered_json meta;
  meta["engine"] = opt.engine;
  meta["time"] = opt.t;
  meta["steps"] = steps_used;
  meta["norm"] = norm;
  meta["fidelity_to_initial"] = fidelity;
  state["meta"] = std::move(meta);
  return write_output(opt, state.dump(2));
}

void add_common_flags(CLI::App* cmd, Options& opt, std::string& config_path) {
  cmd->add_option("--config", config_path, "JSON config file; flags override");
  cmd->add_option("--m", opt.m, "oscillator mass");
  cmd->add_option("--omega", opt.omega, "oscillator frequency");
  cmd->add_option("--hbar", opt.hbar, "reduced Planck constant");
  auto opt_d = [&](const std::string& name, std::optional<double>& into,
                   const std::string& help) {
    cmd->add_option_function<double>(
        name, [&into](const double& v) { into = v; }, help);
  };
  opt_d("--kinetic", opt.kinetic, "coefficient of P^2");
  opt_d("--potential", opt.potential, "coefficient of X^2");
  opt_d("--cross", opt.cross, "coefficient of (XP+PX)/2");
  opt_d("--linear-p", opt.linear_p, "coefficient of P");
  opt_d("--linear-x", opt.linear_x, "coefficient of X");
  cmd->add_option("--rep", opt.rep, "momentum | position");
  cmd->add_option("--seed", opt.seed, "RNG seed for sampled checks");
  cmd->add_option("--output", opt.output, "write result to file");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{
      "schwinger: momentum- and position-space propagators of quadratic "
      "Hamiltonians, with a grid-evolution oracle and verification suite"};
  app.require_subcommand(1);

  Options opt;
  std::string config_path;

  CLI::App* derive =
      app.add_subcommand("derive", "construct a propagator kernel");
  add_common_flags(derive, opt, config_path);
  derive->add_option("--t", opt.t, "evolution time");
  derive->add_flag("--pretty", opt.pretty,
                   "also print the exponent in human-readable form");

  CLI::App* verify =
      app.add_subcommand("verify", "run the verification suite");
  add_common_flags(verify, opt, config_path);
  verify->add_option("--times", opt.times, "kernel times for the checks");
  verify->add_option("--delta-times", opt.delta_times,
                     "descending delta-limit times");
  verify->add_option("--grid-n", opt.grid_n, "oracle grid size");
  verify->add_option("--grid-min", opt.grid_min, "grid lower edge");
  verify->add_option("--grid-max", opt.grid_max, "grid upper edge");
  verify->add_option("--steps", opt.steps, "oracle step count");
  verify->add_option("--kernel-file", opt.kernel_file,
                     "vet a serialized kernel instead of a fresh build");
  verify->add_flag("--timings", opt.timings,
                   "record wall-clock runtimes in the report (breaks "
                   "byte-reproducibility)");

  CLI::App* evolve =
      app.add_subcommand("evolve", "evolve a Gaussian packet");
  add_common_flags(evolve, opt, config_path);
  evolve->add_option("--t", opt.t, "evolution time");
  evolve->add_option("--engine", opt.engine, "kernel | oracle");
  evolve->add_option("--steps", opt.steps,
                     "oracle step count (default: guard-derived)");
  evolve->add_option("--grid-n", opt.grid_n, "grid size (power of two)");
  evolve->add_option("--grid-min", opt.grid_min, "grid lower edge");
  evolve->add_option("--grid-max", opt.grid_max, "grid upper edge");
  evolve->add_option("--center-q", opt.center_q,
                     "packet center in the grid variable");
  evolve->add_option("--center-p", opt.center_p,
                     "packet center in the conjugate variable");
  evolve->add_option("--width", opt.width, "packet width");

  CLI11_PARSE(app, argc, argv);

  CLI::App* active = derive->parsed()   ? derive
                     : verify->parsed() ? verify
                                        : evolve;

  bool config_steps_present = false;
  if (!config_path.empty()) {
    std::ifstream in(config_path);
    if (!in) return fail_validation("cannot read config file " + config_path);
    std::stringstream buffer;
    buffer << in.rdbuf();
    const json cfg = json::parse(buffer.str(), nullptr, false);
    if (cfg.is_discarded() || !cfg.is_object()) {
      return fail_validation("config file is not a JSON object");
    }
    config_steps_present = cfg.contains("steps");
    merge_config(cfg, active, opt);
  }

  if (derive->parsed()) return cmd_derive(opt);
  if (verify->parsed()) return cmd_verify(opt);
  const bool steps_given =
      evolve->get_option("--steps")->count() > 0 || config_steps_present;
  return cmd_evolve(opt, steps_given);
}
