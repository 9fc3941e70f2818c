#include "schwinger/serialization.hpp"

#include <json.hpp>

namespace schwinger {

namespace {

using ordered_json = nlohmann::ordered_json;

ordered_json complex_pair(std::complex<double> z) {
  return ordered_json::array({z.real(), z.imag()});
}

std::complex<double> complex_from(const ordered_json& j, const char* key) {
  if (!j.contains(key) || !j[key].is_array() || j[key].size() != 2 ||
      !j[key][0].is_number() || !j[key][1].is_number()) {
    throw Error(ErrorCode::BadFormat,
                std::string("expected [re, im] pair for key '") + key + "'");
  }
  return {j[key][0].get<double>(), j[key][1].get<double>()};
}

double number_from(const ordered_json& j, const char* key) {
  if (!j.contains(key) || !j[key].is_number()) {
    throw Error(ErrorCode::BadFormat,
                std::string("expected number for key '") + key + "'");
  }
  return j[key].get<double>();
}

ordered_json parse(const std::string& text) {
  ordered_json j = ordered_json::parse(text, nullptr, false);
  if (j.is_discarded()) {
    throw Error(ErrorCode::BadFormat, "input is not valid JSON");
  }
  return j;
}

ordered_json hamiltonian_json(const QuadraticHamiltonian& h) {
  ordered_json j;
  j["kinetic"] = h.kinetic;
  j["potential"] = h.potential;
  j["cross"] = h.cross;
  j["linear_p"] = h.linear_p;
  j["linear_x"] = h.linear_x;
  j["hbar"] = h.hbar;
  return j;
}

}  // namespace

Representation representation_from_string(const std::string& name) {
  if (name == "momentum") return Representation::Momentum;
  if (name == "position") return Representation::Position;
  throw Error(ErrorCode::BadFormat,
              "representation must be 'momentum' or 'position', got '" +
                  name + "'");
}

std::string kernel_to_json(const GaussianKernel& k, int indent) {
  ordered_json j;
  j["schema"] = "schwinger.kernel/1";
  j["rep"] = representation_name(k.rep);
  j["time"] = k.time;
  j["hbar"] = k.hbar;
  j["degenerate"] = k.degenerate;
  j["a_tt"] = complex_pair(k.a_tt);
  j["a_00"] = complex_pair(k.a_00);
  j["a_t0"] = complex_pair(k.a_t0);
  j["b_t"] = complex_pair(k.b_t);
  j["b_0"] = complex_pair(k.b_0);
  j["s"] = complex_pair(k.s);
  j["log_norm"] = complex_pair(k.log_norm);
  j["delta_energy_quad"] = k.energy_quad;
  j["delta_energy_lin"] = k.energy_lin;
  return j.dump(indent);
}

GaussianKernel kernel_from_json(const std::string& text) {
  const ordered_json j = parse(text);
  if (!j.contains("schema") || j["schema"] != "schwinger.kernel/1") {
    throw Error(ErrorCode::BadFormat, "missing or unknown kernel schema");
  }
  GaussianKernel k;
  if (!j.contains("rep") || !j["rep"].is_string()) {
    throw Error(ErrorCode::BadFormat, "kernel is missing 'rep'");
  }
  k.rep = representation_from_string(j["rep"].get<std::string>());
  k.time = number_from(j, "time");
  k.hbar = number_from(j, "hbar");
  if (!j.contains("degenerate") || !j["degenerate"].is_boolean()) {
    throw Error(ErrorCode::BadFormat, "kernel is missing 'degenerate'");
  }
  k.degenerate = j["degenerate"].get<bool>();
  k.a_tt = complex_from(j, "a_tt");
  k.a_00 = complex_from(j, "a_00");
  k.a_t0 = complex_from(j, "a_t0");
  k.b_t = complex_from(j, "b_t");
  k.b_0 = complex_from(j, "b_0");
  k.s = complex_from(j, "s");
  k.log_norm = complex_from(j, "log_norm");
  k.energy_quad = number_from(j, "delta_energy_quad");
  k.energy_lin = number_from(j, "delta_energy_lin");
  if (!(k.time > 0.0) || !(k.hbar > 0.0)) {
    throw Error(ErrorCode::BadFormat,
                "kernel time and hbar must be positive");
  }
  return k;
}

std::string grid_to_json(const WaveFunctionGrid& g, int indent) {
  ordered_json j;
  j["schema"] = "schwinger.state/1";
  j["rep"] = representation_name(g.rep);
  j["hbar"] = g.hbar;
  j["x_min"] = g.q_min;
  j["dx"] = g.dq;
  j["n"] = g.n;
  ordered_json samples = ordered_json::array();
  for (const auto& v : g.samples) samples.push_back(complex_pair(v));
  j["samples"] = std::move(samples);
  return j.dump(indent);
}

WaveFunctionGrid grid_from_json(const std::string& text) {
  const ordered_json j = parse(text);
  if (!j.contains("schema") || j["schema"] != "schwinger.state/1") {
    throw Error(ErrorCode::BadFormat, "missing or unknown state schema");
  }
  WaveFunctionGrid g;
  g.rep = representation_from_string(j.value("rep", std::string()));
  g.hbar = number_from(j, "hbar");
  g.q_min = number_from(j, "x_min");
  g.dq = number_from(j, "dx");
  if (!j.contains("n") || !j["n"].is_number_integer()) {
    throw Error(ErrorCode::BadFormat, "state is missing integer 'n'");
  }
  g.n = j["n"].get<int>();
  if (!j.contains("samples") || !j["samples"].is_array() ||
      static_cast<int>(j["samples"].size()) != g.n) {
    throw Error(ErrorCode::BadFormat, "state samples do not match n");
  }
  g.samples.reserve(g.n);
  for (const auto& item : j["samples"]) {
    if (!item.is_array() || item.size() != 2) {
      throw Error(ErrorCode::BadFormat, "sample entries must be [re, im]");
    }
    g.samples.emplace_back(item[0].get<double>(), item[1].get<double>());
  }
  return g;
}

std::string hamiltonian_to_json(const QuadraticHamiltonian& h, int indent) {
  return hamiltonian_json(h).dump(indent);
}

QuadraticHamiltonian hamiltonian_from_json(const std::string& text) {
  const ordered_json j = parse(text);
  QuadraticHamiltonian h;
  h.kinetic = number_from(j, "kinetic");
  h.potential = number_from(j, "potential");
  h.cross = number_from(j, "cross");
  h.linear_p = number_from(j, "linear_p");
  h.linear_x = number_from(j, "linear_x");
  h.hbar = number_from(j, "hbar");
  h.validate();
  return h;
}

std::string report_to_json(const VerificationReport& r, int indent) {
  ordered_json j;
  j["schema"] = "schwinger.report/1";
  j["suite_version"] = r.suite_version;
  j["hamiltonian"] = hamiltonian_json(r.hamiltonian);
  ordered_json entries = ordered_json::array();
  for (const auto& e : r.entries) {
    ordered_json ej;
    ej["check_name"] = e.check_name;
    ej["residual"] = e.residual;
    ej["threshold"] = e.threshold;
    ej["passed"] = e.passed;
    ej["skipped"] = e.skipped;
    ej["note"] = e.note;
    ej["runtime_ms"] = e.runtime_ms;
    entries.push_back(std::move(ej));
  }
  j["entries"] = std::move(entries);
  j["overall"] = r.overall;
  return j.dump(indent);
}

}  // namespace schwinger
