#pragma once

#include <string>

#include "schwinger/kernel_builder.hpp"
#include "schwinger/reference_evolver.hpp"
#include "schwinger/verification.hpp"

namespace schwinger {

/// JSON layouts (stable key order, round-trip double precision):
///
/// kernel:  { "schema": "schwinger.kernel/1", "rep", "time", "hbar",
///            "degenerate", "a_tt": [re, im], "a_00", "a_t0", "b_t", "b_0",
///            "s", "log_norm", "delta_energy_quad", "delta_energy_lin" }
/// state:   { "schema": "schwinger.state/1", "rep", "hbar", "x_min", "dx",
///            "n", "samples": [[re, im], ...] }
/// report:  { "schema": "schwinger.report/1", "suite_version",
///            "hamiltonian": {...}, "entries": [...], "overall" }

std::string kernel_to_json(const GaussianKernel& k, int indent = 2);
GaussianKernel kernel_from_json(const std::string& text);

std::string grid_to_json(const WaveFunctionGrid& g, int indent = 2);
WaveFunctionGrid grid_from_json(const std::string& text);

std::string report_to_json(const VerificationReport& r, int indent = 2);

std::string hamiltonian_to_json(const QuadraticHamiltonian& h, int indent = 2);
QuadraticHamiltonian hamiltonian_from_json(const std::string& text);

Representation representation_from_string(const std::string& name);

}  // namespace schwinger
