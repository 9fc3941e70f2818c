#include "schwinger/hamiltonian.hpp"

#include <cmath>
#include <limits>
#include <sstream>

namespace schwinger {

const char* error_code_name(ErrorCode code) noexcept {
  switch (code) {
    case ErrorCode::InvalidArgument: return "invalid-argument";
    case ErrorCode::DegenerateMap: return "degenerate-map";
    case ErrorCode::Caustic: return "caustic";
    case ErrorCode::BranchCut: return "branch-cut";
    case ErrorCode::RepMismatch: return "rep-mismatch";
    case ErrorCode::GridTooSmall: return "grid-too-small";
    case ErrorCode::StepCount: return "step-count";
    case ErrorCode::UnsupportedCoupling: return "unsupported-coupling";
    case ErrorCode::BadFormat: return "bad-format";
  }
  return "unknown";
}

const char* representation_name(Representation rep) noexcept {
  return rep == Representation::Momentum ? "momentum" : "position";
}

QuadraticHamiltonian QuadraticHamiltonian::oscillator(double mass,
                                                      double omega,
                                                      double hbar) {
  QuadraticHamiltonian h;
  h.kinetic = 1.0 / (2.0 * mass);
  h.potential = 0.5 * mass * omega * omega;
  h.hbar = hbar;
  h.validate();
  return h;
}

QuadraticHamiltonian QuadraticHamiltonian::free_particle(double mass,
                                                         double hbar) {
  return oscillator(mass, 0.0, hbar);
}

void QuadraticHamiltonian::validate() const {
  const double coeffs[] = {kinetic, potential, cross, linear_p, linear_x,
                           hbar};
  for (double c : coeffs) {
    if (!std::isfinite(c)) {
      throw Error(ErrorCode::InvalidArgument,
                  "Hamiltonian coefficients must be finite");
    }
  }
  if (kinetic <= 0.0) {
    throw Error(ErrorCode::InvalidArgument,
                "kinetic coefficient must be positive (the endpoint "
                "inversion needs a nondegenerate kinetic term)");
  }
  if (hbar <= 0.0) {
    throw Error(ErrorCode::InvalidArgument, "hbar must be positive");
  }
}

double QuadraticHamiltonian::first_caustic_time() const {
  const double disc = discriminant();
  if (disc > 0.0) {
    return M_PI / std::sqrt(disc);
  }
  return std::numeric_limits<double>::infinity();
}

}  // namespace schwinger
