#include "schwinger/closed_forms.hpp"

#include <cmath>
#include <limits>
#include <sstream>

namespace schwinger {

namespace {

void require_positive(double value, const char* name) {
  if (!(value > 0.0) || !std::isfinite(value)) {
    std::ostringstream msg;
    msg << name << " must be positive and finite";
    throw Error(ErrorCode::InvalidArgument, msg.str());
  }
}

void require_valid_time(const ReferenceKernel& k, double t) {
  if (!(t > k.t_min && t < k.t_max)) {
    std::ostringstream msg;
    msg << k.name << " is valid for t in (" << k.t_min << ", " << k.t_max
        << "), got t = " << t;
    throw Error(ErrorCode::InvalidArgument, msg.str());
  }
}

}  // namespace

ReferenceKernel ho_momentum_kernel(double mass, double omega, double hbar) {
  require_positive(mass, "mass");
  require_positive(omega, "omega");
  require_positive(hbar, "hbar");

  ReferenceKernel k;
  k.name = "ho_momentum";
  k.rep = Representation::Momentum;
  k.hbar = hbar;
  k.t_min = 0.0;
  k.t_max = M_PI / omega;
  k.evaluate = [k, mass, omega, hbar](double t, double pe,
                                      double ps) -> std::complex<double> {
    require_valid_time(k, t);
    const double s = std::sin(omega * t), c = std::cos(omega * t);
    const std::complex<double> norm =
        1.0 / std::sqrt(std::complex<double>(0.0, 2.0 * M_PI * hbar * mass *
                                                      omega * s));
    const double phase =
        ((pe * pe + ps * ps) * c - 2.0 * pe * ps) /
        (2.0 * mass * omega * hbar * s);
    return norm * std::exp(std::complex<double>(0.0, phase));
  };
  return k;
}

ReferenceKernel ho_position_kernel(double mass, double omega, double hbar) {
  require_positive(mass, "mass");
  require_positive(omega, "omega");
  require_positive(hbar, "hbar");

  ReferenceKernel k;
  k.name = "ho_position";
  k.rep = Representation::Position;
  k.hbar = hbar;
  k.t_min = 0.0;
  k.t_max = M_PI / omega;
  k.evaluate = [k, mass, omega, hbar](double t, double xe,
                                      double xs) -> std::complex<double> {
    require_valid_time(k, t);
    const double s = std::sin(omega * t), c = std::cos(omega * t);
    const std::complex<double> norm = std::sqrt(
        mass * omega /
        std::complex<double>(0.0, 2.0 * M_PI * hbar * s));
    const double phase = mass * omega *
                         ((xe * xe + xs * xs) * c - 2.0 * xe * xs) /
                         (2.0 * hbar * s);
    return norm * std::exp(std::complex<double>(0.0, phase));
  };
  return k;
}

std::pair<ReferenceKernel, ReferenceKernel> free_particle_kernels(
    double mass, double hbar) {
  require_positive(mass, "mass");
  require_positive(hbar, "hbar");

  ReferenceKernel pos;
  pos.name = "free_position";
  pos.rep = Representation::Position;
  pos.hbar = hbar;
  pos.t_min = 0.0;
  pos.t_max = std::numeric_limits<double>::infinity();
  pos.evaluate = [pos, mass, hbar](double t, double xe,
                                   double xs) -> std::complex<double> {
    require_valid_time(pos, t);
    const std::complex<double> norm =
        std::sqrt(mass / std::complex<double>(0.0, 2.0 * M_PI * hbar * t));
    const double phase = mass * (xe - xs) * (xe - xs) / (2.0 * hbar * t);
    return norm * std::exp(std::complex<double>(0.0, phase));
  };

  ReferenceKernel mom;
  mom.name = "free_momentum";
  mom.rep = Representation::Momentum;
  mom.hbar = hbar;
  mom.t_min = 0.0;
  mom.t_max = std::numeric_limits<double>::infinity();
  mom.degenerate = true;
  mom.delta_phase = [mass, hbar](double t, double p) -> std::complex<double> {
    return std::exp(
        std::complex<double>(0.0, -p * p * t / (2.0 * mass * hbar)));
  };

  return {pos, mom};
}

}  // namespace schwinger
