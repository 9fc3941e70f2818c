#pragma once

#include <complex>

#include "schwinger/operator_ordering.hpp"

namespace schwinger {

/// Quadratic exponent of the kernel, prior to normalization:
///
///   K ~ exp( (i/hbar) [ a_tt q'^2 + a_00 q^2 + a_t0 q' q
///                       + b_t q' + b_0 q + s ] )
///
/// where q' is the endpoint variable at time t and q the one at time 0.
/// Coefficients equal minus the time integral of the ordered c-number
/// Hamiltonian, with the per-monomial integration constants pinned by the
/// endpoint derivative conditions.
struct ExponentForm {
  std::complex<double> a_tt, a_00, a_t0;
  std::complex<double> b_t, b_0, s;
  Representation rep = Representation::Momentum;
  double time = 0.0;
  double hbar = 1.0;
};

/// Integrates the ordered Hamiltonian over (0, t). The quadratic and linear
/// coefficients come out in closed form; the scalar classical part is done
/// by adaptive Gauss-Kronrod quadrature to relative tolerance 1e-12. Throws
/// Error(Caustic) if the coefficient functions have a pole inside (0, t).
ExponentForm integrate_exponent(const EndpointBilinear& bilinear, double t);

/// Log of the prefactor N(t), fixed by three constraints: endpoint
/// independence (the derivative conditions), the Schroedinger equation in t,
/// and the delta-function initial condition. For a Gaussian exponent these
/// force
///
///   N(t) = sqrt( -a_t0 / (2 pi i hbar) )
///
/// on the principal branch; for the standard oscillator in momentum
/// representation this is 1/sqrt(2 pi i hbar m w sin(w t)).
std::complex<double> determine_normalization(const ExponentForm& exponent,
                                             const QuadraticHamiltonian& h,
                                             double t);

/// Gaussian propagator between momentum (or position) eigenstates:
///
///   K(q', q) = exp( log_norm + (i/hbar)(a_tt q'^2 + a_00 q^2 + a_t0 q' q
///                                       + b_t q' + b_0 q + s) )
///
/// Degenerate kernels (conserved momentum) are delta distributions times a
/// phase and carry the conserved-energy polynomial instead of Gaussian
/// coefficients.
struct GaussianKernel {
  std::complex<double> a_tt, a_00, a_t0;
  std::complex<double> b_t, b_0, s;
  std::complex<double> log_norm;
  Representation rep = Representation::Momentum;
  double time = 0.0;
  double hbar = 1.0;

  bool degenerate = false;
  /// E(q) = energy_quad q^2 + energy_lin q for the conserved variable.
  double energy_quad = 0.0;
  double energy_lin = 0.0;

  /// Phase multiplying delta(q' - q): exp(-i E(q) t / hbar).
  std::complex<double> delta_phase(double q) const;
};

/// Full pipeline: solve_heisenberg -> invert_endpoints -> ordering ->
/// integrate_exponent -> determine_normalization. Returns a degenerate
/// kernel when the evolved variable is conserved (free particle in momentum
/// representation); throws Error(Caustic) at or past the first caustic and
/// Error(DegenerateMap) for shear/affine momentum maps whose kernel is a
/// displaced delta (out of scope).
GaussianKernel build_kernel(const QuadraticHamiltonian& h, double t,
                            Representation rep);

/// Evaluates a non-degenerate kernel at the given endpoints; the exponent is
/// accumulated in the log domain and exponentiated once. Throws
/// Error(DegenerateMap) for degenerate kernels (use delta_phase instead).
std::complex<double> evaluate_kernel(const GaussianKernel& k, double q_end,
                                     double q_start);

}  // namespace schwinger
