#pragma once

#include <complex>
#include <vector>

#include "schwinger/closed_forms.hpp"
#include "schwinger/hamiltonian.hpp"
#include "schwinger/kernel_builder.hpp"

namespace schwinger {

/// Uniform grid request: n equally spaced samples on [q_min, q_max) in the
/// given representation. n must be a power of two in [2^8, 2^16].
struct GridSpec {
  double q_min = -20.0;
  double q_max = 20.0;
  int n = 4096;
  Representation rep = Representation::Momentum;
  double hbar = 1.0;
};

/// Complex amplitudes sampled on a uniform grid, normalized so that
/// sum |psi_i|^2 dq = 1. The grid carries hbar because the spectral
/// transforms and packet phases need it.
struct WaveFunctionGrid {
  std::vector<std::complex<double>> samples;
  double q_min = 0.0;
  double dq = 0.0;
  int n = 0;
  Representation rep = Representation::Momentum;
  double hbar = 1.0;

  double q_at(int i) const { return q_min + dq * i; }
  double norm() const;
  std::complex<double> inner_product(const WaveFunctionGrid& other) const;
  double l2_distance(const WaveFunctionGrid& other) const;
  /// Trapezoidal first moment of the grid variable.
  double mean_q() const;
};

/// Normalized Gaussian packet with phase-space center (center, conj_center)
/// expressed in the grid's own variable: amplitude exp(-(q-center)^2/(2 w^2))
/// with the conjugate-variable phase appropriate to the representation.
/// Throws Error(GridTooSmall) when the boundary amplitude exceeds 1e-12
/// relative to the peak.
WaveFunctionGrid gaussian_packet(const GridSpec& spec, double center,
                                 double conj_center, double width);

/// Unitary spectral transforms between the representation pair. The
/// conjugate grid is the centered FFT-dual grid (dk = 2 pi hbar/(n dq)).
WaveFunctionGrid to_momentum(const WaveFunctionGrid& psi);
WaveFunctionGrid to_position(const WaveFunctionGrid& psi);

/// Smallest step count satisfying both phase guards for this state and
/// Hamiltonian, never below ceil(t / 1e-3).
int suggested_min_steps(const WaveFunctionGrid& psi,
                        const QuadraticHamiltonian& h, double t);

/// Strang-split evolution exp(-iV dt/2h) exp(-iT dt/h) exp(-iV dt/2h) per
/// step, with spectral transforms between the half-steps; global error
/// O(dt^2), norm preserved to 1e-10. The symmetrized XP coupling is not
/// diagonal in either representation and is rejected with
/// Error(UnsupportedCoupling). Throws Error(StepCount), with the suggested
/// minimum in the message, when the step guards fail.
WaveFunctionGrid evolve(const WaveFunctionGrid& psi,
                        const QuadraticHamiltonian& h, double t, int steps);

/// phi(q') = int K(q', q) psi(q) dq by trapezoidal quadrature over the grid
/// (evaluated O(n log n) through a Bluestein chirp-z factorization of the
/// Gaussian kernel; identical sum to the direct double loop). Degenerate
/// kernels multiply pointwise by delta_phase. The result is NOT
/// renormalized: norm drift is a diagnostic. Throws Error(RepMismatch) when
/// kernel and state representations differ.
WaveFunctionGrid apply_kernel(const GaussianKernel& k,
                              const WaveFunctionGrid& psi);

/// Same contract for catalog kernels (direct trapezoid sum).
WaveFunctionGrid apply_kernel(const ReferenceKernel& k, double t,
                              const WaveFunctionGrid& psi);

/// Max |d(phase)/dq| * dq of the kernel exponent over the occupied support
/// of psi (amplitudes above 1e-12 of peak). Values past pi/4 indicate the
/// oscillatory integrand is no longer resolved by the grid.
double kernel_phase_resolution(const GaussianKernel& k,
                               const WaveFunctionGrid& psi);

}  // namespace schwinger
