#pragma once

#include <complex>

#include "schwinger/hamiltonian.hpp"

namespace schwinger {

/// Entries below this magnitude count as exactly zero when deciding whether
/// an endpoint inversion (and hence a Gaussian kernel) exists.
inline constexpr double kDegeneracyThreshold = 1e-12;

/// Linear phase-space map produced by a quadratic Hamiltonian:
///
///   X(t) = m11 X(0) + m12 P(0) + drift_x
///   P(t) = m21 X(0) + m22 P(0) + drift_p
///
/// The homogeneous block is symplectic (det M = 1); the drifts come from the
/// linear coefficients of H.
struct TransferMatrix {
  double m11 = 1.0, m12 = 0.0;
  double m21 = 0.0, m22 = 1.0;
  double drift_x = 0.0, drift_p = 0.0;
  double time = 0.0;

  double det() const { return m11 * m22 - m12 * m21; }
};

/// Closed-form solution of the Heisenberg equations for H at elapsed time t,
/// via the 2x2 exponential of the flow generator [[c, 2a], [-2b, -c]].
TransferMatrix solve_heisenberg(const QuadraticHamiltonian& h, double t);

/// Scalar commutator [Q(0), Q(t)] of the endpoint operators of `rep`:
/// -i hbar m21 for momentum, +i hbar m12 for position. For the standard
/// oscillator in momentum representation this is +i hbar m w sin(w t).
std::complex<double> endpoint_commutator(const TransferMatrix& tm,
                                         const QuadraticHamiltonian& h,
                                         Representation rep);

/// Coefficients expressing the complementary operator R (X in momentum
/// representation, P in position representation) at both endpoints through
/// the endpoint pair {Q(0), Q(t)}:
///
///   R(t) = u0 Q(0) + u1 Q(t) + uc
///   R(0) = v0 Q(0) + v1 Q(t) + vc
struct EndpointInversion {
  Representation rep = Representation::Momentum;
  double u0 = 0.0, u1 = 0.0, uc = 0.0;
  double v0 = 0.0, v1 = 0.0, vc = 0.0;
};

/// Solves the transfer relations for the complementary operators. Throws
/// Error(DegenerateMap) when the required off-diagonal entry vanishes
/// (conserved momentum, or a caustic time): the kernel is then a
/// distribution, not a Gaussian.
EndpointInversion invert_endpoints(const TransferMatrix& tm,
                                   Representation rep);

/// Max-norm of M^T A M - A, where A is the symmetric quadratic-form matrix
/// of H over (X, P). Zero means the quadratic form of H is conserved by the
/// flow, i.e. H(t) = H(0) for the autonomous system.
double conserved_energy_check(const TransferMatrix& tm,
                              const QuadraticHamiltonian& h);

}  // namespace schwinger
