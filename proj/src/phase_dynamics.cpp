#include "schwinger/phase_dynamics.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace schwinger {

namespace {

// Scalar shape functions of the 2x2 exponential. With the flow generator
// G = [[c, 2a], [-2b, -c]] one has G^2 = -disc * I, disc = 4ab - c^2, so
//
//   exp(G t) = c0(t) I + c1(t) G,        int_0^t exp(G s) ds = i0 I + i1 G,
//
// with c0/c1/i0/i1 trigonometric, hyperbolic or polynomial in t depending on
// the sign of disc. A band of 1e-12 around disc = 0 selects the polynomial
// branch to keep the switchover continuous.
struct FlowShape {
  double c0, c1, i0, i1;
};

FlowShape flow_shape(double disc, double t) {
  constexpr double kBand = 1e-12;
  FlowShape f{};
  if (disc > kBand) {
    const double w = std::sqrt(disc);
    f.c0 = std::cos(w * t);
    f.c1 = std::sin(w * t) / w;
    f.i0 = std::sin(w * t) / w;
    f.i1 = (1.0 - std::cos(w * t)) / disc;
  } else if (disc < -kBand) {
    const double k = std::sqrt(-disc);
    f.c0 = std::cosh(k * t);
    f.c1 = std::sinh(k * t) / k;
    f.i0 = std::sinh(k * t) / k;
    f.i1 = (std::cosh(k * t) - 1.0) / (-disc);
  } else {
    f.c0 = 1.0;
    f.c1 = t;
    f.i0 = t;
    f.i1 = 0.5 * t * t;
  }
  return f;
}

}  // namespace

TransferMatrix solve_heisenberg(const QuadraticHamiltonian& h, double t) {
  h.validate();
  if (!std::isfinite(t) || t < 0.0) {
    throw Error(ErrorCode::InvalidArgument,
                "evolution time must be finite and non-negative");
  }

  const double a = h.kinetic, b = h.potential, c = h.cross;
  const FlowShape f = flow_shape(h.discriminant(), t);

  TransferMatrix tm;
  tm.m11 = f.c0 + f.c1 * c;
  tm.m12 = f.c1 * 2.0 * a;
  tm.m21 = f.c1 * (-2.0 * b);
  tm.m22 = f.c0 - f.c1 * c;
  // Drift r(t) = (int_0^t exp(G s) ds) (d, -e).
  const double ux = h.linear_p, up = -h.linear_x;
  tm.drift_x = (f.i0 + f.i1 * c) * ux + (f.i1 * 2.0 * a) * up;
  tm.drift_p = (f.i1 * (-2.0 * b)) * ux + (f.i0 - f.i1 * c) * up;
  tm.time = t;
  return tm;
}

std::complex<double> endpoint_commutator(const TransferMatrix& tm,
                                         const QuadraticHamiltonian& h,
                                         Representation rep) {
  // [X(0), P(0)] = i hbar and linearity give
  //   momentum: [P(0), P(t)] = m21 [P(0), X(0)] = -i hbar m21
  //   position: [X(0), X(t)] = m12 [X(0), P(0)] = +i hbar m12
  const double factor =
      rep == Representation::Momentum ? -tm.m21 : tm.m12;
  return std::complex<double>(0.0, h.hbar * factor);
}

EndpointInversion invert_endpoints(const TransferMatrix& tm,
                                   Representation rep) {
  EndpointInversion inv;
  inv.rep = rep;
  if (rep == Representation::Momentum) {
    // Solve P(t) = m21 X(0) + m22 P(0) + drift_p for X(0), then X(t).
    if (std::abs(tm.m21) < kDegeneracyThreshold) {
      std::ostringstream msg;
      msg << "endpoint inversion is degenerate in momentum representation "
             "(|m21| = "
          << std::abs(tm.m21)
          << " < 1e-12): the kernel is a delta distribution, not a Gaussian";
      throw Error(ErrorCode::DegenerateMap, msg.str());
    }
    // X(0) = (P(t) - m22 P(0) - drift_p)/m21
    inv.v0 = -tm.m22 / tm.m21;
    inv.v1 = 1.0 / tm.m21;
    inv.vc = -tm.drift_p / tm.m21;
    // X(t) = m11 X(0) + m12 P(0) + drift_x, det M = 1 collapses the P(0)
    // coefficient to -1/m21.
    inv.u0 = -1.0 / tm.m21;
    inv.u1 = tm.m11 / tm.m21;
    inv.uc = tm.drift_x - tm.m11 * tm.drift_p / tm.m21;
  } else {
    if (std::abs(tm.m12) < kDegeneracyThreshold) {
      std::ostringstream msg;
      msg << "endpoint inversion is degenerate in position representation "
             "(|m12| = "
          << std::abs(tm.m12) << " < 1e-12): caustic time";
      throw Error(ErrorCode::DegenerateMap, msg.str());
    }
    // P(0) = (X(t) - m11 X(0) - drift_x)/m12
    inv.v0 = -tm.m11 / tm.m12;
    inv.v1 = 1.0 / tm.m12;
    inv.vc = -tm.drift_x / tm.m12;
    // P(t) = (m22 X(t) - X(0))/m12 + (drift_p - m22 drift_x / m12)
    inv.u0 = -1.0 / tm.m12;
    inv.u1 = tm.m22 / tm.m12;
    inv.uc = tm.drift_p - tm.m22 * tm.drift_x / tm.m12;
  }
  return inv;
}

double conserved_energy_check(const TransferMatrix& tm,
                              const QuadraticHamiltonian& h) {
  // Quadratic form of H over (X, P): A = [[b, c/2], [c/2, a]].
  const double a = h.kinetic, b = h.potential, c2 = 0.5 * h.cross;
  const double A[2][2] = {{b, c2}, {c2, a}};
  const double M[2][2] = {{tm.m11, tm.m12}, {tm.m21, tm.m22}};

  double residual = 0.0;
  for (int i = 0; i < 2; ++i) {
    for (int j = 0; j < 2; ++j) {
      double mam = 0.0;
      for (int k = 0; k < 2; ++k) {
        for (int l = 0; l < 2; ++l) {
          mam += M[k][i] * A[k][l] * M[l][j];
        }
      }
      residual = std::max(residual, std::abs(mam - A[i][j]));
    }
  }
  return residual;
}

}  // namespace schwinger
