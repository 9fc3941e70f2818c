#include "schwinger/kernel_builder.hpp"

#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <cmath>
#include <sstream>

namespace schwinger {

namespace {

constexpr double kTwoPi = 2.0 * M_PI;

void require_before_first_caustic(const QuadraticHamiltonian& h, double t) {
  const double t_caustic = h.first_caustic_time();
  if (t >= t_caustic * (1.0 - 1e-15)) {
    std::ostringstream msg;
    msg << "time " << t << " is at or past the first caustic ("
        << t_caustic
        << "); the exponent coefficients have a pole inside (0, t) and the "
           "Gaussian kernel does not exist there";
    throw Error(ErrorCode::Caustic, msg.str());
  }
}

// Classical scalar of the ordered Hamiltonian at tau: the drift-induced
// c-number part aR uc(tau)^2 + dR uc(tau). Vanishes identically when the
// Hamiltonian has no linear terms.
double classical_scalar(const QuadraticHamiltonian& h, Representation rep,
                        double tau) {
  if (h.linear_p == 0.0 && h.linear_x == 0.0) return 0.0;
  const TransferMatrix tm = solve_heisenberg(h, tau);
  const EndpointInversion inv = invert_endpoints(tm, rep);
  const double aR =
      rep == Representation::Momentum ? h.potential : h.kinetic;
  const double dR =
      rep == Representation::Momentum ? h.linear_x : h.linear_p;
  return aR * inv.uc * inv.uc + dR * inv.uc;
}

}  // namespace

ExponentForm integrate_exponent(const EndpointBilinear& bilinear, double t) {
  const QuadraticHamiltonian& h = bilinear.hamiltonian();
  const Representation rep = bilinear.rep();
  if (!std::isfinite(t) || t <= 0.0) {
    throw Error(ErrorCode::InvalidArgument, "time must be positive");
  }
  require_before_first_caustic(h, t);

  const TransferMatrix tm = solve_heisenberg(h, t);
  const EndpointInversion inv = invert_endpoints(tm, rep);

  // Per-coefficient antiderivative of -H_c. The integration constants of the
  // endpoint-dependent monomials are pinned by the derivative conditions
  //   dS/dq' = -eps * r_cl(t),   dS/dq = +eps * r_cl(0),
  // (eps = -1 momentum, +1 position), which collapse the integrals to the
  // inversion coefficients themselves. The purely scalar classical part has
  // no closed form once drifts are present and is integrated numerically.
  const double eps = rep == Representation::Momentum ? -1.0 : 1.0;

  ExponentForm ex;
  ex.rep = rep;
  ex.time = t;
  ex.hbar = h.hbar;
  ex.a_tt = eps * inv.u1 / 2.0;
  ex.a_t0 = eps * inv.u0;
  ex.a_00 = -eps * inv.v0 / 2.0;
  ex.b_t = eps * inv.uc;
  ex.b_0 = -eps * inv.vc;

  if (h.linear_p == 0.0 && h.linear_x == 0.0) {
    ex.s = 0.0;
  } else {
    using boost::math::quadrature::gauss_kronrod;
    const auto integrand = [&](double tau) {
      return classical_scalar(h, rep, tau);
    };
    const double value = gauss_kronrod<double, 15>::integrate(
        integrand, 0.0, t, 12, 1e-12);
    ex.s = -value;
  }
  return ex;
}

std::complex<double> determine_normalization(const ExponentForm& exponent,
                                             const QuadraticHamiltonian& h,
                                             double t) {
  require_before_first_caustic(h, t);
  const std::complex<double> neg_a_t0 = -exponent.a_t0;
  if (std::abs(neg_a_t0) < kDegeneracyThreshold) {
    throw Error(ErrorCode::DegenerateMap,
                "mixed exponent coefficient vanishes; the kernel degenerates "
                "and has no finite normalization");
  }
  // log N = (1/2) Log( -a_t0 / (2 pi i hbar) ), principal branch. Between
  // caustics -a_t0 keeps one sign, so the branch cut is never crossed; the
  // Fresnel orientation exp(-i pi/4 sign) falls out of the principal Log.
  const std::complex<double> i_unit(0.0, 1.0);
  return 0.5 * std::log(neg_a_t0 / (kTwoPi * i_unit * h.hbar));
}

std::complex<double> GaussianKernel::delta_phase(double q) const {
  if (!degenerate) {
    throw Error(ErrorCode::InvalidArgument,
                "delta_phase is defined only for degenerate kernels");
  }
  const double energy = energy_quad * q * q + energy_lin * q;
  return std::exp(std::complex<double>(0.0, -energy * time / hbar));
}

GaussianKernel build_kernel(const QuadraticHamiltonian& h, double t,
                            Representation rep) {
  h.validate();
  if (!std::isfinite(t) || t <= 0.0) {
    throw Error(ErrorCode::InvalidArgument, "time must be positive");
  }

  GaussianKernel k;
  k.rep = rep;
  k.time = t;
  k.hbar = h.hbar;

  if (rep == Representation::Momentum && h.potential == 0.0) {
    if (h.conserves_momentum()) {
      // P(t) = P(0): the kernel is delta(p'-p) exp(-i E(p) t/hbar) with the
      // conserved energy E(p) = a p^2 + d p.
      k.degenerate = true;
      k.energy_quad = h.kinetic;
      k.energy_lin = h.linear_p;
      return k;
    }
    // b = 0 with cross or linear_x nonzero: P(t) = m22 P(0) + drift, a
    // scaled/displaced delta. Not expressible in this kernel family.
    throw Error(ErrorCode::DegenerateMap,
                "momentum map is affine but momentum is not conserved; the "
                "kernel is a displaced delta distribution and is out of "
                "scope");
  }

  const EndpointBilinear bilinear(h, rep);
  const ExponentForm ex = integrate_exponent(bilinear, t);
  k.a_tt = ex.a_tt;
  k.a_00 = ex.a_00;
  k.a_t0 = ex.a_t0;
  k.b_t = ex.b_t;
  k.b_0 = ex.b_0;
  k.s = ex.s;
  k.log_norm = determine_normalization(ex, h, t);
  return k;
}

std::complex<double> evaluate_kernel(const GaussianKernel& k, double q_end,
                                     double q_start) {
  if (k.degenerate) {
    throw Error(ErrorCode::DegenerateMap,
                "kernel is delta(q'-q) times a phase; evaluate via "
                "delta_phase");
  }
  const std::complex<double> i_over_hbar(0.0, 1.0 / k.hbar);
  const std::complex<double> exponent =
      k.log_norm +
      i_over_hbar * (k.a_tt * q_end * q_end + k.a_00 * q_start * q_start +
                     k.a_t0 * q_end * q_start + k.b_t * q_end +
                     k.b_0 * q_start + k.s);
  return std::exp(exponent);
}

}  // namespace schwinger
