#include "schwinger/operator_ordering.hpp"

namespace schwinger {

OrderingRule normal_order_product(std::complex<double> commutator) {
  return OrderingRule{commutator};
}

BilinearCoefficients express_hamiltonian(const QuadraticHamiltonian& h,
                                         const EndpointInversion& inv,
                                         std::complex<double> commutator) {
  // Write H = aQ Q^2 + aR R^2 + g (RQ + QR)/2 + dQ Q + dR R where Q is the
  // endpoint operator of the representation and R its conjugate. Both
  // representations then share one expansion.
  double aQ, aR, g, dQ, dR;
  if (inv.rep == Representation::Momentum) {
    aQ = h.kinetic;
    aR = h.potential;
    g = h.cross;
    dQ = h.linear_p;
    dR = h.linear_x;
  } else {
    aQ = h.potential;
    aR = h.kinetic;
    g = h.cross;
    dQ = h.linear_x;
    dR = h.linear_p;
  }

  // Substitute R(t) = u0 Q(0) + u1 Q(t) + uc into H taken at time t and
  // expand. Wrong-ordered monomials appear once in R(t)^2 (as u0 u1 Q(0)Q(t))
  // and once in R(t)Q(t) (as u0 Q(0)Q(t)); the ordering rule converts each
  // into Q(t)Q(0) plus the scalar commutator.
  const double u0 = inv.u0, u1 = inv.u1, uc = inv.uc;
  const OrderingRule rule = normal_order_product(commutator);

  BilinearCoefficients out;
  out.c_tt = aQ + aR * u1 * u1 + g * u1;
  out.c_t0 = 2.0 * aR * u0 * u1 + g * u0;
  out.c_00 = aR * u0 * u0;
  out.c_t = 2.0 * aR * u1 * uc + g * uc + dQ + dR * u1;
  out.c_0 = 2.0 * aR * u0 * uc + dR * u0;
  out.c_scalar = rule.scalar_term(aR * u0 * u1 + 0.5 * g * u0) +
                 aR * uc * uc + dR * uc;
  return out;
}

EndpointBilinear::EndpointBilinear(const QuadraticHamiltonian& h,
                                   Representation rep)
    : h_(h), rep_(rep) {
  h_.validate();
}

BilinearCoefficients EndpointBilinear::coefficients_at(double t) const {
  const TransferMatrix tm = solve_heisenberg(h_, t);
  const EndpointInversion inv = invert_endpoints(tm, rep_);
  const std::complex<double> comm = endpoint_commutator(tm, h_, rep_);
  return express_hamiltonian(h_, inv, comm);
}

}  // namespace schwinger
