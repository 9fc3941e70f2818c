#pragma once

#include <complex>

#include "schwinger/hamiltonian.hpp"
#include "schwinger/phase_dynamics.hpp"

namespace schwinger {

/// Rewrite rule for a wrong-ordered endpoint product:
///
///   Q(0) Q(t)  ->  Q(t) Q(0) + [Q(0), Q(t)]
///
/// The commutator is a pure scalar for linear dynamics, so applying the rule
/// moves coefficient * commutator into the c-number part of the expression.
struct OrderingRule {
  std::complex<double> commutator;

  std::complex<double> scalar_term(std::complex<double> coefficient) const {
    return coefficient * commutator;
  }
};

OrderingRule normal_order_product(std::complex<double> commutator);

/// Coefficients of the normal-ordered bilinear over the monomial basis
/// {Q(t)^2, Q(t)Q(0), Q(0)^2, Q(t), Q(0), 1}. No Q(0)Q(t) monomial exists in
/// the basis by construction. For real Hamiltonians all coefficients are
/// real except c_scalar, whose imaginary part is the hbar-dependent ordering
/// remnant.
struct BilinearCoefficients {
  std::complex<double> c_tt, c_t0, c_00;
  std::complex<double> c_t, c_0;
  std::complex<double> c_scalar;
};

/// Substitutes the endpoint inversion into H, expands the quadratic form and
/// normal-orders every wrong-ordered monomial with `commutator`. Replacing
/// the operators by commuting classical variables (commutator -> 0)
/// reproduces the classical Hamiltonian expressed through the endpoint
/// values of Q.
BilinearCoefficients express_hamiltonian(const QuadraticHamiltonian& h,
                                         const EndpointInversion& inv,
                                         std::complex<double> commutator);

/// The ordered Hamiltonian as a function of elapsed time: evaluating at t
/// runs solve -> invert -> commutator -> express on demand. Coefficients are
/// exact closed forms in t (compositions of the trig/hyperbolic transfer
/// entries and rational operations), finite between caustics.
class EndpointBilinear {
 public:
  EndpointBilinear(const QuadraticHamiltonian& h, Representation rep);

  /// Throws Error(DegenerateMap) at caustic times.
  BilinearCoefficients coefficients_at(double t) const;

  Representation rep() const { return rep_; }
  const QuadraticHamiltonian& hamiltonian() const { return h_; }

 private:
  QuadraticHamiltonian h_;
  Representation rep_;
};

}  // namespace schwinger
