#pragma once

#include <cmath>

#include "schwinger/errors.hpp"

namespace schwinger {

/// Which variable labels the kernel endpoints: momentum (the primary mode)
/// or position (the cross-validation mode).
enum class Representation { Momentum, Position };

const char* representation_name(Representation rep) noexcept;

/// One-dimensional quadratic Hamiltonian
///
///   H = kinetic * P^2 + potential * X^2 + cross * (XP + PX)/2
///     + linear_p * P + linear_x * X
///
/// together with the value of hbar in the working unit system. The standard
/// oscillator is kinetic = 1/(2m), potential = m w^2/2; a free particle keeps
/// only the kinetic term.
struct QuadraticHamiltonian {
  double kinetic = 0.5;
  double potential = 0.0;
  double cross = 0.0;
  double linear_p = 0.0;
  double linear_x = 0.0;
  double hbar = 1.0;

  static QuadraticHamiltonian oscillator(double mass, double omega,
                                         double hbar = 1.0);
  static QuadraticHamiltonian free_particle(double mass, double hbar = 1.0);

  /// Throws Error(InvalidArgument) unless all coefficients are finite,
  /// kinetic > 0 and hbar > 0.
  void validate() const;

  /// Discriminant 4ab - c^2 of the classical flow generator; its sign picks
  /// the trigonometric / hyperbolic / polynomial solution branch.
  double discriminant() const {
    return 4.0 * kinetic * potential - cross * cross;
  }

  /// True when P commutes with H (momentum-space kernel is a delta times a
  /// phase): no potential, no XP coupling, no linear X term.
  bool conserves_momentum() const {
    return potential == 0.0 && cross == 0.0 && linear_x == 0.0;
  }

  /// True for H of the plain oscillator/free form a P^2 + b X^2 with b >= 0.
  bool is_standard_form() const {
    return cross == 0.0 && linear_p == 0.0 && linear_x == 0.0 &&
           potential >= 0.0;
  }

  /// Mass and frequency read back from the standard form.
  double mass() const { return 1.0 / (2.0 * kinetic); }
  double omega() const { return std::sqrt(discriminant()); }

  /// First caustic time pi/sqrt(disc) for oscillatory flows; +inf otherwise.
  double first_caustic_time() const;

  bool operator==(const QuadraticHamiltonian&) const = default;
};

}  // namespace schwinger
