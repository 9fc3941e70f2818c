#pragma once

#include <complex>
#include <functional>
#include <string>
#include <utility>

#include "schwinger/hamiltonian.hpp"

namespace schwinger {

/// Hand-coded reference kernel, written straight from its final closed form
/// and sharing no code with the construction pipeline, so that agreement
/// between the two is a genuine cross-check.
struct ReferenceKernel {
  std::string name;
  Representation rep = Representation::Momentum;
  double hbar = 1.0;

  /// Validity interval for t (open at both ends unless infinite).
  double t_min = 0.0;
  double t_max = 0.0;

  bool degenerate = false;

  /// (t, q_end, q_start) -> amplitude. Throws Error(InvalidArgument) outside
  /// the validity interval. Unset for degenerate kernels.
  std::function<std::complex<double>(double, double, double)> evaluate;

  /// (t, q) -> phase multiplying delta(q' - q). Set only when degenerate.
  std::function<std::complex<double>(double, double)> delta_phase;

  bool valid_at(double t) const { return t > t_min && t < t_max; }
};

/// Momentum-space oscillator kernel
///   N(t) exp( i[(p'^2+p^2) cos wt - 2 p'p] / (2 m w hbar sin wt) ),
///   N(t) = 1/sqrt(2 pi i hbar m w sin wt),  valid for wt in (0, pi).
ReferenceKernel ho_momentum_kernel(double mass, double omega, double hbar);

/// Position-space oscillator kernel
///   sqrt(m w/(2 pi i hbar sin wt)) exp( i m w[(x'^2+x^2) cos wt - 2 x'x]
///                                        / (2 hbar sin wt) ).
ReferenceKernel ho_position_kernel(double mass, double omega, double hbar);

/// Free-particle pair: position kernel sqrt(m/(2 pi i hbar t))
/// exp(i m (x'-x)^2/(2 hbar t)) and the degenerate momentum kernel
/// delta(p'-p) exp(-i p^2 t/(2 m hbar)).
std::pair<ReferenceKernel, ReferenceKernel> free_particle_kernels(double mass,
                                                                  double hbar);

}  // namespace schwinger
