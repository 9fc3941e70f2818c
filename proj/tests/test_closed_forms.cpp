// Reference kernel catalog. These are hand-coded final formulas; the tests
// pin frozen values computed by hand:
//   - exponent at wt = pi/3, p' = p = 1, m = w = hbar = 1:
//     [(2)(1/2) - 2] / (2 sin(pi/3)) = -1/sqrt(3)
//   - K(0,0) at quarter period = 1/sqrt(2 pi i), magnitude 1/sqrt(2 pi)

#include <doctest.h>

#include <cmath>
#include <complex>

#include "schwinger/closed_forms.hpp"
#include "schwinger/kernel_builder.hpp"
#include "schwinger/verification.hpp"

using namespace schwinger;
using Complex = std::complex<double>;

TEST_CASE("ho_momentum_kernel frozen values") {
  const auto k = ho_momentum_kernel(1.0, 1.0, 1.0);

  SUBCASE("quarter period at the origin: 1/sqrt(2 pi i)") {
    const Complex v = k.evaluate(M_PI / 2, 0.0, 0.0);
    CHECK(std::abs(v - 1.0 / std::sqrt(Complex(0.0, 2.0 * M_PI))) < 1e-15);
    CHECK(std::abs(v) == doctest::Approx(1.0 / std::sqrt(2.0 * M_PI)));
    CHECK(std::arg(v) == doctest::Approx(-M_PI / 4));
  }

  SUBCASE("exponent at wt = pi/3, p' = p = 1 equals -i/sqrt(3)") {
    const double t = M_PI / 3;
    const Complex v = k.evaluate(t, 1.0, 1.0);
    const Complex norm =
        1.0 / std::sqrt(Complex(0.0, 2.0 * M_PI * std::sin(t)));
    const Complex phase = v / norm;
    CHECK(std::abs(std::log(phase) - Complex(0.0, -1.0 / std::sqrt(3.0))) <
          1e-14);
  }

  SUBCASE("matches the pipeline momentum kernel on a 21x21 endpoint grid") {
    const auto h = QuadraticHamiltonian::oscillator(1.0, 1.0, 1.0);
    for (double t : {0.3, M_PI / 4, 1.2}) {
      const auto built = build_kernel(h, t, Representation::Momentum);
      double worst = 0.0;
      for (int i = 0; i <= 20; ++i) {
        for (int j = 0; j <= 20; ++j) {
          const double pe = -2.0 + 0.2 * i, ps = -2.0 + 0.2 * j;
          worst = std::max(worst, std::abs(evaluate_kernel(built, pe, ps) -
                                           k.evaluate(t, pe, ps)));
        }
      }
      CHECK(worst < 1e-10);
    }
  }

  SUBCASE("domain error outside (0, pi/w)") {
    CHECK_THROWS_AS(k.evaluate(M_PI, 0.0, 0.0), Error);
    CHECK_THROWS_AS(k.evaluate(-0.1, 0.0, 0.0), Error);
    CHECK_THROWS_AS(k.evaluate(0.0, 0.0, 0.0), Error);
  }

  SUBCASE("validity scales with omega") {
    const auto k2 = ho_momentum_kernel(1.0, 2.0, 1.0);
    CHECK(k2.valid_at(1.5));
    CHECK(!k2.valid_at(1.8));
  }
}

TEST_CASE("ho_position_kernel") {
  const auto k = ho_position_kernel(1.0, 1.0, 1.0);

  SUBCASE("quarter period at the origin: sqrt(1/(2 pi i))") {
    const Complex v = k.evaluate(M_PI / 2, 0.0, 0.0);
    CHECK(std::abs(v - std::sqrt(1.0 / Complex(0.0, 2.0 * M_PI))) < 1e-15);
  }

  SUBCASE("matches the pipeline position kernel pointwise") {
    const auto h = QuadraticHamiltonian::oscillator(1.0, 1.0, 1.0);
    for (double t : {0.3, 1.0, 2.2}) {
      const auto built = build_kernel(h, t, Representation::Position);
      double worst = 0.0;
      for (int i = 0; i <= 20; ++i) {
        for (int j = 0; j <= 20; ++j) {
          const double xe = -2.0 + 0.2 * i, xs = -2.0 + 0.2 * j;
          worst = std::max(worst, std::abs(evaluate_kernel(built, xe, xs) -
                                           k.evaluate(t, xe, xs)));
        }
      }
      CHECK(worst < 1e-10);
    }
  }
}

TEST_CASE("free particle pair") {
  const auto [pos, mom] = free_particle_kernels(1.0, 1.0);

  SUBCASE("position kernel equals the pipeline free kernel") {
    const auto h = QuadraticHamiltonian::free_particle(1.0, 1.0);
    for (double t : {0.5, 2.0}) {
      const auto built = build_kernel(h, t, Representation::Position);
      double worst = 0.0;
      for (int i = 0; i <= 20; ++i) {
        for (int j = 0; j <= 20; ++j) {
          const double xe = -2.0 + 0.2 * i, xs = -2.0 + 0.2 * j;
          worst = std::max(worst, std::abs(evaluate_kernel(built, xe, xs) -
                                           pos.evaluate(t, xe, xs)));
        }
      }
      CHECK(worst < 1e-12);
    }
  }

  SUBCASE("momentum kernel is the diagonal phase exp(-i p^2 t/(2 m hbar))") {
    CHECK(mom.degenerate);
    for (double t : {0.5, 2.0}) {
      for (double p : {-1.5, 0.0, 2.0}) {
        CHECK(std::abs(mom.delta_phase(t, p) -
                       std::exp(Complex(0.0, -p * p * t / 2.0))) == 0.0);
      }
    }
  }

  SUBCASE("omega -> 0 limit of the oscillator position kernel") {
    const double w = 1e-4, t = 1.0;
    const auto ho = ho_position_kernel(1.0, w, 1.0);
    double worst = 0.0;
    for (double xe : {-1.0, 0.3, 1.7}) {
      for (double xs : {-0.8, 0.0, 1.2}) {
        const Complex a = ho.evaluate(t, xe, xs);
        const Complex b = pos.evaluate(t, xe, xs);
        worst = std::max(worst, std::abs(a - b) / std::abs(b));
      }
    }
    CHECK(worst < 1e-6);
  }

  SUBCASE("invalid parameters") {
    CHECK_THROWS_AS(free_particle_kernels(0.0, 1.0), Error);
    CHECK_THROWS_AS(ho_momentum_kernel(1.0, -1.0, 1.0), Error);
    CHECK_THROWS_AS(ho_position_kernel(1.0, 1.0, 0.0), Error);
  }
}

TEST_CASE("catalog kernels satisfy the Schroedinger equation") {
  const auto h = QuadraticHamiltonian::oscillator(1.0, 1.0, 1.0);

  SUBCASE("momentum catalog kernel") {
    const auto k = ho_momentum_kernel(1.0, 1.0, 1.0);
    const auto eval = [&](double tau, double qe, double qs) {
      return k.evaluate(tau, qe, qs);
    };
    for (double t : {0.4, 1.1}) {
      for (double q : {-1.0, 0.5}) {
        CHECK(schwinger::schrodinger_residual(eval, h,
                                              Representation::Momentum, t, q,
                                              -q) < 1e-4);
      }
    }
  }

  SUBCASE("position catalog kernel") {
    const auto k = ho_position_kernel(1.0, 1.0, 1.0);
    const auto eval = [&](double tau, double qe, double qs) {
      return k.evaluate(tau, qe, qs);
    };
    for (double t : {0.4, 1.1}) {
      for (double q : {-1.0, 0.5}) {
        CHECK(schwinger::schrodinger_residual(eval, h,
                                              Representation::Position, t, q,
                                              -q) < 1e-4);
      }
    }
  }
}
