#include "schwinger/reference_evolver.hpp"

#include <fftw3.h>

#include <algorithm>
#include <cmath>
#include <map>
#include <mutex>
#include <sstream>

namespace schwinger {

namespace {

constexpr double kTwoPi = 2.0 * M_PI;
constexpr double kBoundaryTolerance = 1e-12;

bool power_of_two(int n) { return n > 0 && (n & (n - 1)) == 0; }

void validate_grid_size(int n) {
  if (!power_of_two(n) || n < 256 || n > 65536) {
    std::ostringstream msg;
    msg << "grid size must be a power of two in [2^8, 2^16], got " << n;
    throw Error(ErrorCode::InvalidArgument, msg.str());
  }
}

// Serialized access to FFTW: plan creation is not thread-safe, and sharing
// one plan per (size, direction) keeps repeated transforms cheap. Transforms
// copy through the plan's aligned buffer.
class FftEngine {
 public:
  static FftEngine& instance() {
    static FftEngine engine;
    return engine;
  }

  void transform(std::complex<double>* data, int n, int sign) {
    std::lock_guard<std::mutex> lock(mutex_);
    Plan& p = plan_for(n, sign);
    std::copy(data, data + n, reinterpret_cast<std::complex<double>*>(p.buf));
    fftw_execute(p.plan);
    std::copy(reinterpret_cast<std::complex<double>*>(p.buf),
              reinterpret_cast<std::complex<double>*>(p.buf) + n, data);
  }

 private:
  struct Plan {
    fftw_plan plan = nullptr;
    fftw_complex* buf = nullptr;
  };

  Plan& plan_for(int n, int sign) {
    auto key = std::make_pair(n, sign);
    auto it = plans_.find(key);
    if (it != plans_.end()) return it->second;
    Plan p;
    p.buf = fftw_alloc_complex(static_cast<size_t>(n));
    p.plan = fftw_plan_dft_1d(n, p.buf, p.buf, sign, FFTW_ESTIMATE);
    return plans_.emplace(key, p).first->second;
  }

  std::mutex mutex_;
  std::map<std::pair<int, int>, Plan> plans_;
};

void fft_forward(std::vector<std::complex<double>>& v) {
  FftEngine::instance().transform(v.data(), static_cast<int>(v.size()),
                                  FFTW_FORWARD);
}

void fft_backward(std::vector<std::complex<double>>& v) {
  // Unnormalized sum over e^{+2 pi i jl/n}.
  FftEngine::instance().transform(v.data(), static_cast<int>(v.size()),
                                  FFTW_BACKWARD);
}

std::complex<double> polar1(double phase) {
  return {std::cos(phase), std::sin(phase)};
}

// Index range where the amplitude exceeds 1e-12 of the peak.
std::pair<int, int> occupied_range(const WaveFunctionGrid& g) {
  double peak = 0.0;
  for (const auto& v : g.samples) peak = std::max(peak, std::abs(v));
  const double floor = peak * 1e-12;
  int lo = 0, hi = g.n - 1;
  while (lo < g.n - 1 && std::abs(g.samples[lo]) <= floor) ++lo;
  while (hi > 0 && std::abs(g.samples[hi]) <= floor) --hi;
  return {lo, hi};
}

WaveFunctionGrid conjugate_skeleton(const WaveFunctionGrid& g) {
  WaveFunctionGrid out;
  out.n = g.n;
  out.hbar = g.hbar;
  out.dq = kTwoPi * g.hbar / (g.n * g.dq);
  out.q_min = -(g.n / 2) * out.dq;
  out.rep = g.rep == Representation::Momentum ? Representation::Position
                                              : Representation::Momentum;
  out.samples.resize(g.n);
  return out;
}

}  // namespace

double WaveFunctionGrid::norm() const {
  double acc = 0.0;
  for (const auto& v : samples) acc += std::norm(v);
  return std::sqrt(acc * dq);
}

std::complex<double> WaveFunctionGrid::inner_product(
    const WaveFunctionGrid& other) const {
  if (other.n != n) {
    throw Error(ErrorCode::InvalidArgument,
                "inner product requires identical grids");
  }
  std::complex<double> acc = 0.0;
  for (int i = 0; i < n; ++i) acc += std::conj(samples[i]) * other.samples[i];
  return acc * dq;
}

double WaveFunctionGrid::l2_distance(const WaveFunctionGrid& other) const {
  if (other.n != n) {
    throw Error(ErrorCode::InvalidArgument,
                "distance requires identical grids");
  }
  double acc = 0.0;
  for (int i = 0; i < n; ++i) acc += std::norm(samples[i] - other.samples[i]);
  return std::sqrt(acc * dq);
}

double WaveFunctionGrid::mean_q() const {
  double acc = 0.0;
  for (int i = 0; i < n; ++i) {
    const double w = (i == 0 || i == n - 1) ? 0.5 : 1.0;
    acc += w * q_at(i) * std::norm(samples[i]);
  }
  return acc * dq;
}

WaveFunctionGrid gaussian_packet(const GridSpec& spec, double center,
                                 double conj_center, double width) {
  validate_grid_size(spec.n);
  if (!(spec.q_max > spec.q_min)) {
    throw Error(ErrorCode::InvalidArgument, "grid extent must be positive");
  }
  if (!(width > 0.0) || !std::isfinite(width)) {
    throw Error(ErrorCode::InvalidArgument, "packet width must be positive");
  }
  if (!(spec.hbar > 0.0)) {
    throw Error(ErrorCode::InvalidArgument, "hbar must be positive");
  }

  WaveFunctionGrid g;
  g.n = spec.n;
  g.rep = spec.rep;
  g.hbar = spec.hbar;
  g.dq = (spec.q_max - spec.q_min) / spec.n;
  g.q_min = spec.q_min;
  g.samples.resize(spec.n);

  const double edge_lo =
      std::exp(-(spec.q_min - center) * (spec.q_min - center) /
               (2.0 * width * width));
  const double q_last = spec.q_max - g.dq;
  const double edge_hi = std::exp(-(q_last - center) * (q_last - center) /
                                  (2.0 * width * width));
  if (edge_lo > kBoundaryTolerance || edge_hi > kBoundaryTolerance) {
    std::ostringstream msg;
    msg << "packet tail exceeds 1e-12 at the grid boundary (edges "
        << edge_lo << ", " << edge_hi << "); enlarge the grid";
    throw Error(ErrorCode::GridTooSmall, msg.str());
  }

  // Position packets carry exp(+i conj (q - center)/hbar); momentum packets
  // are the exact Fourier transform of that, exp(-i q conj/hbar).
  for (int i = 0; i < g.n; ++i) {
    const double q = g.q_at(i);
    const double envelope =
        std::exp(-(q - center) * (q - center) / (2.0 * width * width));
    const double phase = spec.rep == Representation::Position
                             ? conj_center * (q - center) / g.hbar
                             : -conj_center * q / g.hbar;
    g.samples[i] = envelope * polar1(phase);
  }
  const double nrm = g.norm();
  for (auto& v : g.samples) v /= nrm;
  return g;
}

WaveFunctionGrid to_momentum(const WaveFunctionGrid& psi) {
  if (psi.rep != Representation::Position) {
    throw Error(ErrorCode::RepMismatch,
                "to_momentum expects a position-representation state");
  }
  WaveFunctionGrid out = conjugate_skeleton(psi);
  const double h = psi.hbar;
  const double p_min = out.q_min;
  std::vector<std::complex<double>> work(psi.samples);
  for (int l = 0; l < psi.n; ++l) {
    work[l] *= polar1(-p_min * l * psi.dq / h);
  }
  fft_forward(work);
  const double scale = psi.dq / std::sqrt(kTwoPi * h);
  for (int j = 0; j < out.n; ++j) {
    out.samples[j] = scale * polar1(-out.q_at(j) * psi.q_min / h) * work[j];
  }
  return out;
}

WaveFunctionGrid to_position(const WaveFunctionGrid& phi) {
  if (phi.rep != Representation::Momentum) {
    throw Error(ErrorCode::RepMismatch,
                "to_position expects a momentum-representation state");
  }
  WaveFunctionGrid out = conjugate_skeleton(phi);
  const double h = phi.hbar;
  const double x_min = out.q_min;
  std::vector<std::complex<double>> work(phi.samples);
  for (int j = 0; j < phi.n; ++j) {
    work[j] *= polar1(phi.q_at(j) * x_min / h);
  }
  fft_backward(work);
  const double scale = phi.dq / std::sqrt(kTwoPi * h);
  for (int l = 0; l < out.n; ++l) {
    out.samples[l] = scale * polar1(phi.q_min * l * out.dq / h) * work[l];
  }
  return out;
}

namespace {

// Phase guards over the occupied support of the initial state: the packet
// stays inside the max(|x|, |p|) box for quadratic flows at desk scale.
struct StepGuards {
  double v_max = 0.0;
  double t_max = 0.0;
};

StepGuards step_guards(const WaveFunctionGrid& psi,
                       const QuadraticHamiltonian& h) {
  const WaveFunctionGrid pos =
      psi.rep == Representation::Position ? psi : to_position(psi);
  const WaveFunctionGrid mom =
      psi.rep == Representation::Momentum ? psi : to_momentum(psi);

  auto [xlo, xhi] = occupied_range(pos);
  auto [plo, phi_i] = occupied_range(mom);
  const double x_reach = std::max(std::abs(pos.q_at(xlo)),
                                  std::abs(pos.q_at(xhi)));
  const double p_reach = std::max(std::abs(mom.q_at(plo)),
                                  std::abs(mom.q_at(phi_i)));
  const double reach = std::max(x_reach, p_reach);

  StepGuards g;
  g.v_max = std::abs(h.potential) * reach * reach +
            std::abs(h.linear_x) * reach;
  g.t_max = std::abs(h.kinetic) * reach * reach +
            std::abs(h.linear_p) * reach;
  return g;
}

}  // namespace

int suggested_min_steps(const WaveFunctionGrid& psi,
                        const QuadraticHamiltonian& h, double t) {
  const StepGuards g = step_guards(psi, h);
  double dt_cap = 1e-3;
  if (g.v_max > 0.0) dt_cap = std::min(dt_cap, 0.1 * h.hbar / g.v_max);
  if (g.t_max > 0.0) dt_cap = std::min(dt_cap, 0.5 * h.hbar / g.t_max);
  return std::max(1, static_cast<int>(std::ceil(t / dt_cap)));
}

WaveFunctionGrid evolve(const WaveFunctionGrid& psi,
                        const QuadraticHamiltonian& h, double t, int steps) {
  h.validate();
  if (std::abs(psi.hbar - h.hbar) > 1e-14) {
    throw Error(ErrorCode::InvalidArgument,
                "grid and Hamiltonian disagree on hbar");
  }
  if (h.cross != 0.0) {
    throw Error(ErrorCode::UnsupportedCoupling,
                "the symmetrized XP coupling is not diagonal in either "
                "representation; the split-step oracle does not support it");
  }
  if (!std::isfinite(t) || t < 0.0) {
    throw Error(ErrorCode::InvalidArgument,
                "evolution time must be non-negative");
  }
  if (steps < 1) {
    throw Error(ErrorCode::InvalidArgument, "steps must be at least 1");
  }
  if (t == 0.0) return psi;

  const double dt = t / steps;
  const StepGuards guards = step_guards(psi, h);
  if (dt * guards.v_max / h.hbar >= 0.1 || dt * guards.t_max / h.hbar >= 0.5) {
    std::ostringstream msg;
    msg << "step guard violated (dt V/hbar = " << dt * guards.v_max / h.hbar
        << ", dt T/hbar = " << dt * guards.t_max / h.hbar
        << "); use at least " << suggested_min_steps(psi, h, t) << " steps";
    throw Error(ErrorCode::StepCount, msg.str());
  }

  WaveFunctionGrid pos =
      psi.rep == Representation::Position ? psi : to_position(psi);

  // Diagonal phase factors. The momentum factor acts on the FFT-dual grid of
  // the position state, applied inside the twiddled transform pair.
  const int n = pos.n;
  std::vector<std::complex<double>> half_v(n), full_t(n);
  for (int i = 0; i < n; ++i) {
    const double x = pos.q_at(i);
    half_v[i] =
        polar1(-(h.potential * x * x + h.linear_x * x) * dt / (2.0 * h.hbar));
  }
  WaveFunctionGrid mom_skeleton = conjugate_skeleton(pos);
  for (int j = 0; j < n; ++j) {
    const double p = mom_skeleton.q_at(j);
    full_t[j] = polar1(-(h.kinetic * p * p + h.linear_p * p) * dt / h.hbar);
  }

  for (int s = 0; s < steps; ++s) {
    for (int i = 0; i < n; ++i) pos.samples[i] *= half_v[i];
    WaveFunctionGrid mom = to_momentum(pos);
    for (int j = 0; j < n; ++j) mom.samples[j] *= full_t[j];
    pos = to_position(mom);
    for (int i = 0; i < n; ++i) pos.samples[i] *= half_v[i];
  }

  return psi.rep == Representation::Position ? pos : to_momentum(pos);
}

namespace {

bool effectively_real(std::complex<double> z) {
  return std::abs(z.imag()) <= 1e-14 * (1.0 + std::abs(z.real()));
}

// Trapezoid sum evaluated exactly through the Bluestein factorization
//   e^{i d i j} = e^{i d i^2/2} e^{i d j^2/2} e^{-i d (i-j)^2/2},
// turning the coupling into a linear convolution done with zero-padded FFTs.
WaveFunctionGrid apply_gaussian_chirpz(const GaussianKernel& k,
                                       const WaveFunctionGrid& psi) {
  const int n = psi.n;
  const double h = k.hbar;
  const double q0 = psi.q_min;
  const double dq = psi.dq;
  const double A = k.a_tt.real(), B = k.a_00.real(), C = k.a_t0.real();
  const double bt = k.b_t.real(), b0 = k.b_0.real();

  const double delta = C * dq * dq / h;
  const double omega0 = C * dq * q0 / h;

  int m = 1;
  while (m < 2 * n) m <<= 1;
  std::vector<std::complex<double>> a(m, 0.0), c(m, 0.0);
  for (int j = 0; j < n; ++j) {
    const double q = psi.q_at(j);
    const double w = (j == 0 || j == n - 1) ? 0.5 : 1.0;
    const double phase =
        (B * q * q + b0 * q) / h + omega0 * j + delta * double(j) * j / 2.0;
    a[j] = psi.samples[j] * (w * dq) * polar1(phase);
  }
  for (int i = 0; i < m; ++i) {
    const double lag = static_cast<double>(std::min(i, m - i));
    c[i] = polar1(-delta * lag * lag / 2.0);
  }
  fft_forward(a);
  fft_forward(c);
  for (int i = 0; i < m; ++i) a[i] *= c[i];
  fft_backward(a);
  const double inv_m = 1.0 / m;

  WaveFunctionGrid out = psi;
  const std::complex<double> prefactor =
      std::exp(k.log_norm + std::complex<double>(0.0, k.s.real() / h));
  for (int i = 0; i < n; ++i) {
    const double q = psi.q_at(i);
    const double phase =
        (A * q * q + bt * q + C * q0 * q) / h + delta * double(i) * i / 2.0;
    out.samples[i] = prefactor * polar1(phase) * (a[i] * inv_m);
  }
  return out;
}

}  // namespace

WaveFunctionGrid apply_kernel(const GaussianKernel& k,
                              const WaveFunctionGrid& psi) {
  if (k.rep != psi.rep) {
    throw Error(ErrorCode::RepMismatch,
                "kernel and state representations differ");
  }
  if (std::abs(k.hbar - psi.hbar) > 1e-14) {
    throw Error(ErrorCode::InvalidArgument,
                "kernel and state disagree on hbar");
  }

  if (k.degenerate) {
    WaveFunctionGrid out = psi;
    for (int i = 0; i < psi.n; ++i) {
      out.samples[i] *= k.delta_phase(psi.q_at(i));
    }
    return out;
  }

  if (effectively_real(k.a_tt) && effectively_real(k.a_00) &&
      effectively_real(k.a_t0) && effectively_real(k.b_t) &&
      effectively_real(k.b_0)) {
    return apply_gaussian_chirpz(k, psi);
  }

  // Complex-coefficient kernels (only reachable through hand-edited files):
  // direct trapezoid sum.
  WaveFunctionGrid out = psi;
  for (int i = 0; i < psi.n; ++i) {
    std::complex<double> acc = 0.0;
    for (int j = 0; j < psi.n; ++j) {
      const double w = (j == 0 || j == psi.n - 1) ? 0.5 : 1.0;
      acc += w * evaluate_kernel(k, psi.q_at(i), psi.q_at(j)) *
             psi.samples[j];
    }
    out.samples[i] = acc * psi.dq;
  }
  return out;
}

WaveFunctionGrid apply_kernel(const ReferenceKernel& k, double t,
                              const WaveFunctionGrid& psi) {
  if (k.rep != psi.rep) {
    throw Error(ErrorCode::RepMismatch,
                "kernel and state representations differ");
  }
  if (std::abs(k.hbar - psi.hbar) > 1e-14) {
    throw Error(ErrorCode::InvalidArgument,
                "kernel and state disagree on hbar");
  }

  WaveFunctionGrid out = psi;
  if (k.degenerate) {
    for (int i = 0; i < psi.n; ++i) {
      out.samples[i] *= k.delta_phase(t, psi.q_at(i));
    }
    return out;
  }
  for (int i = 0; i < psi.n; ++i) {
    std::complex<double> acc = 0.0;
    for (int j = 0; j < psi.n; ++j) {
      const double w = (j == 0 || j == psi.n - 1) ? 0.5 : 1.0;
      acc += w * k.evaluate(t, psi.q_at(i), psi.q_at(j)) * psi.samples[j];
    }
    out.samples[i] = acc * psi.dq;
  }
  return out;
}

double kernel_phase_resolution(const GaussianKernel& k,
                               const WaveFunctionGrid& psi) {
  if (k.degenerate) return 0.0;
  auto [lo, hi] = occupied_range(psi);
  const double q_lo = psi.q_at(lo), q_hi = psi.q_at(hi);
  const double q_abs = std::max(std::abs(q_lo), std::abs(q_hi));
  // d(phase)/dq = (2 a_00 q + a_t0 q' + b_0)/hbar over the occupied box.
  const double grad =
      (2.0 * std::abs(k.a_00.real()) * q_abs +
       std::abs(k.a_t0.real()) * q_abs + std::abs(k.b_0.real())) /
      k.hbar;
  return grad * psi.dq;
}

}  // namespace schwinger
