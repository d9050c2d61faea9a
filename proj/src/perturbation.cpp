// SPDX-License-Identifier: Apache-2.0
#include "icecav/perturbation.hpp"

#include <array>
#include <cmath>
#include <numbers>

namespace icecav {
namespace {

constexpr double kPi = std::numbers::pi;
constexpr Complex kI(0.0, 1.0);

double membrane_inertia(const MaterialParams& mat) { return mat.rho_m * mat.thickness; }

// Interpolation stencils (offsets in steps relative to the left end of the interval).
constexpr std::array<std::array<int, 4>, 3> kStencils = {{{0, 1, 2, 3}, {-1, 0, 1, 2}, {-2, -1, 0, 1}}};

double lagrange(const std::array<int, 4>& nodes, int m, double sigma) {
  double v = 1.0;
  for (int l = 0; l < 4; ++l) {
    if (l != m) v *= (sigma - nodes[l]) / static_cast<double>(nodes[m] - nodes[l]);
  }
  return v;
}

struct StepWeights {
  double phi11, phi12, phi21, phi22;
  // [stencil][node]: contributions of the source samples to y and y'.
  std::array<std::array<double, 4>, 3> wy;
  std::array<std::array<double, 4>, 3> wv;
};

StepWeights step_weights(const OscillatorKernel& g, double h) {
  StepWeights w{};
  const double gh = g.value(h);
  const double dgh = g.derivative(h);
  w.phi11 = dgh + 2.0 * g.damping() * gh;
  w.phi12 = gh;
  w.phi21 = -g.omega0_sq() * gh;
  w.phi22 = dgh;
  static const QuadratureRule<double> rule = gauss_legendre<double>(8);
  for (std::size_t s = 0; s < kStencils.size(); ++s) {
    for (int m = 0; m < 4; ++m) {
      w.wy[s][m] = h * rule.integrate(
                           [&](double sigma) {
                             return g.value(h * (1.0 - sigma)) * lagrange(kStencils[s], m, sigma);
                           },
                           0.0, 1.0);
      w.wv[s][m] = h * rule.integrate(
                           [&](double sigma) {
                             return g.derivative(h * (1.0 - sigma)) *
                                    lagrange(kStencils[s], m, sigma);
                           },
                           0.0, 1.0);
    }
  }
  return w;
}

// exp(i x) - 1 - i x, accurate for small x.
Complex expm1_minus_linear(double x) {
  if (std::abs(x) > 1e-2) return std::polar(1.0, x) - 1.0 - kI * x;
  Complex term = 1.0;
  Complex sum = 0.0;
  for (int k = 1; k <= 12; ++k) {
    term *= kI * x / static_cast<double>(k);
    if (k >= 2) sum += term;
  }
  return sum;
}

}  // namespace

OscillatorKernel::OscillatorKernel(double damping, double omega0_sq)
    : a_(damping), w0sq_(omega0_sq) {
  if (!(damping >= 0.0) || !(omega0_sq >= 0.0)) {
    throw DomainError("OscillatorKernel: damping and stiffness must be non-negative");
  }
  const double disc = omega0_sq - damping * damping;
  rate_ = std::sqrt(std::abs(disc));
  kind_ = disc > 0.0 ? Kind::under : (disc < 0.0 ? Kind::over : Kind::critical);
}

std::pair<double, double> OscillatorKernel::undamped_pair(double t) const {
  switch (kind_) {
    case Kind::under:
      return {std::cos(rate_ * t), std::sin(rate_ * t) / rate_};
    case Kind::over:
      return {std::cosh(rate_ * t), std::sinh(rate_ * t) / rate_};
    case Kind::critical:
      break;
  }
  return {1.0, t};
}

double OscillatorKernel::value(double t) const {
  if (t < 0.0) return 0.0;
  return std::exp(-a_ * t) * undamped_pair(t).second;
}

double OscillatorKernel::derivative(double t) const {
  if (t < 0.0) return 0.0;
  const auto [c, s] = undamped_pair(t);
  return std::exp(-a_ * t) * (c - a_ * s);
}

OscillatorKernel cavity_kernel(const CavityMode& n, const MaterialParams& mat) {
  return OscillatorKernel(0.0, -mat.c * mat.c * n.lambda);
}

OscillatorKernel membrane_kernel(const MembraneMode& k, const MaterialParams& mat) {
  return OscillatorKernel(mat.alpha, -mat.c_m * mat.c_m * k.gamma);
}

Complex membrane_amplitude_qs(const CavityGeometry& geom, const MaterialParams& mat,
                              const Stimulus& stim, const MembraneMode& k, End end) {
  const double w = stim.omega;
  const Complex drive = stim.end_amplitude(end, geom.length) * membrane_integral(geom, k);
  const Complex denom(-w * w - mat.c_m * mat.c_m * k.gamma, 2.0 * mat.alpha * w);
  return -drive / (membrane_inertia(mat) * denom);
}

MembraneAmplitudes membrane_amplitudes_qs(const ModeSet& set, const CavityGeometry& geom,
                                          const MaterialParams& mat, const Stimulus& stim) {
  const auto nk = static_cast<Eigen::Index>(set.membrane.size());
  MembraneAmplitudes amps;
  amps.zero.resize(nk);
  amps.length.resize(nk);
  const double w = stim.omega;
  const Complex p0 = stim.end_amplitude(End::zero, geom.length);
  const Complex pl = stim.end_amplitude(End::length, geom.length);
  for (Eigen::Index j = 0; j < nk; ++j) {
    const MembraneMode& k = set.membrane[j];
    const Complex denom(-w * w - mat.c_m * mat.c_m * k.gamma, 2.0 * mat.alpha * w);
    const Complex scale = -set.membrane_integrals[j] / (membrane_inertia(mat) * denom);
    amps.zero[j] = p0 * scale;
    amps.length[j] = pl * scale;
  }
  return amps;
}

Complex resonance_function(double omega_n, double omega, double t) {
  if (omega_n == 0.0) return Complex(1.0, omega * t);
  return Complex(std::cos(omega_n * t), omega * std::sin(omega_n * t) / omega_n);
}

Complex resonance_function(const CavityMode& n, const MaterialParams& mat, const Stimulus& stim,
                           double t) {
  return resonance_function(n.omega(mat.c), stim.omega, t);
}

Complex resonance_quotient(double omega_n, double omega, double t) {
  if (omega_n == 0.0) {
    return expm1_minus_linear(omega * t) / (omega * omega);
  }
  const double denom = omega * omega - omega_n * omega_n;
  if (std::abs(denom) < 1e-6 * omega * omega) {
    const double delta = omega - omega_n;
    const Complex e = std::polar(1.0, omega_n * t);
    const double s = std::sin(omega_n * t) / omega_n;
    const Complex n1 = kI * (t * e - s);
    const Complex n2 = -t * t * e;
    const Complex n3 = -kI * t * t * t * e;
    return (n1 + n2 * (delta / 2.0) + n3 * (delta * delta / 6.0)) / (2.0 * omega_n + delta);
  }
  return (std::polar(1.0, omega * t) - resonance_function(omega_n, omega, t)) / denom;
}

Eigen::VectorXcd surface_projection(const ModeSet& set, const MembraneAmplitudes& amps) {
  if (set.membrane.empty() || set.cavity.empty()) {
    throw DomainError("surface_projection: truncation set is empty");
  }
  return set.overlap_zero * amps.zero + set.overlap_length * amps.length;
}

Complex pressure_amplitude(const ModeSet& set, Eigen::Index index, const MaterialParams& mat,
                           const Stimulus& stim, const MembraneAmplitudes& amps, double t) {
  if (set.membrane.empty()) {
    throw DomainError("pressure_amplitude: truncation set is empty");
  }
  if (index < 0 || index >= static_cast<Eigen::Index>(set.cavity.size())) {
    throw DomainError("pressure_amplitude: cavity mode index out of range");
  }
  const Complex s = (set.overlap_zero.row(index) * amps.zero).value() +
                    (set.overlap_length.row(index) * amps.length).value();
  const double w = stim.omega;
  const double c2 = mat.c * mat.c;
  return mat.rho0 * c2 * w * w * s *
         resonance_quotient(set.cavity[index].omega(mat.c), w, t);
}

Eigen::VectorXcd pressure_amplitudes(const ModeSet& set, const MaterialParams& mat,
                                     const Stimulus& stim, const MembraneAmplitudes& amps,
                                     double t) {
  const Eigen::VectorXcd s = surface_projection(set, amps);
  const double w = stim.omega;
  const double scale = mat.rho0 * mat.c * mat.c * w * w;
  Eigen::VectorXcd out(s.size());
  for (Eigen::Index i = 0; i < s.size(); ++i) {
    out[i] = scale * s[i] * resonance_quotient(set.cavity[i].omega(mat.c), w, t);
  }
  return out;
}

void TimeGrid::validate() const {
  if (!(t_end > 0.0) || !std::isfinite(t_end)) {
    throw ConfigError("time window must be positive");
  }
  if (samples < 4) throw ConfigError("time grid needs at least 4 samples");
}

FieldSnapshot FieldHistory::snapshot(int j) const {
  return FieldSnapshot{grid.at(j), pressure.col(j), membrane_zero.col(j), membrane_length.col(j)};
}

ConvolutionResult convolve(const std::vector<OscillatorKernel>& kernels,
                           const Eigen::MatrixXcd& source, const TimeGrid& grid) {
  grid.validate();
  if (static_cast<Eigen::Index>(kernels.size()) != source.rows() ||
      source.cols() != grid.samples) {
    throw DomainError("convolve: source shape does not match kernels and grid");
  }
  const int n = grid.samples;
  const double h = grid.step();
  ConvolutionResult out;
  out.value = Eigen::MatrixXcd::Zero(source.rows(), n);
  out.derivative = Eigen::MatrixXcd::Zero(source.rows(), n);
  for (Eigen::Index i = 0; i < source.rows(); ++i) {
    const StepWeights w = step_weights(kernels[i], h);
    Complex y = 0.0;
    Complex v = 0.0;
    for (int j = 0; j + 1 < n; ++j) {
      const std::size_t s = j == 0 ? 0 : (j + 2 < n ? 1 : 2);
      Complex fy = 0.0;
      Complex fv = 0.0;
      for (int m = 0; m < 4; ++m) {
        const Complex src = source(i, j + kStencils[s][m]);
        fy += w.wy[s][m] * src;
        fv += w.wv[s][m] * src;
      }
      const Complex y_next = w.phi11 * y + w.phi12 * v + fy;
      const Complex v_next = w.phi21 * y + w.phi22 * v + fv;
      y = y_next;
      v = v_next;
      out.value(i, j + 1) = y;
      out.derivative(i, j + 1) = v;
    }
  }
  return out;
}

double fastest_frequency(const ModeSet& set, const MaterialParams& mat, const Stimulus& stim) {
  double fastest = stim.omega;
  for (const auto& n : set.cavity) fastest = std::max(fastest, n.omega(mat.c));
  for (const auto& k : set.membrane) {
    const OscillatorKernel h = membrane_kernel(k, mat);
    if (h.underdamped()) fastest = std::max(fastest, h.rate());
  }
  return fastest;
}

void check_resolution(const TimeGrid& grid, const ModeSet& set, const MaterialParams& mat,
                      const Stimulus& stim, double samples_per_period) {
  grid.validate();
  const double fastest = fastest_frequency(set, mat, stim);
  const double needed_step = 2.0 * kPi / (samples_per_period * fastest);
  if (grid.step() > needed_step) {
    const auto needed = static_cast<long>(std::ceil(grid.t_end / needed_step)) + 1;
    throw GridResolutionError("time grid too coarse: " + std::to_string(grid.samples) +
                              " samples over the window, at least " + std::to_string(needed) +
                              " needed for " + std::to_string(samples_per_period) +
                              " samples per period of " + std::to_string(fastest) + " rad/s");
  }
}

Eigen::MatrixXcd pressure_from_acceleration(const ModeSet& set, const MaterialParams& mat,
                                            const Eigen::MatrixXcd& accel_zero,
                                            const Eigen::MatrixXcd& accel_length,
                                            const TimeGrid& grid) {
  std::vector<OscillatorKernel> kernels;
  kernels.reserve(set.cavity.size());
  for (const auto& n : set.cavity) kernels.push_back(cavity_kernel(n, mat));
  const Eigen::MatrixXcd source =
      (mat.rho0 * mat.c * mat.c) * (set.overlap_zero * accel_zero + set.overlap_length * accel_length);
  return convolve(kernels, source, grid).value;
}

FieldHistory picard_iterate(const ModeSet& set, const CavityGeometry& geom,
                            const MaterialParams& mat, const Stimulus& stim, const TimeGrid& grid,
                            int order) {
  if (order < 0 || order > 2) throw DomainError("picard_iterate: order must be 0, 1 or 2");
  if (set.cavity.empty() || set.membrane.empty()) {
    throw DomainError("picard_iterate: truncation set is empty");
  }
  check_resolution(grid, set, mat, stim);
  const auto nc = static_cast<Eigen::Index>(set.cavity.size());
  const auto nk = static_cast<Eigen::Index>(set.membrane.size());
  const int ns = grid.samples;

  FieldHistory hist;
  hist.grid = grid;
  hist.pressure = Eigen::MatrixXcd::Zero(nc, ns);
  hist.membrane_zero = Eigen::MatrixXcd::Zero(nk, ns);
  hist.membrane_length = Eigen::MatrixXcd::Zero(nk, ns);
  if (order == 0) return hist;

  std::vector<OscillatorKernel> mem_kernels;
  mem_kernels.reserve(nk);
  for (const auto& k : set.membrane) mem_kernels.push_back(membrane_kernel(k, mat));

  Eigen::RowVectorXcd carrier(ns);
  for (int j = 0; j < ns; ++j) carrier[j] = std::polar(1.0, stim.omega * grid.at(j));
  const double inv_inertia = 1.0 / membrane_inertia(mat);

  Eigen::MatrixXcd accel_zero;
  Eigen::MatrixXcd accel_length;
  for (int l = 1; l <= order; ++l) {
    for (End end : {End::zero, End::length}) {
      const Eigen::VectorXcd drive =
          stim.end_amplitude(end, geom.length) * set.membrane_integrals.cast<Complex>();
      const Eigen::MatrixXcd source =
          inv_inertia * (set.overlap(end).adjoint() * hist.pressure - drive * carrier);
      ConvolutionResult conv = convolve(mem_kernels, source, grid);
      Eigen::MatrixXcd accel = source;
      for (Eigen::Index k = 0; k < nk; ++k) {
        accel.row(k) -= 2.0 * mat.alpha * conv.derivative.row(k) +
                        mem_kernels[k].omega0_sq() * conv.value.row(k);
      }
      if (end == End::zero) {
        hist.membrane_zero = std::move(conv.value);
        accel_zero = std::move(accel);
      } else {
        hist.membrane_length = std::move(conv.value);
        accel_length = std::move(accel);
      }
    }
    hist.pressure = pressure_from_acceleration(set, mat, accel_zero, accel_length, grid);
  }
  return hist;
}

Complex evaluate_pressure(const ModeSet& set, const CavityGeometry& geom,
                          const FieldSnapshot& snap, const CylPoint& point) {
  if (set.cavity.empty()) throw DomainError("evaluate_pressure: truncation set is empty");
  Complex sum = 0.0;
  for (std::size_t i = 0; i < set.cavity.size(); ++i) {
    sum += snap.pressure[static_cast<Eigen::Index>(i)] *
           cavity_eigenfunction(geom, set.cavity[i], point);
  }
  return sum;
}

Complex evaluate_membrane(const ModeSet& set, const CavityGeometry& geom,
                          const FieldSnapshot& snap, End end, const SectorPoint& point) {
  if (set.membrane.empty()) throw DomainError("evaluate_membrane: truncation set is empty");
  const Eigen::VectorXcd& amps = end == End::zero ? snap.membrane_zero : snap.membrane_length;
  Complex sum = 0.0;
  for (std::size_t j = 0; j < set.membrane.size(); ++j) {
    sum += amps[static_cast<Eigen::Index>(j)] * membrane_eigenfunction(geom, set.membrane[j], point);
  }
  return sum;
}

}  // namespace icecav
