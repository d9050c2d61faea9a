// SPDX-License-Identifier: Apache-2.0
#include "icecav/transient.hpp"

#include <cmath>

namespace icecav {
namespace {

// Free cavity oscillation pair (cos w t, sin(w t)/w), or (1, t) for w = 0.
std::pair<double, double> free_pair(double omega_n, double t) {
  if (omega_n == 0.0) return {1.0, t};
  return {std::cos(omega_n * t), std::sin(omega_n * t) / omega_n};
}

void check_denominator(Complex denom, double scale) {
  if (std::abs(denom) < 1e-12 * scale) {
    throw ResonanceError("transient pressure: damped membrane frequency coincides with a cavity mode");
  }
}

}  // namespace

double transient_coupling(const MaterialParams& mat, double t) {
  return mat.coupling() * std::exp(-mat.alpha * t);
}

Complex relaxation_function(const MaterialParams& mat, const MembraneMode& k, const Stimulus& stim,
                            double t) {
  const auto [c, s] = membrane_kernel(k, mat).undamped_pair(t);
  return c + Complex(mat.alpha, stim.omega) * s;
}

Complex relaxation_envelope(const MaterialParams& mat, const MembraneMode& k, const Stimulus& stim,
                            double t) {
  return std::exp(-mat.alpha * t) * relaxation_function(mat, k, stim, t);
}

Complex total_membrane_amplitude(Complex qs_amplitude, const MaterialParams& mat,
                                 const MembraneMode& k, const Stimulus& stim, double t) {
  return qs_amplitude *
         (std::polar(1.0, stim.omega * t) - relaxation_envelope(mat, k, stim, t));
}

Complex total_membrane(const ModeSet& set, const CavityGeometry& geom, const MaterialParams& mat,
                       const Stimulus& stim, const MembraneAmplitudes& amps, End end,
                       const SectorPoint& point, double t) {
  if (set.membrane.empty()) throw DomainError("total_membrane: truncation set is empty");
  const Eigen::VectorXcd& a = amps.at(end);
  Complex sum = 0.0;
  for (std::size_t j = 0; j < set.membrane.size(); ++j) {
    const MembraneMode& k = set.membrane[j];
    sum += total_membrane_amplitude(a[static_cast<Eigen::Index>(j)], mat, k, stim, t) *
           membrane_eigenfunction(geom, k, point);
  }
  return sum;
}

Response transient_particular(const OscillatorKernel& membrane, double omega, double omega_n,
                              double t) {
  const double alpha = membrane.damping();
  const double wn2 = omega_n * omega_n;
  const Complex b(alpha, omega);
  if (membrane.underdamped()) {
    const double wr = membrane.rate();
    const Complex z(-alpha, wr);
    const Complex denom = z * z + wn2;
    check_denominator(denom, std::norm(z) + wn2);
    const Complex kk = 1.0 / denom;
    const Complex ce = alpha * alpha - wr * wr - 2.0 * alpha * b;
    const Complex co = ((alpha * alpha - wr * wr) * b + 2.0 * alpha * wr * wr) / wr;
    const Complex w = kk * std::exp(z * t);
    const Complex dw = w * z;
    return {ce * w.real() + co * w.imag(), ce * dw.real() + co * dw.imag()};
  }
  if (membrane.overdamped()) {
    const double kappa = membrane.rate();
    Response r{0.0, 0.0};
    for (const double sign : {1.0, -1.0}) {
      const double z = -alpha + sign * kappa;
      const double denom = z * z + wn2;
      check_denominator(denom, z * z + wn2 + alpha * alpha);
      const Complex coef = 0.5 * (1.0 + sign * b / kappa);
      const double e = std::exp(z * t);
      const double h = z * z / denom;
      r.value += coef * h * e;
      r.derivative += coef * h * z * e;
    }
    return r;
  }
  // Critical damping: e^{-alpha t}(1 + b t), handled through d/dz of the exponential response.
  const double z = -alpha;
  const double denom = z * z + wn2;
  check_denominator(denom, z * z + wn2);
  const double h = z * z / denom;
  const double dh = 2.0 * z * wn2 / (denom * denom);
  const double e = std::exp(z * t);
  const Complex value = h * e + b * (dh + h * t) * e;
  const Complex deriv = z * h * e + b * (dh * z + h + h * t * z) * e;
  return {value, deriv};
}

Complex transient_pressure(const ModeSet& set, Eigen::Index index, const MaterialParams& mat,
                           const Stimulus& stim, const MembraneAmplitudes& amps, double t,
                           bool complete) {
  if (set.membrane.empty()) throw DomainError("transient_pressure: truncation set is empty");
  if (index < 0 || index >= static_cast<Eigen::Index>(set.cavity.size())) {
    throw DomainError("transient_pressure: cavity mode index out of range");
  }
  const double omega_n = set.cavity[index].omega(mat.c);
  const auto [cn, sn] = free_pair(omega_n, t);
  Complex sum = 0.0;
  for (std::size_t j = 0; j < set.membrane.size(); ++j) {
    const auto jj = static_cast<Eigen::Index>(j);
    const Complex weight = amps.zero[jj] * set.overlap_zero(index, jj) +
                           amps.length[jj] * set.overlap_length(index, jj);
    if (weight == 0.0) continue;
    const OscillatorKernel h = membrane_kernel(set.membrane[j], mat);
    Complex p = transient_particular(h, stim.omega, omega_n, t).value;
    if (complete) {
      const Response start = transient_particular(h, stim.omega, omega_n, 0.0);
      p -= start.value * cn + start.derivative * sn;
    }
    sum += weight * p;
  }
  return -mat.rho0 * mat.c * mat.c * sum;
}

Eigen::VectorXcd first_order_pressure(const ModeSet& set, const MaterialParams& mat,
                                      const Stimulus& stim, const MembraneAmplitudes& amps,
                                      double t) {
  Eigen::VectorXcd p = pressure_amplitudes(set, mat, stim, amps, t);
  for (Eigen::Index i = 0; i < p.size(); ++i) {
    p[i] += transient_pressure(set, i, mat, stim, amps, t, true);
  }
  return p;
}

double relaxation_time(const MaterialParams& mat) {
  const double g = mat.coupling();
  if (!(g > 0.0 && g < 1.0)) {
    throw DomainError("relaxation_time: coupling must lie in (0, 1)");
  }
  if (!(mat.alpha > 0.0)) throw DomainError("relaxation_time: damping must be positive");
  return -std::log(g) / mat.alpha;
}

TransientProfile transient_profile(const MaterialParams& mat, const MembraneMode& k,
                                   const Stimulus& stim, const TimeGrid& grid) {
  grid.validate();
  TransientProfile prof;
  prof.time.resize(grid.samples);
  prof.harmonic.resize(grid.samples);
  prof.transient.resize(grid.samples);
  prof.total.resize(grid.samples);
  for (int j = 0; j < grid.samples; ++j) {
    const double t = grid.at(j);
    prof.time[j] = t;
    prof.harmonic[j] = std::polar(1.0, stim.omega * t);
    prof.transient[j] = relaxation_envelope(mat, k, stim, t);
    prof.total[j] = prof.harmonic[j] - prof.transient[j];
  }
  return prof;
}

std::optional<double> settling_time(const TransientProfile& profile, double threshold) {
  const Eigen::Index n = profile.time.size();
  if (n == 0) return std::nullopt;
  Eigen::Index first = n;
  for (Eigen::Index j = n - 1; j >= 0; --j) {
    if (std::abs(profile.total[j] - profile.harmonic[j]) < threshold) {
      first = j;
    } else {
      break;
    }
  }
  if (first == n) return std::nullopt;
  return profile.time[first];
}

}  // namespace icecav
