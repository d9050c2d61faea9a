// SPDX-License-Identifier: Apache-2.0
//
// First-order coupling of cavity pressure and membrane displacement: oscillator Green's functions,
// the quasi-stationary closed forms and a time-domain Picard iteration built on exact
// per-interval propagation.
#pragma once

#include <Eigen/Core>

#include <utility>
#include <vector>

#include "icecav/geometry.hpp"

namespace icecav {

/// Impulse response g of y'' + 2 a y' + w0^2 y = delta(t): g(0) = 0, g'(0) = 1. Covers the
/// undamped cavity kernel (a = 0), the damped membrane kernel and, when w0^2 < a^2, its
/// hyperbolic continuation. All branches are evaluated in real arithmetic.
class OscillatorKernel {
 public:
  OscillatorKernel(double damping, double omega0_sq);

  double damping() const { return a_; }
  double omega0_sq() const { return w0sq_; }
  /// sqrt(|w0^2 - a^2|); the oscillation rate when underdamped, the split rate otherwise.
  double rate() const { return rate_; }
  bool underdamped() const { return kind_ == Kind::under; }
  bool overdamped() const { return kind_ == Kind::over; }

  double value(double t) const;       // g(t), zero for t < 0
  double derivative(double t) const;  // g'(t), zero for t < 0

  /// The undamped building blocks C(t), S(t) with g = e^{-a t} S and g' = e^{-a t}(C - a S):
  /// (cos wt, sin(wt)/w), (cosh kt, sinh(kt)/k) or (1, t).
  std::pair<double, double> undamped_pair(double t) const;

 private:
  enum class Kind { under, critical, over };
  double a_;
  double w0sq_;
  double rate_;
  Kind kind_;
};

/// G_n: undamped cavity kernel, sin(omega_n t)/omega_n or t for omega_n = 0.
OscillatorKernel cavity_kernel(const CavityMode& n, const MaterialParams& mat);
/// H_k: damped membrane kernel with w0^2 = c_m^2 (-gamma_k), reduced rate omega_r.
OscillatorKernel membrane_kernel(const MembraneMode& k, const MaterialParams& mat);

/// Membrane displacement amplitudes (metres, multiplying e^{i omega t}) per membrane mode of a
/// ModeSet, one vector per end cap.
struct MembraneAmplitudes {
  Eigen::VectorXcd zero;
  Eigen::VectorXcd length;

  const Eigen::VectorXcd& at(End end) const { return end == End::zero ? zero : length; }
};

/// Quasi-stationary amplitude of mode k at `end`:
/// -(g/(rho0 d)) <k|p_ex> / (-omega^2 - c_m^2 gamma_k + 2 i alpha omega).
Complex membrane_amplitude_qs(const CavityGeometry& geom, const MaterialParams& mat,
                              const Stimulus& stim, const MembraneMode& k, End end);
MembraneAmplitudes membrane_amplitudes_qs(const ModeSet& set, const CavityGeometry& geom,
                                          const MaterialParams& mat, const Stimulus& stim);

/// R_n(t) = cos(omega_n t) + i omega sin(omega_n t)/omega_n, and 1 + i omega t at omega_n = 0.
Complex resonance_function(double omega_n, double omega, double t);
Complex resonance_function(const CavityMode& n, const MaterialParams& mat, const Stimulus& stim,
                           double t);

/// (e^{i omega t} - R_n(t)) / (omega^2 - omega_n^2). Within |omega^2 - omega_n^2| < 1e-6 omega^2
/// the quotient is replaced by its expansion to second order in omega - omega_n.
Complex resonance_quotient(double omega_n, double omega, double t);

/// Sum over ends and membrane modes of A_{e,k} <n|k>_e for every cavity mode.
Eigen::VectorXcd surface_projection(const ModeSet& set, const MembraneAmplitudes& amps);

/// Pressure amplitude of cavity mode `index` driven by quasi-stationary membranes:
/// rho0 c^2 omega^2 sum_{e,k} A_{e,k} <n|k>_e (e^{i omega t} - R_n(t)) / (omega^2 + c^2 lambda_n).
Complex pressure_amplitude(const ModeSet& set, Eigen::Index index, const MaterialParams& mat,
                           const Stimulus& stim, const MembraneAmplitudes& amps, double t);
Eigen::VectorXcd pressure_amplitudes(const ModeSet& set, const MaterialParams& mat,
                                     const Stimulus& stim, const MembraneAmplitudes& amps,
                                     double t);

/// Modal amplitudes at one instant, in ModeSet order.
struct FieldSnapshot {
  double time = 0.0;
  Eigen::VectorXcd pressure;
  Eigen::VectorXcd membrane_zero;
  Eigen::VectorXcd membrane_length;
};

/// Uniform grid t_j = j t_end / (samples - 1), j = 0 .. samples - 1.
struct TimeGrid {
  double t_end = 0.0;
  int samples = 0;

  double step() const { return t_end / (samples - 1); }
  double at(int j) const { return j * step(); }
  void validate() const;
};

/// Modal amplitude histories, one column per time sample.
struct FieldHistory {
  TimeGrid grid;
  Eigen::MatrixXcd pressure;         // cavity modes x samples
  Eigen::MatrixXcd membrane_zero;    // membrane modes x samples
  Eigen::MatrixXcd membrane_length;  // membrane modes x samples

  FieldSnapshot snapshot(int j) const;
};

/// Solves y'' + 2 a_i y' + w_i^2 y = s_i(t) with y(0) = y'(0) = 0 for every row i of `source`
/// sampled on `grid`. The propagator over one step is exact; the source is interpolated by
/// cubic Lagrange polynomials. Returns values and first derivatives.
struct ConvolutionResult {
  Eigen::MatrixXcd value;
  Eigen::MatrixXcd derivative;
};
ConvolutionResult convolve(const std::vector<OscillatorKernel>& kernels,
                           const Eigen::MatrixXcd& source, const TimeGrid& grid);

/// Largest angular frequency the grid has to resolve: omega, every omega_n and every
/// underdamped omega_r of the set.
double fastest_frequency(const ModeSet& set, const MaterialParams& mat, const Stimulus& stim);

/// Throws GridResolutionError unless the grid has at least `samples_per_period` samples per
/// period of fastest_frequency.
void check_resolution(const TimeGrid& grid, const ModeSet& set, const MaterialParams& mat,
                      const Stimulus& stim, double samples_per_period = 20.0);

/// Picard iteration of the coupled integral equations starting from the all-zero state. One
/// order updates the membranes from the previous pressure and then the pressure from the new
/// membranes. Order 0 returns zeros; order 1 is the first-order solution.
FieldHistory picard_iterate(const ModeSet& set, const CavityGeometry& geom,
                            const MaterialParams& mat, const Stimulus& stim, const TimeGrid& grid,
                            int order);

/// Cavity pressure driven by prescribed membrane displacements given through their
/// accelerations (membrane modes x samples per end), by numerical convolution with G_n.
Eigen::MatrixXcd pressure_from_acceleration(const ModeSet& set, const MaterialParams& mat,
                                            const Eigen::MatrixXcd& accel_zero,
                                            const Eigen::MatrixXcd& accel_length,
                                            const TimeGrid& grid);

/// Modal syntheses sum_n P_n Psi_n(point) and sum_k U_k Phi_k(point).
Complex evaluate_pressure(const ModeSet& set, const CavityGeometry& geom,
                          const FieldSnapshot& snap, const CylPoint& point);
Complex evaluate_membrane(const ModeSet& set, const CavityGeometry& geom,
                          const FieldSnapshot& snap, End end, const SectorPoint& point);

}  // namespace icecav
