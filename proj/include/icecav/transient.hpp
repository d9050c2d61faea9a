// SPDX-License-Identifier: Apache-2.0
//
// Start-up transients: how the membranes and the cavity pressure relax from rest onto the
// quasi-stationary harmonic state.
#pragma once

#include <Eigen/Core>

#include <optional>

#include "icecav/perturbation.hpp"

namespace icecav {

/// g e^{-alpha t}.
double transient_coupling(const MaterialParams& mat, double t);

/// t_k(t) = cos(omega_r t) + (alpha + i omega) sin(omega_r t)/omega_r, continued to cosh/sinh
/// for overdamped modes.
Complex relaxation_function(const MaterialParams& mat, const MembraneMode& k, const Stimulus& stim,
                            double t);

/// e^{-alpha t} t_k(t), the decaying part a membrane mode carries on top of e^{i omega t}.
Complex relaxation_envelope(const MaterialParams& mat, const MembraneMode& k, const Stimulus& stim,
                            double t);

/// Modal amplitude of the complete first-order membrane motion, A (e^{i omega t} - e^{-alpha t}
/// t_k(t)). Vanishes together with its time derivative at t = 0.
Complex total_membrane_amplitude(Complex qs_amplitude, const MaterialParams& mat,
                                 const MembraneMode& k, const Stimulus& stim, double t);

/// Membrane displacement at `point` including the transient, summed over the set.
Complex total_membrane(const ModeSet& set, const CavityGeometry& geom, const MaterialParams& mat,
                       const Stimulus& stim, const MembraneAmplitudes& amps, End end,
                       const SectorPoint& point, double t);

/// Value and time derivative of a modal response.
struct Response {
  Complex value;
  Complex derivative;
};

/// Particular solution of P'' + omega_n^2 P = d^2/dt^2 [e^{-alpha t} t_k(t)] that decays like
/// e^{-alpha t}. Throws ResonanceError when the damped membrane frequency meets omega_n.
Response transient_particular(const OscillatorKernel& membrane, double omega, double omega_n,
                              double t);

/// Transient pressure correction of cavity mode `index`:
/// -rho0 c^2 sum_{e,k} A_{e,k} <n|k>_e P_k(t) with P_k from transient_particular. With
/// `complete`, free oscillations are added so that quasi-stationary plus transient pressure
/// start from rest.
Complex transient_pressure(const ModeSet& set, Eigen::Index index, const MaterialParams& mat,
                           const Stimulus& stim, const MembraneAmplitudes& amps, double t,
                           bool complete = false);

/// Quasi-stationary plus completed transient pressure for every cavity mode: the exact response
/// of the cavity to the first-order membrane motion.
Eigen::VectorXcd first_order_pressure(const ModeSet& set, const MaterialParams& mat,
                                      const Stimulus& stim, const MembraneAmplitudes& amps,
                                      double t);

/// -ln(g)/alpha, the time after which g e^{-alpha t} < g^2.
double relaxation_time(const MaterialParams& mat);

/// Harmonic, transient and total unit-amplitude traces of one membrane mode.
struct TransientProfile {
  Eigen::VectorXd time;
  Eigen::VectorXcd harmonic;   // e^{i omega t}
  Eigen::VectorXcd transient;  // e^{-alpha t} t_k(t)
  Eigen::VectorXcd total;      // harmonic - transient
};

TransientProfile transient_profile(const MaterialParams& mat, const MembraneMode& k,
                                   const Stimulus& stim, const TimeGrid& grid);

/// First sample time after which |total - harmonic| stays below `threshold` up to the end of
/// the profile; nullopt if the last sample is still above it.
std::optional<double> settling_time(const TransientProfile& profile, double threshold);

}  // namespace icecav
