// SPDX-License-Identifier: Apache-2.0
//
// Spinning parameter, rank ordering of the mode census, the cavity/membrane coupling matrix and
// the piston (axial-only) pressure.
#pragma once

#include <Eigen/Core>

#include <vector>

#include "icecav/perturbation.hpp"

namespace icecav {

/// (-omega^2 - c^2 lambda_axial) / (-omega^2 - c^2 lambda_n), with lambda_axial the eigenvalue of
/// the transverse-constant mode of the same n3. Exactly 1 for axial modes. Throws ResonanceError
/// when the denominator is within 1e-6 omega^2 of zero.
double spinning_parameter(const CavityGeometry& geom, const MaterialParams& mat,
                          const Stimulus& stim, const CavityMode& n);

/// Rank of every value as the number of strictly smaller values. Throws DomainError when two
/// values lie within `tie_tol` of each other.
std::vector<int> rank_by_count(const std::vector<double>& values, double tie_tol = 1e-9);

struct CavityCensusEntry {
  int n1 = 1;
  int n2 = 0;
  double mu = 0.0;
  int rank = 0;
};

struct MembraneCensusEntry {
  int k1 = 1;
  int k2 = 1;
  double nu = 0.0;
  int rank = 0;
};

/// Transverse cavity census: n1 = 1..count for n2 = 0..count (the n2 = 0 column starts at
/// mu = 0), sorted by rank.
std::vector<CavityCensusEntry> cavity_census(int count = 5);
/// Membrane census k1, k2 = 1..count, sorted by rank.
std::vector<MembraneCensusEntry> membrane_census(const CavityGeometry& geom, int count = 5);

/// Coupling census at fixed n3: rows are cavity ranks, columns membrane ranks.
struct SpinningReport {
  int n3 = 0;
  double omega = 0.0;
  std::vector<CavityCensusEntry> cavity;
  std::vector<MembraneCensusEntry> membrane;
  Eigen::VectorXd spin;     // per cavity rank
  Eigen::MatrixXd overlap;  // radial overlap, no normalization
  Eigen::MatrixXd value;    // spin * overlap / a_cyl^2

  /// Row and column of the entry with the largest modulus.
  std::pair<Eigen::Index, Eigen::Index> argmax() const;
};

SpinningReport coupling_matrix(const CavityGeometry& geom, const MaterialParams& mat,
                               const Stimulus& stim, int n3, int census = 5);

/// Plane-wave pressure from the disc-averaged membrane displacements: every axial mode of the
/// set contributes (2 - delta_{n3,0})/L rho0 c^2 omega^2 Q_n(t) times the end-cap averages
/// weighted by cos(n3 pi x/L) and cos(n3 pi (L - x)/L).
Complex piston_pressure(const ModeSet& set, const CavityGeometry& geom, const MaterialParams& mat,
                        const Stimulus& stim, const MembraneAmplitudes& amps, double t,
                        const CylPoint& point);

/// Modal synthesis of the quasi-stationary pressure restricted to the axial modes of the set.
Complex axial_pressure(const ModeSet& set, const CavityGeometry& geom, const MaterialParams& mat,
                       const Stimulus& stim, const MembraneAmplitudes& amps, double t,
                       const CylPoint& point);

}  // namespace icecav
