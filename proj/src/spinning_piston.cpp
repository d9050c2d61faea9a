// SPDX-License-Identifier: Apache-2.0
#include "icecav/spinning_piston.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

namespace icecav {
namespace {

constexpr double kPi = std::numbers::pi;

}  // namespace

double spinning_parameter(const CavityGeometry& geom, const MaterialParams& mat,
                          const Stimulus& stim, const CavityMode& n) {
  if (n.is_axial()) return 1.0;
  const double w2 = stim.omega * stim.omega;
  const double c2 = mat.c * mat.c;
  const double kx = n.n3 * kPi / geom.length;
  const double denom = -w2 - c2 * n.lambda;
  if (std::abs(denom) < 1e-6 * w2) {
    throw ResonanceError("spinning_parameter: stimulus is resonant with mode (" +
                         std::to_string(n.n1) + "," + std::to_string(n.n2) + "," +
                         std::to_string(n.n3) + ")");
  }
  return (-w2 + c2 * kx * kx) / denom;
}

std::vector<int> rank_by_count(const std::vector<double>& values, double tie_tol) {
  std::vector<double> sorted = values;
  std::sort(sorted.begin(), sorted.end());
  for (std::size_t i = 1; i < sorted.size(); ++i) {
    if (sorted[i] - sorted[i - 1] < tie_tol) {
      throw DomainError("rank_by_count: two values coincide within the tie tolerance");
    }
  }
  std::vector<int> ranks;
  ranks.reserve(values.size());
  for (double v : values) {
    ranks.push_back(static_cast<int>(std::lower_bound(sorted.begin(), sorted.end(), v) -
                                     sorted.begin()));
  }
  return ranks;
}

std::vector<CavityCensusEntry> cavity_census(int count) {
  std::vector<CavityCensusEntry> entries;
  for (int n2 = 0; n2 <= count; ++n2) {
    const auto mus = find_extrema(BesselOrder(n2), count);
    for (int n1 = 1; n1 <= count; ++n1) entries.push_back({n1, n2, mus[n1 - 1], 0});
  }
  std::vector<double> values;
  for (const auto& e : entries) values.push_back(e.mu);
  const auto ranks = rank_by_count(values);
  for (std::size_t i = 0; i < entries.size(); ++i) entries[i].rank = ranks[i];
  std::sort(entries.begin(), entries.end(),
            [](const auto& a, const auto& b) { return a.rank < b.rank; });
  return entries;
}

std::vector<MembraneCensusEntry> membrane_census(const CavityGeometry& geom, int count) {
  std::vector<MembraneCensusEntry> entries;
  for (int k2 = 1; k2 <= count; ++k2) {
    for (int k1 = 1; k1 <= count; ++k1) {
      entries.push_back({k1, k2, membrane_eigenvalue(geom, k1, k2).nu, 0});
    }
  }
  std::vector<double> values;
  for (const auto& e : entries) values.push_back(e.nu);
  const auto ranks = rank_by_count(values);
  for (std::size_t i = 0; i < entries.size(); ++i) entries[i].rank = ranks[i];
  std::sort(entries.begin(), entries.end(),
            [](const auto& a, const auto& b) { return a.rank < b.rank; });
  return entries;
}

std::pair<Eigen::Index, Eigen::Index> SpinningReport::argmax() const {
  Eigen::Index r = 0;
  Eigen::Index c = 0;
  value.cwiseAbs().maxCoeff(&r, &c);
  return {r, c};
}

SpinningReport coupling_matrix(const CavityGeometry& geom, const MaterialParams& mat,
                               const Stimulus& stim, int n3, int census) {
  geom.validate();
  if (n3 < 0) throw DomainError("coupling_matrix: n3 must be non-negative");
  SpinningReport rep;
  rep.n3 = n3;
  rep.omega = stim.omega;
  rep.cavity = cavity_census(census);
  rep.membrane = membrane_census(geom, census);
  const auto rows = static_cast<Eigen::Index>(rep.cavity.size());
  const auto cols = static_cast<Eigen::Index>(rep.membrane.size());
  rep.spin.resize(rows);
  rep.overlap.resize(rows, cols);
  std::vector<MembraneMode> mem;
  mem.reserve(cols);
  for (const auto& m : rep.membrane) {
    const auto ev = membrane_eigenvalue(geom, m.k1, m.k2);
    mem.push_back(MembraneMode{m.k1, m.k2, ev.q, ev.nu, ev.gamma, 0.0});
  }
  for (Eigen::Index i = 0; i < rows; ++i) {
    const auto& e = rep.cavity[i];
    const double kx = n3 * kPi / geom.length;
    const double kr = e.mu / geom.a_cyl;
    const CavityMode n{e.n1, e.n2, n3, e.mu, -(kr * kr + kx * kx), 0.0};
    rep.spin[i] = spinning_parameter(geom, mat, stim, n);
    for (Eigen::Index j = 0; j < cols; ++j) rep.overlap(i, j) = overlap_radial(geom, n, mem[j]);
  }
  rep.value = (rep.spin.asDiagonal() * rep.overlap) / (geom.a_cyl * geom.a_cyl);
  return rep;
}

Complex piston_pressure(const ModeSet& set, const CavityGeometry& geom, const MaterialParams& mat,
                        const Stimulus& stim, const MembraneAmplitudes& amps, double t,
                        const CylPoint& point) {
  if (set.membrane.empty()) throw DomainError("piston_pressure: truncation set is empty");
  const double disc = kPi * geom.a_cyl * geom.a_cyl;
  const Eigen::VectorXcd integrals = set.membrane_integrals.cast<Complex>();
  const Complex avg_zero = amps.zero.cwiseProduct(integrals).sum() / disc;
  const Complex avg_length = amps.length.cwiseProduct(integrals).sum() / disc;
  const double w = stim.omega;
  const double scale = mat.rho0 * mat.c * mat.c * w * w;
  Complex sum = 0.0;
  for (const auto& n : set.cavity) {
    if (!n.is_axial()) continue;
    const double kx = n.n3 * kPi / geom.length;
    const double weight = (n.n3 == 0 ? 1.0 : 2.0) / geom.length;
    const Complex shape =
        avg_zero * std::cos(kx * point.x) + avg_length * std::cos(kx * (geom.length - point.x));
    sum += weight * shape * resonance_quotient(mat.c * kx, w, t);
  }
  return scale * sum;
}

Complex axial_pressure(const ModeSet& set, const CavityGeometry& geom, const MaterialParams& mat,
                       const Stimulus& stim, const MembraneAmplitudes& amps, double t,
                       const CylPoint& point) {
  Complex sum = 0.0;
  for (std::size_t i = 0; i < set.cavity.size(); ++i) {
    const CavityMode& n = set.cavity[i];
    if (!n.is_axial()) continue;
    sum += pressure_amplitude(set, static_cast<Eigen::Index>(i), mat, stim, amps, t) *
           cavity_eigenfunction(geom, n, point);
  }
  return sum;
}

}  // namespace icecav
