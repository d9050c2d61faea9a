// SPDX-License-Identifier: Apache-2.0
#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <numeric>

#include "icecav/errors.hpp"
#include "icecav/spinning_piston.hpp"

namespace icecav {
namespace {

struct Case {
  explicit Case(const char* name) : preset(*find_preset(name)) {}
  Preset preset;
  const CavityGeometry& geom() const { return preset.geometry; }
  const MaterialParams& mat() const { return preset.materials; }
  const Stimulus& stim() const { return preset.stimulus; }
};

TEST(Spinning, AxialModesGiveOne) {
  const Case c("gecko");
  for (int n3 = 0; n3 <= 4; ++n3) {
    EXPECT_EQ(spinning_parameter(c.geom(), c.mat(), c.stim(), cavity_mode(c.geom(), 1, 0, n3)), 1.0);
  }
}

TEST(Spinning, DecreasesWithTransverseWavenumber) {
  const Case c("gecko");
  for (int n3 = 1; n3 <= 4; ++n3) {
    std::vector<std::pair<double, double>> by_mu;
    for (int n2 = 0; n2 <= 5; ++n2) {
      for (int n1 = 1; n1 <= 5; ++n1) {
        const CavityMode n = cavity_mode(c.geom(), n1, n2, n3);
        by_mu.emplace_back(n.mu, std::abs(spinning_parameter(c.geom(), c.mat(), c.stim(), n)));
      }
    }
    std::sort(by_mu.begin(), by_mu.end());
    for (std::size_t i = 1; i < by_mu.size(); ++i) EXPECT_LT(by_mu[i].second, by_mu[i - 1].second);
  }
}

TEST(Spinning, CutOffRegimeAndAmplitudeInvariance) {
  Case c("gecko");
  const CavityMode far = cavity_mode(c.geom(), 40, 7, 1);
  EXPECT_LT(spinning_parameter(c.geom(), c.mat(), c.stim(), far), 1e-3);
  const CavityMode n = cavity_mode(c.geom(), 2, 1, 2);
  Stimulus louder = c.stim();
  louder.p0 = 37.0;
  EXPECT_EQ(spinning_parameter(c.geom(), c.mat(), c.stim(), n),
            spinning_parameter(c.geom(), c.mat(), louder, n));
}

TEST(Spinning, ResonanceGuard) {
  const Case c("gecko");
  const CavityMode n = cavity_mode(c.geom(), 2, 0, 1);
  Stimulus tuned = c.stim();
  tuned.omega = n.omega(c.mat().c);
  EXPECT_THROW(spinning_parameter(c.geom(), c.mat(), tuned, n), ResonanceError);
}

TEST(Ranks, CountOfSmallerValues) {
  EXPECT_EQ(rank_by_count({3.0, 1.0, 2.0, 0.0}), (std::vector<int>{3, 1, 2, 0}));
  EXPECT_THROW(rank_by_count({1.0, 2.0, 1.0 + 1e-12}), DomainError);
}

TEST(Ranks, CensusIsAPermutation) {
  const Case c("gecko");
  const auto cav = cavity_census();
  ASSERT_EQ(cav.size(), 30u);
  std::vector<int> ranks;
  for (const auto& e : cav) ranks.push_back(e.rank);
  std::vector<int> expected(30);
  std::iota(expected.begin(), expected.end(), 0);
  EXPECT_EQ(ranks, expected);
  EXPECT_EQ(cav.front().mu, 0.0);
  EXPECT_EQ(cav.front().n2, 0);
  EXPECT_EQ(cav.back().rank, 29);
  for (const auto& e : cav) EXPECT_LE(e.mu, cav.back().mu);

  const auto mem = membrane_census(c.geom());
  ASSERT_EQ(mem.size(), 25u);
  for (int i = 0; i < 25; ++i) EXPECT_EQ(mem[i].rank, i);
  EXPECT_EQ(mem.front().k1, 1);
  EXPECT_EQ(mem.front().k2, 1);
  for (std::size_t i = 1; i < mem.size(); ++i) EXPECT_GT(mem[i].nu, mem[i - 1].nu);
}

TEST(CouplingMatrix, ShapeEntriesAndDominance) {
  for (const char* name : {"gecko", "varanus"}) {
    const Case c(name);
    for (int n3 = 1; n3 <= 4; ++n3) {
      const SpinningReport rep = coupling_matrix(c.geom(), c.mat(), c.stim(), n3);
      ASSERT_EQ(rep.value.rows(), 30);
      ASSERT_EQ(rep.value.cols(), 25);
      EXPECT_TRUE(rep.value.allFinite());
      EXPECT_EQ(rep.argmax().first, 0) << name << " n3=" << n3;
      EXPECT_EQ(rep.spin[0], 1.0);
      // Spot-check one entry against its definition.
      const auto& ce = rep.cavity[7];
      const auto& me = rep.membrane[4];
      const CavityMode n = cavity_mode(c.geom(), ce.n1, ce.n2, n3);
      const double expected = spinning_parameter(c.geom(), c.mat(), c.stim(), n) *
                              overlap_radial(c.geom(), n, membrane_mode(c.geom(), me.k1, me.k2)) /
                              (c.geom().a_cyl * c.geom().a_cyl);
      EXPECT_NEAR(rep.value(7, 4), expected, 1e-12 * std::abs(expected));
    }
  }
}

TEST(Piston, EqualsAxialTruncation) {
  const Case c("gecko");
  const ModeSet set = build_mode_set(c.geom(), Truncation{3, 2, 6, 3, 3});
  const auto amps = membrane_amplitudes_qs(set, c.geom(), c.mat(), c.stim());
  for (double t : {0.0, 3e-4, 2.2e-3}) {
    for (const CylPoint p : {CylPoint{0.0, 0.0, 0.0}, CylPoint{0.004, 2.0, 0.009},
                             CylPoint{0.0066, 5.0, 0.022}}) {
      const Complex piston = piston_pressure(set, c.geom(), c.mat(), c.stim(), amps, t, p);
      const Complex axial = axial_pressure(set, c.geom(), c.mat(), c.stim(), amps, t, p);
      EXPECT_LE(std::abs(piston - axial), 1e-10 * std::max(std::abs(axial), 1e-300));
      if (t == 0.0) {
        EXPECT_EQ(std::abs(piston), 0.0);
      }
    }
    // Plane wave: no dependence on r or phi.
    const Complex a = piston_pressure(set, c.geom(), c.mat(), c.stim(), amps, t, {0.001, 0.3, 0.01});
    const Complex b = piston_pressure(set, c.geom(), c.mat(), c.stim(), amps, t, {0.006, 4.1, 0.01});
    EXPECT_LE(std::abs(a - b), 1e-14 * std::abs(a));
  }
}

TEST(Piston, DeviationFromFullSynthesisBoundedByNeglectedCoupling) {
  const Case c("gecko");
  const auto& g = c.geom();
  const ModeSet set = build_mode_set(g, Truncation{});
  const auto amps = membrane_amplitudes_qs(set, g, c.mat(), c.stim());
  double diff = 0.0;
  double norm = 0.0;
  for (double t = 2e-4; t < 5e-3; t += 3.1e-4) {
    FieldSnapshot snap;
    snap.pressure = pressure_amplitudes(set, c.mat(), c.stim(), amps, t);
    snap.membrane_zero = amps.zero;
    snap.membrane_length = amps.length;
    for (int i = 0; i <= 20; ++i) {
      const CylPoint p{0.0, 0.0, g.length * i / 20.0};
      const Complex full = evaluate_pressure(set, g, snap, p);
      diff += std::norm(full - piston_pressure(set, g, c.mat(), c.stim(), amps, t, p));
      norm += std::norm(full);
    }
  }
  double bound = 0.0;
  for (int n3 = 1; n3 <= 4; ++n3) {
    const SpinningReport rep = coupling_matrix(g, c.mat(), c.stim(), n3);
    bound = std::max(bound, rep.value.bottomRows(29).cwiseAbs().maxCoeff() /
                                rep.value.row(0).cwiseAbs().maxCoeff());
  }
  EXPECT_LT(std::sqrt(diff / norm), bound);
}

}  // namespace
}  // namespace icecav
