// SPDX-License-Identifier: Apache-2.0
#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

#include "icecav/errors.hpp"
#include "icecav/oracle_1d.hpp"

namespace icecav {
namespace {

constexpr double kPi = std::numbers::pi;

OneDProblem quiet() {
  OneDProblem p;
  p.b0 = [](double) { return 0.0; };
  p.bpi = [](double) { return 0.0; };
  return p;
}

TEST(OneD, ZeroDataGivesZero) {
  const OneDProblem p = quiet();
  EXPECT_EQ(solve_modal(p).field.cwiseAbs().maxCoeff(), 0.0);
  EXPECT_EQ(solve_delta_source(p).field.cwiseAbs().maxCoeff(), 0.0);
}

TEST(OneD, ResonantSourceDrivesOnlyModeOne) {
  OneDProblem p = quiet();
  p.source = [](double t, double x) { return std::cos(x) * std::sin(t); };
  for (const OneDSolution& s : {solve_modal(p), solve_delta_source(p)}) {
    for (Eigen::Index j = 0; j < s.time.size(); ++j) {
      const double t = s.time[j];
      // a1'' + a1 = sin t: a1 = (sin t - t cos t)/2 as a cosine coefficient.
      const double a1 = 0.5 * (std::sin(t) - t * std::cos(t));
      EXPECT_NEAR(s.coefficients(1, j), a1 * std::sqrt(kPi / 2.0), 1e-8);
      for (Eigen::Index n = 0; n < s.coefficients.rows(); ++n) {
        if (n != 1) {
          EXPECT_NEAR(s.coefficients(n, j), 0.0, 1e-9);
        }
      }
    }
  }
}

TEST(OneD, BoundaryFluxDrivesEveryMode) {
  OneDProblem p = quiet();
  p.b0 = [](double t) { return std::sin(t); };
  const double t = p.t_end;
  for (const OneDSolution& s : {solve_modal(p), solve_delta_source(p)}) {
    const Eigen::Index j = s.time.size() - 1;
    // Cosine coefficient a_n'' + n^2 a_n = F_n sin t with F_0 = -1/pi, F_n = -2/pi.
    EXPECT_NEAR(s.coefficients(0, j), -(t - std::sin(t)) / kPi * std::sqrt(kPi), 1e-8);
    EXPECT_NEAR(s.coefficients(1, j),
                -2.0 / kPi * 0.5 * (std::sin(t) - t * std::cos(t)) * std::sqrt(kPi / 2.0), 1e-8);
    for (int n = 2; n <= p.modes; ++n) {
      const double an = -2.0 / kPi * (std::sin(t) - std::sin(n * t) / n) / (n * n - 1.0);
      EXPECT_NEAR(s.coefficients(n, j), an * std::sqrt(kPi / 2.0), 1e-8) << n;
      EXPECT_NE(s.coefficients(n, j), 0.0);
    }
  }
}

// Relative L2 error of both solvers against w = t^2 (x - x0)^2, which satisfies
// w_tt - w_xx = 2 (x - x0)^2 - 2 t^2 with w_x(0) = -2 x0 t^2 and w_x(pi) = 2 (pi - x0) t^2.
void check_manufactured(double x0) {
  OneDProblem p;
  p.b0 = [x0](double t) { return -2.0 * x0 * t * t; };
  p.bpi = [x0](double t) { return 2.0 * (kPi - x0) * t * t; };
  p.source = [x0](double t, double x) { return 2.0 * (x - x0) * (x - x0) - 2.0 * t * t; };
  p.modes = 64;
  p.t_end = 2.0;
  p.time_samples = 21;
  p.x_margin = 0.3;
  for (const OneDSolution& s : {solve_modal(p), solve_delta_source(p)}) {
    double err = 0.0;
    double ref = 0.0;
    for (Eigen::Index j = 0; j < s.time.size(); ++j) {
      for (Eigen::Index i = 0; i < s.x.size(); ++i) {
        const double w = s.time[j] * s.time[j] * (s.x[i] - x0) * (s.x[i] - x0);
        err += std::pow(s.field(j, i) - w, 2);
        ref += w * w;
      }
    }
    EXPECT_LT(std::sqrt(err / ref), 2e-3) << "x0 = " << x0;
  }
}

TEST(OneD, ManufacturedSolutionFluxAtPi) { check_manufactured(0.0); }

TEST(OneD, ManufacturedSolutionFluxAtZero) { check_manufactured(kPi); }

TEST(OneD, ManufacturedSolutionFluxAtBothEnds) { check_manufactured(1.0); }

TEST(OneD, RandomDataAgree) {
  for (std::uint64_t seed = 100; seed < 105; ++seed) {
    const OneDProblem p = random_problem(seed);
    EXPECT_LT(relative_l2(solve_modal(p), solve_delta_source(p)), 1e-6) << seed;
  }
}

TEST(OneD, RandomProblemIsDeterministic) {
  const OneDProblem a = random_problem(7);
  const OneDProblem b = random_problem(7);
  EXPECT_EQ(a.b0(1.3), b.b0(1.3));
  EXPECT_EQ(a.source(0.4, 2.0), b.source(0.4, 2.0));
  EXPECT_NE(a.b0(1.3), random_problem(8).b0(1.3));
}

TEST(OneD, ErrorPaths) {
  OneDProblem p = quiet();
  p.rk_step = 0.2;
  EXPECT_THROW(solve_modal(p), GridResolutionError);
  OneDProblem q = quiet();
  q.modes = 0;
  EXPECT_THROW(solve_modal(q), ConfigError);
  OneDProblem r = quiet();
  r.time_samples = 11;
  EXPECT_THROW(relative_l2(solve_modal(quiet()), solve_modal(r)), DomainError);
}

}  // namespace
}  // namespace icecav
