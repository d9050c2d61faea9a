// SPDX-License-Identifier: Apache-2.0
//
// One-dimensional wave problem on [0, pi] with inhomogeneous Neumann data, solved two ways:
// cosine modes driven by the boundary flux, and homogeneous Neumann modes driven by surface
// delta sources. Used to validate the boundary-to-source translation.
#pragma once

#include <Eigen/Core>

#include <cstdint>
#include <functional>

namespace icecav {

/// w_tt - w_xx = f(t, x) on (0, pi), w_x(t, 0) = b0(t), w_x(t, pi) = bpi(t), zero initial data.
struct OneDProblem {
  std::function<double(double)> b0;
  std::function<double(double)> bpi;
  std::function<double(double, double)> source;  // f(t, x); empty means zero
  int modes = 32;                                // cosine modes n = 0 .. modes
  double t_end = 10.0;
  int time_samples = 201;
  int space_samples = 101;  // output grid on [x_margin, pi - x_margin]
  double x_margin = 0.05;
  double rk_step = 0.0;     // 0 picks min(0.01, 0.1 / modes)
};

struct OneDSolution {
  Eigen::VectorXd time;
  Eigen::VectorXd x;
  Eigen::MatrixXd coefficients;  // (modes + 1) x time, in the orthonormal cosine basis
  Eigen::MatrixXd field;         // time x x
};

/// Cosine-coefficient ODEs a_n'' = -n^2 a_n + (2/pi)[cos(n pi) bpi - b0] + f_n (weight 1/pi for
/// n = 0), integrated with classic RK4. Throws GridResolutionError if step * modes > 2.8.
OneDSolution solve_modal(const OneDProblem& problem);

/// Homogeneous Neumann problem with source f - delta(x) b0 + delta(x - pi) bpi, solved by the
/// exact modal Duhamel integral with kernel sin(n(t - tau))/n (t - tau for n = 0).
OneDSolution solve_delta_source(const OneDProblem& problem);

/// ||a - b|| / ||a|| over all field samples.
double relative_l2(const OneDSolution& reference, const OneDSolution& other);

/// Smooth random data: boundary fluxes and source built from a few sinusoids in t and
/// low-order cosines plus a decaying exponential in x.
OneDProblem random_problem(std::uint64_t seed);

}  // namespace icecav
