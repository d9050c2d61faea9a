// SPDX-License-Identifier: Apache-2.0
//
// Real-order Bessel functions of the first kind, their zeros and extrema, and Gauss-Legendre
// quadrature. Everything here is pure and thread-safe.
#pragma once

#include <Eigen/Core>

#include <cmath>
#include <limits>
#include <numbers>
#include <string>
#include <vector>

#include "icecav/errors.hpp"

namespace icecav {

/// Non-negative real Bessel order. Integer orders (cavity modes) and the rational orders
/// k2*pi/(2(pi-beta)) of sector membranes share this type.
class BesselOrder {
 public:
  explicit BesselOrder(double q) : q_(q) {
    if (!(q >= 0.0) || !std::isfinite(q)) {
      throw DomainError("Bessel order must be finite and non-negative, got " + std::to_string(q));
    }
  }
  double value() const { return q_; }

 private:
  double q_;
};

/// J_q(x) for x >= 0. Power series below x = max(12, 2q), Steed's continued-fraction method
/// above. Relative accuracy is near machine precision away from the zeros.
double bessel_j(BesselOrder q, double x);

/// dJ_q/dx. Uses J_0' = -J_1, J_q' = (J_{q-1} - J_{q+1})/2 for q >= 1 and
/// J_q' = (q/x) J_q - J_{q+1} for 0 < q < 1.
double bessel_j_prime(BesselOrder q, double x);

/// Scan parameters for root isolation. Roots of J_q and J_q' are about pi apart, so the
/// default step brackets each one individually.
struct RootScan {
  double step = std::numbers::pi / 8.0;
  double max_x = 1.0e4;
};

/// First `count` strictly positive zeros of J_q, increasing.
std::vector<double> find_zeros(BesselOrder q, int count, const RootScan& scan = {});

/// First `count` non-negative roots of J_q'. For q = 0 the list starts with 0 (the constant
/// transverse mode); for q > 0 the trivial root at the origin is not counted.
std::vector<double> find_extrema(BesselOrder q, int count, const RootScan& scan = {});

template <typename Scalar = double>
struct QuadratureRule {
  using Vector = Eigen::Matrix<Scalar, Eigen::Dynamic, 1>;
  Vector nodes;    // on [-1, 1]
  Vector weights;

  Eigen::Index size() const { return nodes.size(); }

  /// Nodes mapped affinely onto [a, b].
  Vector nodes_on(Scalar a, Scalar b) const {
    return (nodes.array() * ((b - a) / 2) + (a + b) / 2).matrix();
  }
  Vector weights_on(Scalar a, Scalar b) const { return weights * ((b - a) / 2); }

  template <typename F>
  auto integrate(F&& f, Scalar a = Scalar(-1), Scalar b = Scalar(1)) const {
    const Scalar half = (b - a) / 2;
    const Scalar mid = (a + b) / 2;
    using R = decltype(f(mid));
    R sum = R(0);
    for (Eigen::Index i = 0; i < nodes.size(); ++i) {
      sum += weights[i] * f(mid + half * nodes[i]);
    }
    return sum * half;
  }
};

/// Gauss-Legendre rule with n nodes, 2 <= n <= 512. Nodes by Newton iteration on P_n.
template <typename Scalar = double>
QuadratureRule<Scalar> gauss_legendre(int n) {
  if (n < 2 || n > 512) {
    throw DomainError("gauss_legendre: node count must lie in [2, 512], got " + std::to_string(n));
  }
  using std::abs;
  using std::cos;
  QuadratureRule<Scalar> rule;
  rule.nodes.resize(n);
  rule.weights.resize(n);
  const Scalar pi = std::numbers::pi_v<Scalar>;
  const int half = (n + 1) / 2;
  for (int i = 0; i < half; ++i) {
    Scalar x = cos(pi * (Scalar(i) + Scalar(0.75)) / (Scalar(n) + Scalar(0.5)));
    Scalar dp = 0;
    for (int iter = 0; iter < 100; ++iter) {
      Scalar p0 = 1;
      Scalar p1 = x;
      for (int k = 2; k <= n; ++k) {
        const Scalar p2 = ((2 * k - 1) * x * p1 - (k - 1) * p0) / k;
        p0 = p1;
        p1 = p2;
      }
      dp = n * (x * p1 - p0) / (x * x - 1);
      const Scalar dx = p1 / dp;
      x -= dx;
      if (abs(dx) <= std::numeric_limits<Scalar>::epsilon() * 4) {
        break;
      }
    }
    // One more derivative evaluation at the converged node.
    Scalar p0 = 1;
    Scalar p1 = x;
    for (int k = 2; k <= n; ++k) {
      const Scalar p2 = ((2 * k - 1) * x * p1 - (k - 1) * p0) / k;
      p0 = p1;
      p1 = p2;
    }
    dp = n * (x * p1 - p0) / (x * x - 1);
    const Scalar w = 2 / ((1 - x * x) * dp * dp);
    rule.nodes[i] = -x;
    rule.nodes[n - 1 - i] = x;
    rule.weights[i] = w;
    rule.weights[n - 1 - i] = w;
  }
  if (n % 2 == 1) {
    rule.nodes[half - 1] = 0;
  }
  return rule;
}

}  // namespace icecav
