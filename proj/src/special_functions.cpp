// SPDX-License-Identifier: Apache-2.0
#include "icecav/special_functions.hpp"

#include <algorithm>
#include <complex>
#include <functional>
#include <limits>

namespace icecav {
namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kEps = std::numeric_limits<double>::epsilon();
constexpr double kTiny = 1.0e-300;
constexpr int kMaxIter = 100000;

double series_crossover(double q) { return std::max(12.0, 2.0 * q); }

// Ascending power series, summed in extended precision so the cancellation near x = 12
// costs nothing visible in double.
double bessel_j_series(double q, double x) {
  using LD = long double;
  const LD half_x = LD(x) / 2;
  const LD z = -half_x * half_x;
  LD term = 1;
  LD sum = 1;
  for (int k = 1; k < 1000; ++k) {
    term *= z / (LD(k) * (LD(q) + k));
    sum += term;
    if (std::abs(term) <= std::numeric_limits<LD>::epsilon() * std::abs(sum) && k > half_x) {
      break;
    }
  }
  const LD log_prefactor = LD(q) * std::log(half_x) - std::lgamma(LD(q) + 1);
  return static_cast<double>(std::exp(log_prefactor) * sum);
}

// Steed's method: CF1 gives J'_nu/J_nu, CF2 gives (J' + iY')/(J + iY), and the Wronskian fixes
// the normalization. Valid and fast for x >= 2; only called above the series crossover.
double bessel_j_steed(double nu, double x) {
  const int nl = std::max(0, static_cast<int>(nu - x + 1.5));
  const double mu = nu - nl;
  const double xi = 1.0 / x;
  const double xi2 = 2.0 * xi;

  // CF1 by modified Lentz.
  int isign = 1;
  double h = std::max(nu * xi, kTiny);
  double b = xi2 * nu;
  double d = 0.0;
  double c = h;
  int i = 1;
  for (; i <= kMaxIter; ++i) {
    b += xi2;
    d = b - d;
    if (std::abs(d) < kTiny) d = kTiny;
    c = b - 1.0 / c;
    if (std::abs(c) < kTiny) c = kTiny;
    d = 1.0 / d;
    const double del = c * d;
    h *= del;
    if (d < 0.0) isign = -isign;
    if (std::abs(del - 1.0) < kEps) break;
  }
  if (i > kMaxIter) {
    throw ConvergenceError("bessel_j: CF1 did not converge");
  }

  // Downward recurrence from nu to mu with unnormalized values.
  double jl = isign * 1.0e-30;
  double jpl = h * jl;
  const double jl_top = jl;
  double fact = nu * xi;
  for (int l = nl; l >= 1; --l) {
    const double jtemp = fact * jl + jpl;
    fact -= xi;
    jpl = fact * jtemp - jl;
    jl = jtemp;
  }
  if (jl == 0.0) jl = kEps;
  const double f = jpl / jl;

  // CF2 by complex modified Lentz.
  using C = std::complex<double>;
  const double mu2 = mu * mu;
  C cf = kTiny;
  C cc = cf;
  C dd = 0.0;
  for (i = 1; i <= kMaxIter; ++i) {
    const double a = (i - 0.5) * (i - 0.5) - mu2;
    const C bb(2.0 * x, 2.0 * i);
    dd = bb + a * dd;
    if (std::abs(dd) < kTiny) dd = kTiny;
    cc = bb + a / cc;
    if (std::abs(cc) < kTiny) cc = kTiny;
    dd = 1.0 / dd;
    const C delta = cc * dd;
    cf *= delta;
    if (std::abs(delta - 1.0) < kEps) break;
  }
  if (i > kMaxIter) {
    throw ConvergenceError("bessel_j: CF2 did not converge");
  }
  const C pq = C(-0.5 * xi, 1.0) + C(0.0, xi) * cf;
  const double p = pq.real();
  const double q = pq.imag();

  const double w = xi2 / kPi;
  const double gam = (p - f) / q;
  double jmu = std::sqrt(w / ((p - f) * gam + q));
  jmu = std::copysign(jmu, jl);
  return jl_top * (jmu / jl);
}

// Bracketed Newton on g with derivative dg, starting from a sign-change bracket [lo, hi].
double polish_root(const std::function<double(double)>& g, const std::function<double(double)>& dg,
                   double lo, double hi) {
  double glo = g(lo);
  // Bisect to a bracket narrow enough that Newton stays inside.
  for (int it = 0; it < 20; ++it) {
    const double mid = 0.5 * (lo + hi);
    const double gm = g(mid);
    if (gm == 0.0) return mid;
    if ((gm < 0) == (glo < 0)) {
      lo = mid;
      glo = gm;
    } else {
      hi = mid;
    }
  }
  double x = 0.5 * (lo + hi);
  for (int it = 0; it < 100; ++it) {
    const double gx = g(x);
    if (gx == 0.0) return x;
    if ((gx < 0) == (glo < 0)) {
      lo = x;
      glo = gx;
    } else {
      hi = x;
    }
    const double slope = dg(x);
    double next = x - gx / slope;
    if (!(next > lo && next < hi)) {
      next = 0.5 * (lo + hi);
    }
    const double dx = std::abs(next - x);
    x = next;
    if (dx <= 2.0 * kEps * std::abs(x) || hi - lo <= 2.0 * kEps * std::abs(x)) {
      break;
    }
  }
  return x;
}

std::vector<double> scan_roots(const std::function<double(double)>& g,
                               const std::function<double(double)>& dg, int count,
                               const RootScan& scan, const char* what) {
  if (count < 1) {
    throw DomainError(std::string(what) + ": count must be positive");
  }
  if (!(scan.step > 0.0)) {
    throw DomainError(std::string(what) + ": scan step must be positive");
  }
  std::vector<double> roots;
  roots.reserve(count);
  double x_prev = scan.step;
  double g_prev = g(x_prev);
  for (long k = 2; static_cast<int>(roots.size()) < count; ++k) {
    const double x = static_cast<double>(k) * scan.step;
    if (x > scan.max_x) {
      throw ConvergenceError(std::string(what) + ": could not isolate " + std::to_string(count) +
                             " roots below x = " + std::to_string(scan.max_x));
    }
    const double gx = g(x);
    if (gx == 0.0) {
      roots.push_back(x);
    } else if ((gx < 0) != (g_prev < 0) && g_prev != 0.0) {
      roots.push_back(polish_root(g, dg, x_prev, x));
    }
    x_prev = x;
    g_prev = gx;
  }
  return roots;
}

}  // namespace

double bessel_j(BesselOrder order, double x) {
  const double q = order.value();
  if (!(x >= 0.0) || !std::isfinite(x)) {
    throw DomainError("bessel_j: argument must be finite and non-negative");
  }
  if (x == 0.0) {
    return q == 0.0 ? 1.0 : 0.0;
  }
  if (x < series_crossover(q)) {
    return bessel_j_series(q, x);
  }
  return bessel_j_steed(q, x);
}

double bessel_j_prime(BesselOrder order, double x) {
  const double q = order.value();
  if (q == 0.0) {
    if (!(x >= 0.0)) {
      throw DomainError("bessel_j_prime: argument must be non-negative");
    }
    return -bessel_j(BesselOrder(1.0), x);
  }
  if (!(x > 0.0)) {
    throw DomainError("bessel_j_prime: argument must be positive for q > 0");
  }
  if (q >= 1.0) {
    return 0.5 * (bessel_j(BesselOrder(q - 1.0), x) - bessel_j(BesselOrder(q + 1.0), x));
  }
  return q / x * bessel_j(order, x) - bessel_j(BesselOrder(q + 1.0), x);
}

std::vector<double> find_zeros(BesselOrder order, int count, const RootScan& scan) {
  auto g = [order](double x) { return bessel_j(order, x); };
  auto dg = [order](double x) { return bessel_j_prime(order, x); };
  return scan_roots(g, dg, count, scan, "find_zeros");
}

std::vector<double> find_extrema(BesselOrder order, int count, const RootScan& scan) {
  const double q = order.value();
  if (count < 1) {
    throw DomainError("find_extrema: count must be positive");
  }
  auto g = [order](double x) { return bessel_j_prime(order, x); };
  // J'' from Bessel's equation.
  auto dg = [order, q](double x) {
    return -bessel_j_prime(order, x) / x - (1.0 - q * q / (x * x)) * bessel_j(order, x);
  };
  if (q == 0.0) {
    std::vector<double> roots{0.0};
    if (count > 1) {
      const auto rest = scan_roots(g, dg, count - 1, scan, "find_extrema");
      roots.insert(roots.end(), rest.begin(), rest.end());
    }
    return roots;
  }
  return scan_roots(g, dg, count, scan, "find_extrema");
}

}  // namespace icecav
