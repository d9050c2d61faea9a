// SPDX-License-Identifier: Apache-2.0
#include "icecav/geometry.hpp"

#include <array>
#include <cmath>
#include <map>
#include <mutex>
#include <sstream>
#include <utility>

namespace icecav {
namespace {

constexpr double kPi = std::numbers::pi;

std::string describe(const char* what, double value) {
  std::ostringstream os;
  os.precision(17);
  os << what << " (got " << value << ")";
  return os.str();
}

double axial_measure(const CavityGeometry& geom, int n3) {
  return n3 == 0 ? geom.length : 0.5 * geom.length;
}

// Natural size of a radial integral int_0^a r f(r) dr with |f| <= 1.
double radial_scale(double a) { return 0.5 * a * a; }

// int_0^a f(r) dr through r = a s^2, which smooths the r^q endpoint behaviour of
// fractional-order Bessel functions.
template <typename F>
double integrate_radial(F&& f, double a, double rel_tol, double abs_floor) {
  return integrate_converged([&](double s) { return 2.0 * a * s * f(a * s * s); }, 0.0, 1.0,
                             rel_tol, abs_floor);
}

}  // namespace

namespace detail {

const QuadratureRule<double>& cached_gauss_legendre(int n) {
  static const std::array<QuadratureRule<double>, 4> rules = {
      gauss_legendre<double>(64), gauss_legendre<double>(128), gauss_legendre<double>(256),
      gauss_legendre<double>(512)};
  switch (n) {
    case 64:
      return rules[0];
    case 128:
      return rules[1];
    case 256:
      return rules[2];
    case 512:
      return rules[3];
    default:
      throw DomainError("cached_gauss_legendre: only 64, 128, 256, 512 nodes are cached");
  }
}

}  // namespace detail

double CavityGeometry::sector_span() const { return 2.0 * kPi - 2.0 * beta; }

void CavityGeometry::validate() const {
  if (!(length > 0.0)) throw ConfigError(describe("geometry.L must be positive", length));
  if (!(a_cyl > 0.0)) throw ConfigError(describe("geometry.a_cyl must be positive", a_cyl));
  if (!(a_tymp > 0.0)) throw ConfigError(describe("geometry.a_tymp must be positive", a_tymp));
  if (!(a_tymp <= a_cyl)) {
    throw ConfigError(describe("geometry.a_tymp must not exceed geometry.a_cyl", a_tymp));
  }
  if (!(beta >= 0.0 && beta < kPi)) {
    throw ConfigError(describe("geometry.beta must lie in [0, pi)", beta));
  }
}

void MaterialParams::validate() const {
  if (!(c > 0.0)) throw ConfigError(describe("materials.c must be positive", c));
  if (!(c_m > 0.0)) throw ConfigError(describe("materials.c_m must be positive", c_m));
  if (!(rho0 > 0.0)) throw ConfigError(describe("materials.rho0 must be positive", rho0));
  if (!(rho_m > 0.0)) throw ConfigError(describe("materials.rho_m must be positive", rho_m));
  if (!(thickness > 0.0)) {
    throw ConfigError(describe("materials.d must be positive", thickness));
  }
  if (!(alpha > 0.0)) throw ConfigError(describe("materials.alpha must be positive", alpha));
  const double g = coupling();
  if (!(g > 0.0 && g < 1.0)) {
    throw ConfigError(describe("coupling rho0/rho_m must lie in (0, 1)", g));
  }
}

Complex Stimulus::end_amplitude(End end, double length) const {
  const double phase = (end == End::zero ? 0.5 : -0.5) * k_axial * length;
  return p0 * std::polar(1.0, phase);
}

void Stimulus::validate() const {
  if (!std::isfinite(p0)) throw ConfigError("stimulus.p0 must be finite");
  if (!(omega > 0.0) || !std::isfinite(omega)) {
    throw ConfigError(describe("stimulus.omega must be positive", omega));
  }
  if (!std::isfinite(k_axial)) throw ConfigError("stimulus.k_axial must be finite");
}

void Truncation::validate() const {
  if (n1_max < 1 || n2_max < 0 || n3_max < 0 || k1_max < 1 || k2_max < 1) {
    throw ConfigError("truncation: need n1_max >= 1, n2_max >= 0, n3_max >= 0, k1_max >= 1, "
                      "k2_max >= 1");
  }
}

double CavityMode::omega(double c) const { return c * std::sqrt(-lambda); }

double MembraneMode::omega(double c_m) const { return c_m * std::sqrt(-gamma); }

CavityEigenvalue cavity_eigenvalue(const CavityGeometry& geom, int n1, int n2, int n3) {
  if (n1 < 1 || n3 < 0) {
    throw DomainError("cavity mode indices need n1 >= 1 and n3 >= 0");
  }
  const double mu = find_extrema(BesselOrder(std::abs(n2)), n1).back();
  const double kx = n3 * kPi / geom.length;
  const double kr = mu / geom.a_cyl;
  return {mu, -(kr * kr + kx * kx)};
}

MembraneEigenvalue membrane_eigenvalue(const CavityGeometry& geom, int k1, int k2) {
  if (k1 < 1 || k2 < 1) {
    throw DomainError("membrane mode indices need k1 >= 1 and k2 >= 1");
  }
  const double q = k2 * kPi / (2.0 * (kPi - geom.beta));
  const double nu = find_zeros(BesselOrder(q), k1).back();
  return {q, nu, -(nu * nu) / (geom.a_tymp * geom.a_tymp)};
}

CavityMode cavity_mode(const CavityGeometry& geom, int n1, int n2, int n3) {
  const auto [mu, lambda] = cavity_eigenvalue(geom, n1, n2, n3);
  const BesselOrder order(std::abs(n2));
  const double a = geom.a_cyl;
  const double radial = integrate_radial(
      [&](double r) {
        const double j = bessel_j(order, mu * r / a);
        return r * j * j;
      },
      a, 1e-12, 1e-14 * radial_scale(a));
  const double norm2 = radial * 2.0 * kPi * axial_measure(geom, n3);
  return CavityMode{n1, n2, n3, mu, lambda, 1.0 / std::sqrt(norm2)};
}

MembraneMode membrane_mode(const CavityGeometry& geom, int k1, int k2) {
  const auto [q, nu, gamma] = membrane_eigenvalue(geom, k1, k2);
  const BesselOrder order(q);
  const double a = geom.a_tymp;
  const double radial = integrate_radial(
      [&](double r) {
        const double j = bessel_j(order, nu * r / a);
        return r * j * j;
      },
      a, 1e-12, 1e-14 * radial_scale(a));
  const double norm2 = radial * 0.5 * geom.sector_span();
  return MembraneMode{k1, k2, q, nu, gamma, 1.0 / std::sqrt(norm2)};
}

Complex cavity_eigenfunction(const CavityGeometry& geom, const CavityMode& n, const CylPoint& p) {
  constexpr double slack = 1e-12;
  if (!(p.r >= 0.0 && p.r <= geom.a_cyl * (1 + slack)) ||
      !(p.phi >= 0.0 && p.phi < 2.0 * kPi) ||
      !(p.x >= 0.0 && p.x <= geom.length * (1 + slack))) {
    throw DomainError("cavity_eigenfunction: point outside the cylinder");
  }
  const double radial = bessel_j(BesselOrder(std::abs(n.n2)), n.mu * p.r / geom.a_cyl);
  const double axial = std::cos(n.n3 * kPi * p.x / geom.length);
  return n.inv_norm * radial * axial * std::polar(1.0, n.n2 * p.phi);
}

double membrane_eigenfunction(const CavityGeometry& geom, const MembraneMode& k,
                              const SectorPoint& p) {
  constexpr double slack = 1e-12;
  const double span = geom.sector_span();
  if (!(p.r >= 0.0 && p.r <= geom.a_tymp * (1 + slack)) ||
      !(p.phi >= 0.0 && p.phi <= span * (1 + slack))) {
    throw DomainError("membrane_eigenfunction: point outside the membrane sector");
  }
  const double radial = bessel_j(BesselOrder(k.q), k.nu * p.r / geom.a_tymp);
  return k.inv_norm * radial * std::sin(k.k2 * kPi * p.phi / span);
}

double overlap_radial(const CavityGeometry& geom, const CavityMode& n, const MembraneMode& k) {
  const BesselOrder cav(std::abs(n.n2));
  const BesselOrder mem(k.q);
  const double at = geom.a_tymp;
  return integrate_radial(
      [&](double r) {
        return r * bessel_j(mem, k.nu * r / at) * bessel_j(cav, n.mu * r / geom.a_cyl);
      },
      at, 1e-10, 1e-12 * radial_scale(at));
}

namespace {

// int_0^S e^{i kappa phi} dphi.
Complex exp_integral(double kappa, double span) {
  const double x = kappa * span;
  if (std::abs(x) < 1e-8) return Complex(span, 0.5 * x * span);
  return (std::polar(1.0, x) - 1.0) / Complex(0.0, kappa);
}

// int_0^S e^{-i n2 (phi' + beta)} sin(k2 pi phi' / S) dphi'.
Complex angular_factor(const CavityGeometry& geom, int n2, int k2) {
  const double span = geom.sector_span();
  const double b = k2 * kPi / span;
  const Complex sum = exp_integral(b - n2, span) - exp_integral(-b - n2, span);
  return std::polar(1.0, -n2 * geom.beta) * sum / Complex(0.0, 2.0);
}

double end_factor(const CavityGeometry& geom, int n3, End end) {
  (void)geom;
  return end == End::zero ? 1.0 : (n3 % 2 == 0 ? 1.0 : -1.0);
}

}  // namespace

Complex overlap_full(const CavityGeometry& geom, const CavityMode& n, const MembraneMode& k,
                     End end) {
  return n.inv_norm * k.inv_norm * overlap_radial(geom, n, k) * angular_factor(geom, n.n2, k.k2) *
         end_factor(geom, n.n3, end);
}

double membrane_integral(const CavityGeometry& geom, const MembraneMode& k) {
  const BesselOrder mem(k.q);
  const double at = geom.a_tymp;
  const double radial = integrate_radial(
      [&](double r) { return r * bessel_j(mem, k.nu * r / at); }, at, 1e-10,
      1e-12 * radial_scale(at));
  const double span = geom.sector_span();
  const double angular = span / (k.k2 * kPi) * (1.0 - std::cos(k.k2 * kPi));
  return k.inv_norm * radial * angular;
}

ModeSet build_mode_set(const CavityGeometry& geom, const Truncation& trunc) {
  geom.validate();
  trunc.validate();
  ModeSet set;
  for (int n3 = 0; n3 <= trunc.n3_max; ++n3) {
    for (int n2 = -trunc.n2_max; n2 <= trunc.n2_max; ++n2) {
      for (int n1 = 1; n1 <= trunc.n1_max; ++n1) {
        set.cavity.push_back(cavity_mode(geom, n1, n2, n3));
      }
    }
  }
  for (int k2 = 1; k2 <= trunc.k2_max; ++k2) {
    for (int k1 = 1; k1 <= trunc.k1_max; ++k1) {
      set.membrane.push_back(membrane_mode(geom, k1, k2));
    }
  }

  // Radial overlaps depend on (n1, |n2|, k) only, angular factors on (n2, k2) only.
  std::map<std::pair<int, int>, std::vector<double>> radial;
  std::map<std::pair<int, int>, Complex> angular;
  const auto ncav = static_cast<Eigen::Index>(set.cavity.size());
  const auto nmem = static_cast<Eigen::Index>(set.membrane.size());
  set.overlap_zero.resize(ncav, nmem);
  set.overlap_length.resize(ncav, nmem);
  set.membrane_integrals.resize(nmem);
  for (Eigen::Index j = 0; j < nmem; ++j) {
    set.membrane_integrals[j] = membrane_integral(geom, set.membrane[j]);
  }
  for (Eigen::Index i = 0; i < ncav; ++i) {
    const CavityMode& n = set.cavity[i];
    auto& rad = radial[{n.n1, std::abs(n.n2)}];
    if (rad.empty()) {
      rad.reserve(nmem);
      for (const auto& k : set.membrane) rad.push_back(overlap_radial(geom, n, k));
    }
    for (Eigen::Index j = 0; j < nmem; ++j) {
      const MembraneMode& k = set.membrane[j];
      auto it = angular.find({n.n2, k.k2});
      if (it == angular.end()) {
        it = angular.emplace(std::pair{n.n2, k.k2}, angular_factor(geom, n.n2, k.k2)).first;
      }
      const Complex value = n.inv_norm * k.inv_norm * rad[j] * it->second;
      set.overlap_zero(i, j) = value * end_factor(geom, n.n3, End::zero);
      set.overlap_length(i, j) = value * end_factor(geom, n.n3, End::length);
    }
  }
  return set;
}

double membrane_speed_for(const CavityGeometry& geom, double fundamental_hz) {
  const auto ev = membrane_eigenvalue(geom, 1, 1);
  return 2.0 * kPi * fundamental_hz * geom.a_tymp / ev.nu;
}

namespace {

Preset make_preset(std::string name, CavityGeometry geom, double alpha, double stimulus_hz,
                   double fundamental_hz) {
  MaterialParams mat;
  mat.c = 343.0;
  mat.rho0 = 1.2;
  mat.rho_m = 1200.0;
  mat.thickness = 1.0e-5;
  mat.alpha = alpha;
  mat.c_m = membrane_speed_for(geom, fundamental_hz);
  Stimulus stim;
  stim.p0 = 1.0;
  stim.omega = 2.0 * kPi * stimulus_hz;
  stim.k_axial = stim.omega / mat.c;
  return Preset{std::move(name), geom, mat, stim, fundamental_hz};
}

}  // namespace

std::optional<Preset> find_preset(const std::string& name) {
  if (name == "gecko") {
    return make_preset("gecko", CavityGeometry{0.022, 0.0066, 0.0026, kPi / 30.0}, 2611.0, 750.0,
                       1050.0);
  }
  if (name == "varanus") {
    return make_preset("varanus", CavityGeometry{0.0155, 0.006, 0.0026, kPi / 30.0}, 347.0, 200.0,
                       550.0);
  }
  return std::nullopt;
}

std::vector<std::string> preset_names() { return {"gecko", "varanus"}; }

}  // namespace icecav
