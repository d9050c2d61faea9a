// SPDX-License-Identifier: Apache-2.0
//
// Cylinder cavity with two sector membranes at its end caps, and the two orthonormal eigenbases
// built on it: Neumann modes of the cavity Laplacian and Dirichlet modes of the sector Laplacian.
#pragma once

#include <Eigen/Core>

#include <algorithm>
#include <complex>
#include <optional>
#include <string>
#include <vector>

#include "icecav/special_functions.hpp"

namespace icecav {

using Complex = std::complex<double>;

/// Cylinder of length `length` and radius `a_cyl`; the membranes occupy the sector
/// r <= a_tymp, phi in [beta, 2 pi - beta] on both end caps.
struct CavityGeometry {
  double length = 0.0;
  double a_cyl = 0.0;
  double a_tymp = 0.0;
  double beta = 0.0;

  /// Angular span of a membrane sector, 2 pi - 2 beta.
  double sector_span() const;
  /// Throws ConfigError naming the violated constraint.
  void validate() const;

  bool operator==(const CavityGeometry&) const = default;
};

struct MaterialParams {
  double c = 0.0;          // sound speed in air, m/s
  double c_m = 0.0;        // membrane wave speed, m/s
  double rho0 = 0.0;       // air density, kg/m^3
  double rho_m = 0.0;      // membrane density, kg/m^3
  double thickness = 0.0;  // membrane thickness, m
  double alpha = 0.0;      // membrane damping, 1/s

  /// Coupling strength rho0 / rho_m.
  double coupling() const { return rho0 / rho_m; }
  void validate() const;

  bool operator==(const MaterialParams&) const = default;
};

enum class End { zero, length };

/// Plane wave along the cylinder axis, switched on at t = 0. Its value at the end caps is
/// p0 e^{i omega t} e^{+i k L/2} at x = 0 and p0 e^{i omega t} e^{-i k L/2} at x = L.
struct Stimulus {
  double p0 = 0.0;
  double omega = 0.0;
  double k_axial = 0.0;

  /// Complex amplitude (without e^{i omega t}) seen by the membrane at `end`.
  Complex end_amplitude(End end, double length) const;
  void validate() const;

  bool operator==(const Stimulus&) const = default;
};

/// Cavity mode (n1, n2, n3): n1 >= 1 counts non-negative extrema of J_|n2| (mu_{1,0} = 0 is the
/// transverse-constant mode, the (0,0,n3) axial family), n2 is the signed azimuthal order and
/// n3 >= 0 the axial order. Eigenvalue and normalization are cached.
struct CavityMode {
  int n1 = 1;
  int n2 = 0;
  int n3 = 0;
  double mu = 0.0;
  double lambda = 0.0;    // -(mu^2/a_cyl^2 + (n3 pi/L)^2) <= 0
  double inv_norm = 0.0;  // 1 / Lambda_n

  bool is_axial() const { return n2 == 0 && n1 == 1; }
  /// Angular frequency c sqrt(-lambda).
  double omega(double c) const;
};

/// Membrane mode (k1, k2) on the sector: k1-th zero nu of J_q with q = k2 pi / (2(pi - beta)).
struct MembraneMode {
  int k1 = 1;
  int k2 = 1;
  double q = 0.0;
  double nu = 0.0;
  double gamma = 0.0;     // -nu^2 / a_tymp^2 < 0
  double inv_norm = 0.0;  // 1 / Lambda_k

  /// Undamped angular frequency c_m sqrt(-gamma).
  double omega(double c_m) const;
};

struct CylPoint {
  double r = 0.0;
  double phi = 0.0;
  double x = 0.0;
};

/// Point on a membrane; `phi` is the sector-local angle phi - beta in [0, 2 pi - 2 beta].
struct SectorPoint {
  double r = 0.0;
  double phi = 0.0;
};

struct CavityEigenvalue {
  double mu;
  double lambda;
};
struct MembraneEigenvalue {
  double q;
  double nu;
  double gamma;
};

CavityEigenvalue cavity_eigenvalue(const CavityGeometry& geom, int n1, int n2, int n3);
MembraneEigenvalue membrane_eigenvalue(const CavityGeometry& geom, int k1, int k2);

/// Fully populated mode with quadrature-computed normalization.
CavityMode cavity_mode(const CavityGeometry& geom, int n1, int n2, int n3);
MembraneMode membrane_mode(const CavityGeometry& geom, int k1, int k2);

Complex cavity_eigenfunction(const CavityGeometry& geom, const CavityMode& n, const CylPoint& p);
double membrane_eigenfunction(const CavityGeometry& geom, const MembraneMode& k,
                              const SectorPoint& p);

/// int_0^{a_tymp} r J_q(nu r / a_tymp) J_|n2|(mu r / a_cyl) dr, no normalization factors.
double overlap_radial(const CavityGeometry& geom, const CavityMode& n, const MembraneMode& k);

/// int_{Gamma_end} conj(Psi_n) Phi_k dS including normalizations and the end-cap cosine.
Complex overlap_full(const CavityGeometry& geom, const CavityMode& n, const MembraneMode& k,
                     End end);

/// int_Gamma Phi_k dS, the projection of a uniform unit pressure onto membrane mode k.
double membrane_integral(const CavityGeometry& geom, const MembraneMode& k);

/// Integral of f over [a, b] by Gauss-Legendre, starting at 64 nodes and doubling until two
/// successive values agree to `rel_tol` (relative to the larger magnitude, floored by
/// `abs_floor`). Throws ConvergenceError past 512 nodes.
template <typename F>
auto integrate_converged(F&& f, double a, double b, double rel_tol = 1e-10,
                         double abs_floor = 1e-300) -> decltype(f(a));

/// Index limits of a modal truncation.
struct Truncation {
  int n1_max = 5;
  int n2_max = 5;  // |n2| <= n2_max
  int n3_max = 8;
  int k1_max = 5;
  int k2_max = 5;

  void validate() const;
  bool operator==(const Truncation&) const = default;
};

/// Cavity and membrane modes of a truncation together with the surface overlap matrices
/// (rows: cavity modes, columns: membrane modes) at both end caps.
struct ModeSet {
  std::vector<CavityMode> cavity;
  std::vector<MembraneMode> membrane;
  Eigen::MatrixXcd overlap_zero;
  Eigen::MatrixXcd overlap_length;
  Eigen::VectorXd membrane_integrals;

  const Eigen::MatrixXcd& overlap(End end) const {
    return end == End::zero ? overlap_zero : overlap_length;
  }
};

ModeSet build_mode_set(const CavityGeometry& geom, const Truncation& trunc);

/// Named parameter bundle.
struct Preset {
  std::string name;
  CavityGeometry geometry;
  MaterialParams materials;
  Stimulus stimulus;
  double fundamental_hz = 0.0;  // undamped omega_11 / 2 pi of the membrane
};

/// "gecko" or "varanus"; nullopt for anything else.
std::optional<Preset> find_preset(const std::string& name);
std::vector<std::string> preset_names();

/// Membrane wave speed that puts the undamped (1,1) membrane mode at `fundamental_hz`.
double membrane_speed_for(const CavityGeometry& geom, double fundamental_hz);

// ---------------------------------------------------------------------------------------------

namespace detail {
const QuadratureRule<double>& cached_gauss_legendre(int n);
}

template <typename F>
auto integrate_converged(F&& f, double a, double b, double rel_tol, double abs_floor)
    -> decltype(f(a)) {
  using std::abs;
  auto coarse = detail::cached_gauss_legendre(64).integrate(f, a, b);
  for (int n = 128; n <= 512; n *= 2) {
    auto fine = detail::cached_gauss_legendre(n).integrate(f, a, b);
    const double scale = std::max({static_cast<double>(abs(fine)),
                                   static_cast<double>(abs(coarse)), abs_floor});
    if (static_cast<double>(abs(fine - coarse)) <= rel_tol * scale) {
      return fine;
    }
    coarse = fine;
  }
  throw ConvergenceError("integrate_converged: no agreement under node doubling up to 512");
}

}  // namespace icecav
