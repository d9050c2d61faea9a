// SPDX-License-Identifier: Apache-2.0
//
// Acceptance checks. Prints one PASS/FAIL line per criterion and exits non-zero if any fails.
#include <array>
#include <chrono>
#include <cmath>
#include <complex>
#include <cstdio>
#include <functional>
#include <numbers>
#include <string>
#include <vector>

#include "icecav/oracle_1d.hpp"
#include "icecav/perturbation.hpp"
#include "icecav/spinning_piston.hpp"
#include "icecav/transient.hpp"

using namespace icecav;

namespace {

constexpr double kPi = std::numbers::pi;
const Complex kI(0.0, 1.0);

struct Outcome {
  bool pass;
  std::string detail;
};

std::string num(double v, int digits = 3) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.*e", digits, v);
  return buf;
}

// 1. Relaxation time of the gecko damping with coupling 1e-3.
Outcome relaxation() {
  const MaterialParams m = find_preset("gecko")->materials;
  const double t = relaxation_time(m);
  return {m.coupling() == 1e-3 && m.alpha == 2611.0 && std::abs(t - 2.6457e-3) <= 1e-7,
          "T_eq = " + num(t, 8) + " s"};
}

// 2. Largest coupling entry sits in the axial row for both presets and n3 = 1..4.
Outcome dominance() {
  bool ok = true;
  std::string detail;
  for (const char* name : {"gecko", "varanus"}) {
    const Preset p = *find_preset(name);
    for (int n3 = 1; n3 <= 4; ++n3) {
      const auto rep = coupling_matrix(p.geometry, p.materials, p.stimulus, n3);
      const auto [row, col] = rep.argmax();
      ok = ok && row == 0 && rep.value.allFinite();
      detail += std::string(detail.empty() ? "" : " ") + name[0] + std::to_string(n3) + ":" +
                std::to_string(row);
    }
  }
  return {ok, "argmax rows " + detail};
}

// 3. Empirical settling of the fundamental membrane mode inside the figure windows.
Outcome settling() {
  bool ok = true;
  std::string detail;
  for (const auto& [name, window] : {std::pair{"gecko", 5e-3}, std::pair{"varanus", 25e-3}}) {
    const Preset p = *find_preset(name);
    const MembraneMode k = membrane_mode(p.geometry, 1, 1);
    const auto prof = transient_profile(p.materials, k, p.stimulus, TimeGrid{window, 5001});
    const auto t = settling_time(prof, p.materials.coupling());
    ok = ok && t && *t < window;
    detail += std::string(detail.empty() ? "" : ", ") + name + " " + (t ? num(*t) : "none") +
              " s < " + num(window);
  }
  return {ok, detail};
}

double relative(const Eigen::MatrixXcd& a, const Eigen::MatrixXcd& ref) {
  return (a - ref).norm() / ref.norm();
}

// 4. Order-1 Picard iteration against the closed forms on a 2 ms gecko window.
Outcome first_order() {
  const Preset p = *find_preset("gecko");
  const ModeSet set = build_mode_set(p.geometry, Truncation{});
  const double window = 2e-3;
  const double w_max = fastest_frequency(set, p.materials, p.stimulus);
  const int samples = static_cast<int>(std::ceil(20.0 * w_max * window / (2.0 * kPi))) + 1;
  const TimeGrid grid{window, samples};
  const FieldHistory hist = picard_iterate(set, p.geometry, p.materials, p.stimulus, grid, 1);
  const auto amps = membrane_amplitudes_qs(set, p.geometry, p.materials, p.stimulus);

  const int stride = 16;
  const int cols = (samples - 1) / stride + 1;
  const auto nk = static_cast<Eigen::Index>(set.membrane.size());
  const auto nc = static_cast<Eigen::Index>(set.cavity.size());
  Eigen::MatrixXcd mem(2 * nk, cols), mem_ref(2 * nk, cols);
  Eigen::MatrixXcd prs(nc, cols), prs_ref(nc, cols);
  for (int c = 0; c < cols; ++c) {
    const int j = c * stride;
    const double t = grid.at(j);
    for (Eigen::Index k = 0; k < nk; ++k) {
      const MembraneMode& m = set.membrane[k];
      mem(k, c) = hist.membrane_zero(k, j);
      mem(nk + k, c) = hist.membrane_length(k, j);
      mem_ref(k, c) = total_membrane_amplitude(amps.zero[k], p.materials, m, p.stimulus, t);
      mem_ref(nk + k, c) = total_membrane_amplitude(amps.length[k], p.materials, m, p.stimulus, t);
    }
    prs.col(c) = hist.pressure.col(j);
    prs_ref.col(c) = first_order_pressure(set, p.materials, p.stimulus, amps, t);
  }
  const double e_mem = relative(mem, mem_ref);
  const double e_prs = relative(prs, prs_ref);

  // Cavity response to purely harmonic membranes against the quasi-stationary pressure.
  const double w = p.stimulus.omega;
  Eigen::MatrixXcd acc0(nk, samples), accL(nk, samples);
  for (int j = 0; j < samples; ++j) {
    const Complex phase = -w * w * std::exp(kI * w * grid.at(j));
    acc0.col(j) = amps.zero * phase;
    accL.col(j) = amps.length * phase;
  }
  const Eigen::MatrixXcd qs = pressure_from_acceleration(set, p.materials, acc0, accL, grid);
  Eigen::MatrixXcd qs_num(nc, cols), qs_ref(nc, cols);
  for (int c = 0; c < cols; ++c) {
    qs_num.col(c) = qs.col(c * stride);
    qs_ref.col(c) = pressure_amplitudes(set, p.materials, p.stimulus, amps, grid.at(c * stride));
  }
  const double e_qs = relative(qs_num, qs_ref);
  const bool ok = e_mem <= 1e-4 && e_prs <= 1e-4 && e_qs <= 1e-4;
  return {ok, "membrane " + num(e_mem) + ", pressure " + num(e_prs) + ", quasi-stationary " +
                  num(e_qs) + " (" + std::to_string(samples) + " samples)"};
}

// d/dt f at t = 0 from the fifth-degree one-sided stencil on f(0), ..., f(5h).
Complex start_slope(const std::function<Complex(double)>& f, double h) {
  constexpr std::array<double, 6> w{-137.0 / 60.0, 5.0, -5.0, 10.0 / 3.0, -5.0 / 4.0, 1.0 / 5.0};
  Complex d = 0.0;
  for (int j = 0; j < 6; ++j) d += w[j] * f(j * h);
  return d / h;
}

// 5. Fields start from rest.
Outcome initial_rest() {
  const Preset p = *find_preset("gecko");
  const auto& g = p.geometry;
  const ModeSet set = build_mode_set(g, Truncation{});
  const auto amps = membrane_amplitudes_qs(set, g, p.materials, p.stimulus);
  const std::vector<CylPoint> points{{0.0, 0.0, 0.0}, {0.003, 1.0, 0.007}, {0.0066, 4.0, 0.022},
                                     {0.001, 2.5, 0.015}};
  using Modal = std::function<Eigen::VectorXcd(double)>;
  const Modal qs = [&](double t) { return pressure_amplitudes(set, p.materials, p.stimulus, amps, t); };
  const Modal full = [&](double t) { return first_order_pressure(set, p.materials, p.stimulus, amps, t); };

  double worst = 0.0;
  for (const Modal& modal : {qs, full}) {
    for (const auto& x : points) {
      auto field = [&](double t) {
        FieldSnapshot s;
        s.pressure = modal(t);
        return evaluate_pressure(set, g, s, x);
      };
      double value_scale = 0.0;
      double rate_scale = 0.0;
      for (double t = 1e-4; t <= 2e-3; t += 1e-4) {
        value_scale = std::max(value_scale, std::abs(field(t)));
        rate_scale = std::max(rate_scale, std::abs((field(t + 1e-8) - field(t - 1e-8)) / 2e-8));
      }
      worst = std::max(worst, std::abs(field(0.0)) / value_scale);
      worst = std::max(worst, std::abs(start_slope(field, 5e-9)) / rate_scale);
    }
  }
  for (End end : {End::zero, End::length}) {
    for (const SectorPoint q : {SectorPoint{0.0005, 0.3}, SectorPoint{0.002, 4.0}}) {
      double scale = 0.0;
      for (double t = 1e-4; t <= 2e-3; t += 1e-4) {
        scale = std::max(scale, std::abs(total_membrane(set, g, p.materials, p.stimulus, amps, end, q, t)));
      }
      worst = std::max(worst, std::abs(total_membrane(set, g, p.materials, p.stimulus, amps, end, q, 0.0)) / scale);
    }
  }
  return {worst <= 1e-10, "largest start value relative to later scale " + num(worst)};
}

// 6. The two 1-D solvers agree on random smooth data.
Outcome oracle() {
  double worst = 0.0;
  for (std::uint64_t seed = 1; seed <= 20; ++seed) {
    const OneDProblem prob = random_problem(seed);
    worst = std::max(worst, relative_l2(solve_modal(prob), solve_delta_source(prob)));
  }
  return {worst <= 1e-6, "20 seeds, worst relative L2 " + num(worst)};
}

// 7. Piston formula equals the axial-mode truncation of the full synthesis.
Outcome piston() {
  double worst = 0.0;
  for (const char* name : {"gecko", "varanus"}) {
    const Preset p = *find_preset(name);
    const ModeSet set = build_mode_set(p.geometry, Truncation{});
    const auto amps = membrane_amplitudes_qs(set, p.geometry, p.materials, p.stimulus);
    for (double t : {1e-4, 7e-4, 3.3e-3}) {
      for (int i = 0; i <= 10; ++i) {
        const CylPoint x{0.3 * p.geometry.a_cyl, 0.55 * i, p.geometry.length * i / 10.0};
        const Complex a = piston_pressure(set, p.geometry, p.materials, p.stimulus, amps, t, x);
        const Complex b = axial_pressure(set, p.geometry, p.materials, p.stimulus, amps, t, x);
        worst = std::max(worst, std::abs(a - b) / std::abs(b));
      }
    }
  }
  return {worst <= 1e-10, "worst relative difference " + num(worst)};
}

// 8. Bessel zeros and extrema: refinement stability, recurrence and interlacing.
Outcome special_functions() {
  const double q_sector = kPi / (2.0 * (kPi - kPi / 30.0));
  double drift = 0.0;
  double recurrence = 0.0;
  bool interlaced = true;
  for (double q : {0.0, 1.0, 2.0, q_sector}) {
    const BesselOrder o(q);
    const auto z = find_zeros(o, 5);
    const auto e = find_extrema(o, 5);
    const auto z2 = find_zeros(o, 5, RootScan{kPi / 16.0});
    const auto e2 = find_extrema(o, 5, RootScan{kPi / 16.0});
    for (int i = 0; i < 5; ++i) {
      drift = std::max({drift, std::abs(z[i] - z2[i]), std::abs(e[i] - e2[i])});
      // J_{q} + J_{q+2} = 2 (q+1)/x J_{q+1} at the roots.
      for (double x : {z[i], e[i] > 0.0 ? e[i] : 0.5}) {
        const double lhs = bessel_j(o, x) + bessel_j(BesselOrder(q + 2.0), x);
        const double rhs = 2.0 * (q + 1.0) / x * bessel_j(BesselOrder(q + 1.0), x);
        recurrence = std::max(recurrence, std::abs(lhs - rhs));
      }
    }
    const auto next = find_zeros(BesselOrder(q + 1.0), 5);
    for (int i = 0; i < 5; ++i) {
      interlaced = interlaced && z[i] < next[i] && (i == 4 || next[i] < z[i + 1]);
      interlaced = interlaced && e[i] < z[i] && (i == 4 || z[i] < e[i + 1]);
    }
  }
  return {drift <= 1e-9 && recurrence <= 1e-12 && interlaced,
          "refinement drift " + num(drift) + ", recurrence residual " + num(recurrence) +
              (interlaced ? ", interlacing holds" : ", interlacing broken")};
}

// 9. Pressure at exact axial resonance equals the two-sided frequency limit.
Outcome resonance() {
  using LC = std::complex<long double>;
  const Preset p = *find_preset("gecko");
  const auto& g = p.geometry;
  const auto& m = p.materials;
  const ModeSet set = build_mode_set(g, Truncation{});
  // Quasi-stationary pressure of mode `index` at frequency w, long double throughout.
  auto oracle_pressure = [&](Eigen::Index index, long double w, long double t) {
    const long double c = m.c;
    const long double kx = w / c;
    LC s = 0.0L;
    for (End end : {End::zero, End::length}) {
      const long double phase = (end == End::zero ? 0.5L : -0.5L) * kx * g.length;
      const LC pex = LC(p.stimulus.p0) * std::polar(1.0L, phase);
      for (Eigen::Index k = 0; k < static_cast<Eigen::Index>(set.membrane.size()); ++k) {
        const long double wk2 = static_cast<long double>(m.c_m) * m.c_m * -set.membrane[k].gamma;
        const LC den(-w * w + wk2, 2.0L * m.alpha * w);
        const LC a = -pex * static_cast<long double>(set.membrane_integrals[k]) /
                     (static_cast<long double>(m.rho_m) * m.thickness * den);
        const std::complex<double> o = set.overlap(end)(index, k);
        s += LC(o.real(), o.imag()) * a;
      }
    }
    const long double wn = set.cavity[index].omega(m.c);
    const LC r = std::cos(wn * t) + LC(0.0L, w) * std::sin(wn * t) / wn;
    return static_cast<long double>(m.rho0) * c * c * w * w * s * (std::polar(1.0L, w * t) - r) /
           (w * w - wn * wn);
  };
  double worst = 0.0;
  for (int n3 = 1; n3 <= 3; ++n3) {
    Eigen::Index index = -1;
    for (Eigen::Index i = 0; i < static_cast<Eigen::Index>(set.cavity.size()); ++i) {
      if (set.cavity[i].is_axial() && set.cavity[i].n3 == n3) index = i;
    }
    Stimulus tuned = p.stimulus;
    tuned.omega = set.cavity[index].omega(m.c);
    tuned.k_axial = tuned.omega / m.c;
    const auto amps = membrane_amplitudes_qs(set, g, m, tuned);
    for (double t : {2e-4, 1.1e-3, 4e-3}) {
      const Complex lib = pressure_amplitude(set, index, m, tuned, amps, t);
      const LC limit = 0.5L * (oracle_pressure(index, tuned.omega + 1e-4L, t) +
                               oracle_pressure(index, tuned.omega - 1e-4L, t));
      const Complex lim(static_cast<double>(limit.real()), static_cast<double>(limit.imag()));
      worst = std::max(worst, std::abs(lib - lim) / std::abs(lim));
    }
  }
  return {worst <= 1e-6, "worst relative deviation from the limit " + num(worst)};
}

}  // namespace

int main() {
  const std::vector<std::pair<const char*, std::function<Outcome()>>> criteria{
      {"relaxation time", relaxation},
      {"coupling dominance at the axial rank", dominance},
      {"membrane relaxation within the figure windows", settling},
      {"first-order Picard iteration matches the closed forms", first_order},
      {"fields start from rest", initial_rest},
      {"1-D boundary-source solvers agree", oracle},
      {"piston formula equals the axial truncation", piston},
      {"Bessel zeros and extrema", special_functions},
      {"finite pressure at axial resonance", resonance},
  };
  int failures = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    const auto start = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = criteria[i].second();
    } catch (const std::exception& e) {
      o = {false, std::string("threw: ") + e.what()};
    }
    const double secs =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    std::printf("criterion %zu: %s %s: %s [%.1f s]\n", i + 1, o.pass ? "PASS" : "FAIL",
                criteria[i].first, o.detail.c_str(), secs);
    std::fflush(stdout);
    failures += o.pass ? 0 : 1;
  }
  return failures == 0 ? 0 : 1;
}
