// SPDX-License-Identifier: Apache-2.0
#include "icecav/commands.hpp"

#include <cmath>
#include <fstream>
#include <numbers>
#include <sstream>

#include "icecav/errors.hpp"
#include "icecav/oracle_1d.hpp"
#include "icecav/perturbation.hpp"
#include "icecav/spinning_piston.hpp"
#include "icecav/transient.hpp"

namespace icecav {
namespace {

class CsvFile {
 public:
  CsvFile(const std::filesystem::path& path, const std::string& provenance,
          const std::string& header)
      : out_(path) {
    if (!out_) throw ConfigError("cannot write '" + path.string() + "'");
    out_ << provenance << "\n" << header << "\n";
  }

  template <typename... Ts>
  void row(const Ts&... fields) {
    bool first = true;
    ((out_ << (first ? "" : ",") << cell(fields), first = false), ...);
    out_ << "\n";
  }

 private:
  static std::string cell(double v) { return format_double(v); }
  static std::string cell(int v) { return std::to_string(v); }
  static std::string cell(long v) { return std::to_string(v); }
  static std::string cell(const std::string& v) { return v; }
  static std::string cell(const char* v) { return v; }

  std::ofstream out_;
};

std::filesystem::path prepare_dir(const std::string& dir) {
  std::filesystem::path p(dir);
  std::error_code ec;
  std::filesystem::create_directories(p, ec);
  if (ec) throw ConfigError("cannot create output directory '" + dir + "': " + ec.message());
  return p;
}

const char* end_name(End e) { return e == End::zero ? "0" : "L"; }

}  // namespace

CommandOutput cmd_modes(const RunConfig& config) {
  config.validate();
  const auto dir = prepare_dir(config.output_dir);
  const ModeSet set = build_mode_set(config.geometry, config.truncation);
  const std::string prov = provenance_line(config);
  CommandOutput out;

  out.files.push_back(dir / "cavity_modes.csv");
  CsvFile cav(out.files.back(), prov, "n1,n2,n3,mu,lambda,omega,inv_norm");
  for (const auto& n : set.cavity) {
    cav.row(n.n1, n.n2, n.n3, n.mu, n.lambda, n.omega(config.materials.c), n.inv_norm);
  }
  out.files.push_back(dir / "membrane_modes.csv");
  CsvFile mem(out.files.back(), prov, "k1,k2,q,nu,gamma,omega,omega_r,inv_norm");
  for (const auto& k : set.membrane) {
    const OscillatorKernel h = membrane_kernel(k, config.materials);
    mem.row(k.k1, k.k2, k.q, k.nu, k.gamma, k.omega(config.materials.c_m),
            h.underdamped() ? h.rate() : 0.0, k.inv_norm);
  }
  std::ostringstream s;
  s << set.cavity.size() << " cavity modes, " << set.membrane.size() << " membrane modes\n";
  out.summary = s.str();
  return out;
}

CommandOutput cmd_simulate(const RunConfig& config, SimulationMethod method) {
  config.validate();
  const auto dir = prepare_dir(config.output_dir);
  const ModeSet set = build_mode_set(config.geometry, config.truncation);
  const MaterialParams& mat = config.materials;
  const Stimulus& stim = config.stimulus;
  const TimeGrid grid{config.time_window, config.time_samples};
  const auto nc = static_cast<Eigen::Index>(set.cavity.size());
  const auto nk = static_cast<Eigen::Index>(set.membrane.size());

  FieldHistory hist;
  if (method == SimulationMethod::picard) {
    hist = picard_iterate(set, config.geometry, mat, stim, grid, 1);
  } else {
    const MembraneAmplitudes amps = membrane_amplitudes_qs(set, config.geometry, mat, stim);
    hist.grid = grid;
    hist.pressure.resize(nc, grid.samples);
    hist.membrane_zero.resize(nk, grid.samples);
    hist.membrane_length.resize(nk, grid.samples);
    for (int j = 0; j < grid.samples; ++j) {
      const double t = grid.at(j);
      hist.pressure.col(j) = first_order_pressure(set, mat, stim, amps, t);
      for (Eigen::Index k = 0; k < nk; ++k) {
        const MembraneMode& m = set.membrane[k];
        hist.membrane_zero(k, j) = total_membrane_amplitude(amps.zero[k], mat, m, stim, t);
        hist.membrane_length(k, j) = total_membrane_amplitude(amps.length[k], mat, m, stim, t);
      }
    }
  }

  const std::string prov = provenance_line(config);
  CommandOutput out;
  out.files.push_back(dir / "pressure.csv");
  {
    CsvFile csv(out.files.back(), prov, "t,n1,n2,n3,re,im");
    for (int j = 0; j < grid.samples; ++j) {
      for (Eigen::Index i = 0; i < nc; ++i) {
        const auto& n = set.cavity[i];
        const Complex p = hist.pressure(i, j);
        csv.row(grid.at(j), n.n1, n.n2, n.n3, p.real(), p.imag());
      }
    }
  }
  out.files.push_back(dir / "membrane.csv");
  {
    CsvFile csv(out.files.back(), prov, "t,end,k1,k2,re,im");
    for (int j = 0; j < grid.samples; ++j) {
      for (End e : {End::zero, End::length}) {
        const Eigen::MatrixXcd& m = e == End::zero ? hist.membrane_zero : hist.membrane_length;
        for (Eigen::Index k = 0; k < nk; ++k) {
          const Complex u = m(k, j);
          csv.row(grid.at(j), end_name(e), set.membrane[k].k1, set.membrane[k].k2, u.real(),
                  u.imag());
        }
      }
    }
  }
  std::ostringstream s;
  s << (method == SimulationMethod::picard ? "picard" : "closed-form") << " simulation: " << nc
    << " cavity modes, " << nk << " membrane modes, " << grid.samples << " samples over "
    << format_double(grid.t_end) << " s\n";
  out.summary = s.str();
  return out;
}

CommandOutput cmd_coupling(const RunConfig& config, int n3_min, int n3_max) {
  config.validate();
  if (n3_min < 0 || n3_max < n3_min) throw ConfigError("coupling: invalid n3 range");
  const auto dir = prepare_dir(config.output_dir);
  const std::string prov = provenance_line(config);
  CommandOutput out;
  std::ostringstream s;
  for (int n3 = n3_min; n3 <= n3_max; ++n3) {
    const SpinningReport rep =
        coupling_matrix(config.geometry, config.materials, config.stimulus, n3);
    out.files.push_back(dir / ("coupling_n3_" + std::to_string(n3) + ".csv"));
    {
      CsvFile csv(out.files.back(), prov, "n3,rank_n,rank_k,n1,n2,k1,k2,spin,overlap,value");
      for (std::size_t i = 0; i < rep.cavity.size(); ++i) {
        for (std::size_t j = 0; j < rep.membrane.size(); ++j) {
          const auto& c = rep.cavity[i];
          const auto& m = rep.membrane[j];
          const auto ii = static_cast<Eigen::Index>(i);
          const auto jj = static_cast<Eigen::Index>(j);
          csv.row(n3, c.rank, m.rank, c.n1, c.n2, m.k1, m.k2, rep.spin[ii], rep.overlap(ii, jj),
                  rep.value(ii, jj));
        }
      }
    }
    out.files.push_back(dir / ("coupling_matrix_n3_" + std::to_string(n3) + ".csv"));
    {
      // One row per cavity rank, one column per membrane rank.
      std::ofstream grid(out.files.back());
      if (!grid) throw ConfigError("cannot write '" + out.files.back().string() + "'");
      grid << prov << "\nrank_n";
      for (Eigen::Index j = 0; j < rep.value.cols(); ++j) grid << ",rank_k_" << j;
      grid << "\n";
      for (Eigen::Index i = 0; i < rep.value.rows(); ++i) {
        grid << i;
        for (Eigen::Index j = 0; j < rep.value.cols(); ++j) {
          grid << "," << format_double(rep.value(i, j));
        }
        grid << "\n";
      }
    }
    const auto [r, c] = rep.argmax();
    s << "n3=" << n3 << " argmax rank_n=" << r << " rank_k=" << c
      << " value=" << format_double(rep.value(r, c)) << "\n";
  }
  out.summary = s.str();
  return out;
}

CommandOutput cmd_transient(const RunConfig& config, int k1, int k2) {
  config.validate();
  const auto dir = prepare_dir(config.output_dir);
  const MembraneMode k = membrane_mode(config.geometry, k1, k2);
  const TimeGrid grid{config.time_window, config.time_samples};
  const TransientProfile prof = transient_profile(config.materials, k, config.stimulus, grid);
  CommandOutput out;
  out.files.push_back(dir / ("transient_k" + std::to_string(k1) + "_" + std::to_string(k2) + ".csv"));
  CsvFile csv(out.files.back(), provenance_line(config),
              "t,re_harm,im_harm,re_trans,im_trans,re_total,im_total");
  for (Eigen::Index j = 0; j < prof.time.size(); ++j) {
    csv.row(prof.time[j], prof.harmonic[j].real(), prof.harmonic[j].imag(),
            prof.transient[j].real(), prof.transient[j].imag(), prof.total[j].real(),
            prof.total[j].imag());
  }
  const auto settle = settling_time(prof, config.materials.coupling());
  std::ostringstream s;
  s << "mode (" << k1 << "," << k2 << ") relaxation_time=" << format_double(relaxation_time(config.materials))
    << " s settling_time=" << (settle ? format_double(*settle) + " s" : std::string("not within window"))
    << "\n";
  out.summary = s.str();
  return out;
}

OracleReport cmd_oracle1d(std::uint64_t seed, int cases, const std::filesystem::path& out_dir,
                          double tolerance) {
  if (cases < 1) throw ConfigError("oracle1d: need at least one case");
  const auto dir = prepare_dir(out_dir.string());
  OracleReport rep;
  rep.passed = true;
  rep.output.files.push_back(dir / "oracle1d.csv");
  std::ofstream csv(rep.output.files.back());
  if (!csv) throw ConfigError("cannot write '" + rep.output.files.back().string() + "'");
  csv << "# icecav " << kVersion << " seed=" << seed << "\ncase,seed,relative_error,pass\n";
  std::ostringstream s;
  for (int i = 0; i < cases; ++i) {
    const std::uint64_t case_seed = seed + static_cast<std::uint64_t>(i);
    const OneDProblem p = random_problem(case_seed);
    const double err = relative_l2(solve_modal(p), solve_delta_source(p));
    const bool ok = err <= tolerance;
    rep.passed = rep.passed && ok;
    csv << i << "," << case_seed << "," << format_double(err) << "," << (ok ? "1" : "0") << "\n";
    s << "case " << i << " seed " << case_seed << " relative_error " << format_double(err) << " "
      << (ok ? "PASS" : "FAIL") << "\n";
  }
  s << (rep.passed ? "all cases agree" : "disagreement above tolerance") << "\n";
  rep.output.summary = s.str();
  return rep;
}

CommandOutput cmd_report(const RunConfig& config) {
  config.validate();
  const auto dir = prepare_dir(config.output_dir);
  const MaterialParams& mat = config.materials;
  const Stimulus& stim = config.stimulus;
  std::ostringstream s;
  s << provenance_line(config) << "\n";
  if (config.preset) s << "preset = " << *config.preset << "\n";
  s << "stimulus_hz = " << format_double(stim.omega / (2.0 * std::numbers::pi)) << "\n";
  s << "coupling = " << format_double(mat.coupling()) << "\n";
  const double t_eq = relaxation_time(mat);
  s << "relaxation_time_s = " << format_double(t_eq) << "\n";

  const MembraneMode fundamental = membrane_mode(config.geometry, 1, 1);
  const TimeGrid grid{config.time_window, config.time_samples};
  const auto settle = settling_time(transient_profile(mat, fundamental, stim, grid), mat.coupling());
  s << "settling_time_s = " << (settle ? format_double(*settle) : std::string("none")) << "\n";

  for (int n3 = 1; n3 <= 4; ++n3) {
    const auto rep = coupling_matrix(config.geometry, mat, stim, n3);
    const auto [r, c] = rep.argmax();
    s << "dominance_n3_" << n3 << " = " << (r == 0 ? "axial" : "spinning") << " (rank_n " << r
      << ", rank_k " << c << ")\n";
  }

  const ModeSet set = build_mode_set(config.geometry, config.truncation);
  int warnings = 0;
  for (const auto& n : set.cavity) {
    const double wn = n.omega(mat.c);
    if (std::abs(wn - stim.omega) < 0.05 * stim.omega) {
      s << "warning: cavity mode (" << n.n1 << "," << n.n2 << "," << n.n3 << ") at "
        << format_double(wn / (2.0 * std::numbers::pi)) << " Hz is within 5% of the stimulus\n";
      ++warnings;
    }
  }
  for (const auto& k : set.membrane) {
    const double wk = k.omega(mat.c_m);
    if (std::abs(wk - stim.omega) < 0.05 * stim.omega) {
      s << "warning: membrane mode (" << k.k1 << "," << k.k2 << ") at "
        << format_double(wk / (2.0 * std::numbers::pi)) << " Hz is within 5% of the stimulus\n";
      ++warnings;
    }
  }
  s << "resonance_warnings = " << warnings << "\n";

  CommandOutput out;
  out.files.push_back(dir / "report.txt");
  std::ofstream file(out.files.back());
  if (!file) throw ConfigError("cannot write '" + out.files.back().string() + "'");
  file << s.str();
  out.summary = s.str();
  return out;
}

}  // namespace icecav
