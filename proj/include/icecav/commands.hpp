// SPDX-License-Identifier: Apache-2.0
//
// The analyses behind the command-line verbs. Each writes its CSV files into the configured
// output directory and returns the paths together with a short text summary.
#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

#include "icecav/config.hpp"

namespace icecav {

struct CommandOutput {
  std::vector<std::filesystem::path> files;
  std::string summary;
};

enum class SimulationMethod { closed_form, picard };

/// cavity_modes.csv and membrane_modes.csv for the configured truncation.
CommandOutput cmd_modes(const RunConfig& config);

/// pressure.csv and membrane.csv: first-order modal amplitudes on the configured time grid,
/// from the closed forms or from the Picard iteration.
CommandOutput cmd_simulate(const RunConfig& config, SimulationMethod method);

/// coupling_n3_<n3>.csv (long format) and coupling_matrix_n3_<n3>.csv (rank grid) for
/// n3 = n3_min..n3_max.
CommandOutput cmd_coupling(const RunConfig& config, int n3_min = 1, int n3_max = 4);

/// transient_k<k1>_<k2>.csv: harmonic, transient and total traces of one membrane mode.
CommandOutput cmd_transient(const RunConfig& config, int k1 = 1, int k2 = 1);

/// Runs `cases` random 1-D problems seeded from `seed` through both solvers and writes
/// oracle1d.csv into `out_dir`. The summary lists one line per case.
struct OracleReport {
  CommandOutput output;
  bool passed = false;
};
OracleReport cmd_oracle1d(std::uint64_t seed, int cases, const std::filesystem::path& out_dir,
                          double tolerance = 1e-6);

/// report.txt: relaxation time, settling time of the fundamental membrane mode, coupling
/// dominance per n3 and modes close to resonance with the stimulus.
CommandOutput cmd_report(const RunConfig& config);

}  // namespace icecav
