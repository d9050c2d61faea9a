// SPDX-License-Identifier: Apache-2.0
//
// Run configuration: presets, a flat `dotted.key = value` text format, and the number
// formatting shared by every emitted file.
#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "icecav/geometry.hpp"

namespace icecav {

inline constexpr std::string_view kVersion = "0.1.0";

struct RunConfig {
  std::optional<std::string> preset;
  CavityGeometry geometry;
  MaterialParams materials;
  Stimulus stimulus;
  Truncation truncation;
  double time_window = 5.0e-3;  // s
  int time_samples = 401;
  std::string output_dir = ".";

  /// Throws ConfigError naming the first violated constraint.
  void validate() const;
  bool operator==(const RunConfig&) const = default;
};

/// Fully populated configuration for a named preset; ConfigError for unknown names.
RunConfig config_from_preset(const std::string& name);

/// Parses the text format. Lines are `key = value`; `#` starts a comment. A `preset` key is
/// applied first and every other key overrides it. Unknown keys are errors when `strict`,
/// otherwise they are reported through `warnings`. The result is validated.
RunConfig parse_config(std::string_view text, bool strict = true,
                       std::vector<std::string>* warnings = nullptr);
RunConfig load_config(const std::filesystem::path& path, bool strict = true,
                      std::vector<std::string>* warnings = nullptr);

/// Text that parse_config maps back to exactly `config`.
std::string emit_config(const RunConfig& config);

/// 17 significant digits, shortest exponent form; zero of either sign prints as "0".
std::string format_double(double value);

/// FNV-1a 64 over emit_config(config) with the output directory reset to ".".
std::uint64_t config_hash(const RunConfig& config);

/// "# icecav <version> config-hash=<16 hex digits>".
std::string provenance_line(const RunConfig& config);

}  // namespace icecav
