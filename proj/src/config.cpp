// SPDX-License-Identifier: Apache-2.0
#include "icecav/config.hpp"

#include <array>
#include <charconv>
#include <cmath>
#include <fstream>
#include <map>
#include <numbers>
#include <sstream>

#include "icecav/errors.hpp"

namespace icecav {
namespace {

std::string_view trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  return s.substr(first, last - first + 1);
}

struct Entry {
  std::string value;
  int line;
};

double parse_double(const std::string& key, const Entry& e) {
  double v = 0.0;
  const char* begin = e.value.data();
  const char* end = begin + e.value.size();
  const auto [ptr, ec] = std::from_chars(begin, end, v);
  if (ec != std::errc() || ptr != end || !std::isfinite(v)) {
    throw ConfigError("line " + std::to_string(e.line) + ": key '" + key +
                      "' expects a finite number, got '" + e.value + "'");
  }
  return v;
}

int parse_int(const std::string& key, const Entry& e) {
  int v = 0;
  const char* begin = e.value.data();
  const char* end = begin + e.value.size();
  const auto [ptr, ec] = std::from_chars(begin, end, v);
  if (ec != std::errc() || ptr != end) {
    throw ConfigError("line " + std::to_string(e.line) + ": key '" + key +
                      "' expects an integer, got '" + e.value + "'");
  }
  return v;
}

// Every numeric field, addressed by its key.
template <typename Config>
auto double_fields(Config& c) {
  return std::array{
      std::pair{"geometry.L", &c.geometry.length},
      std::pair{"geometry.a_cyl", &c.geometry.a_cyl},
      std::pair{"geometry.a_tymp", &c.geometry.a_tymp},
      std::pair{"geometry.beta", &c.geometry.beta},
      std::pair{"materials.c", &c.materials.c},
      std::pair{"materials.c_m", &c.materials.c_m},
      std::pair{"materials.rho0", &c.materials.rho0},
      std::pair{"materials.rho_m", &c.materials.rho_m},
      std::pair{"materials.d", &c.materials.thickness},
      std::pair{"materials.alpha", &c.materials.alpha},
      std::pair{"stimulus.p0", &c.stimulus.p0},
      std::pair{"stimulus.omega", &c.stimulus.omega},
      std::pair{"stimulus.k_axial", &c.stimulus.k_axial},
      std::pair{"time.window", &c.time_window},
  };
}

template <typename Config>
auto int_fields(Config& c) {
  return std::array{
      std::pair{"truncation.n1_max", &c.truncation.n1_max},
      std::pair{"truncation.n2_max", &c.truncation.n2_max},
      std::pair{"truncation.n3_max", &c.truncation.n3_max},
      std::pair{"truncation.k1_max", &c.truncation.k1_max},
      std::pair{"truncation.k2_max", &c.truncation.k2_max},
      std::pair{"time.samples", &c.time_samples},
  };
}

}  // namespace

void RunConfig::validate() const {
  geometry.validate();
  materials.validate();
  stimulus.validate();
  truncation.validate();
  if (!(time_window > 0.0)) throw ConfigError("time.window must be positive");
  if (time_samples < 4) throw ConfigError("time.samples must be at least 4");
  if (output_dir.empty()) throw ConfigError("output.dir must not be empty");
}

RunConfig config_from_preset(const std::string& name) {
  const auto preset = find_preset(name);
  if (!preset) {
    std::string known;
    for (const auto& n : preset_names()) known += (known.empty() ? "" : ", ") + n;
    throw ConfigError("unknown preset '" + name + "' (known: " + known + ")");
  }
  RunConfig c;
  c.preset = name;
  c.geometry = preset->geometry;
  c.materials = preset->materials;
  c.stimulus = preset->stimulus;
  // Windows of the relaxation plots: 5 ms for the gecko, 25 ms for the monitor lizard.
  c.time_window = name == "varanus" ? 25.0e-3 : 5.0e-3;
  return c;
}

RunConfig parse_config(std::string_view text, bool strict, std::vector<std::string>* warnings) {
  std::map<std::string, Entry> entries;
  int line_no = 0;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    const auto next = text.find('\n', pos);
    std::string_view line = text.substr(pos, next == std::string_view::npos ? text.npos : next - pos);
    pos = next == std::string_view::npos ? text.size() + 1 : next + 1;
    ++line_no;
    if (const auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string_view::npos) {
      throw ConfigError("line " + std::to_string(line_no) + ": expected 'key = value'");
    }
    const std::string key(trim(line.substr(0, eq)));
    const std::string value(trim(line.substr(eq + 1)));
    if (key.empty() || value.empty()) {
      throw ConfigError("line " + std::to_string(line_no) + ": empty key or value");
    }
    if (!entries.emplace(key, Entry{value, line_no}).second) {
      throw ConfigError("line " + std::to_string(line_no) + ": duplicate key '" + key + "'");
    }
  }

  RunConfig c;
  if (const auto it = entries.find("preset"); it != entries.end()) {
    c = config_from_preset(it->second.value);
    entries.erase(it);
  } else {
    c.stimulus.p0 = 1.0;
  }

  bool omega_given = false;
  bool k_given = false;
  std::optional<double> frequency_hz;
  std::optional<double> fundamental_hz;
  for (auto& [key, entry] : entries) {
    bool known = false;
    for (auto [name, field] : double_fields(c)) {
      if (key == name) {
        *field = parse_double(key, entry);
        known = true;
      }
    }
    for (auto [name, field] : int_fields(c)) {
      if (key == name) {
        *field = parse_int(key, entry);
        known = true;
      }
    }
    if (key == "stimulus.frequency_hz") {
      frequency_hz = parse_double(key, entry);
      known = true;
    } else if (key == "materials.fundamental_hz") {
      fundamental_hz = parse_double(key, entry);
      known = true;
    } else if (key == "output.dir") {
      c.output_dir = entry.value;
      known = true;
    }
    omega_given = omega_given || key == "stimulus.omega";
    k_given = k_given || key == "stimulus.k_axial";
    if (!known) {
      const std::string msg = "line " + std::to_string(entry.line) + ": unknown key '" + key + "'";
      if (strict) throw ConfigError(msg);
      if (warnings) warnings->push_back(msg);
    }
  }

  if (frequency_hz) {
    if (omega_given) throw ConfigError("give either stimulus.omega or stimulus.frequency_hz");
    c.stimulus.omega = 2.0 * std::numbers::pi * *frequency_hz;
    omega_given = true;
  }
  if (omega_given && !k_given && c.materials.c > 0.0) {
    c.stimulus.k_axial = c.stimulus.omega / c.materials.c;
  }
  if (fundamental_hz) {
    if (entries.count("materials.c_m")) {
      throw ConfigError("give either materials.c_m or materials.fundamental_hz");
    }
    c.geometry.validate();
    c.materials.c_m = membrane_speed_for(c.geometry, *fundamental_hz);
  }
  c.validate();
  return c;
}

RunConfig load_config(const std::filesystem::path& path, bool strict,
                      std::vector<std::string>* warnings) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config file '" + path.string() + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_config(buf.str(), strict, warnings);
}

std::string emit_config(const RunConfig& config) {
  std::ostringstream os;
  os << "# icecav run configuration\n";
  if (config.preset) os << "preset = " << *config.preset << "\n";
  RunConfig copy = config;
  for (auto [name, field] : double_fields(copy)) os << name << " = " << format_double(*field) << "\n";
  for (auto [name, field] : int_fields(copy)) os << name << " = " << *field << "\n";
  os << "output.dir = " << config.output_dir << "\n";
  return os.str();
}

std::string format_double(double value) {
  if (value == 0.0) return "0";
  std::array<char, 64> buf{};
  const auto res =
      std::to_chars(buf.data(), buf.data() + buf.size(), value, std::chars_format::general, 17);
  return std::string(buf.data(), res.ptr);
}

std::uint64_t config_hash(const RunConfig& config) {
  // The output location does not change any emitted number, so it stays out of the hash.
  RunConfig physics = config;
  physics.output_dir = ".";
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (const unsigned char ch : emit_config(physics)) {
    h ^= ch;
    h *= 0x100000001b3ULL;
  }
  return h;
}

std::string provenance_line(const RunConfig& config) {
  std::array<char, 17> hex{};
  std::to_chars(hex.data(), hex.data() + 16, config_hash(config), 16);
  std::string digits(hex.data());
  digits.insert(0, 16 - digits.size(), '0');
  return "# icecav " + std::string(kVersion) + " config-hash=" + digits;
}

}  // namespace icecav
