#pragma once

#include "octrack/eval.hpp"
#include "octrack/kalman.hpp"
#include "octrack/observers.hpp"
#include "octrack/synth.hpp"
#include "octrack/window.hpp"

#include <cstdint>
#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <string_view>

namespace octrack {

struct ConfigError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Flat `key = value` file, `#` starts a comment. One file carries filter,
/// window, detector, eval and scene settings together.
class KeyValueConfig {
 public:
  KeyValueConfig() = default;

  static KeyValueConfig from_file(const std::filesystem::path& path);
  static KeyValueConfig from_string(std::string_view text, std::string origin = "<string>");

  bool has(const std::string& key) const { return values_.count(key) != 0; }

  double get_double(const std::string& key, double fallback) const;
  long get_long(const std::string& key, long fallback) const;
  std::uint64_t get_u64(const std::string& key, std::uint64_t fallback) const;
  std::string get_string(const std::string& key, const std::string& fallback) const;

  void set(const std::string& key, const std::string& value) { values_[key] = value; }

 private:
  std::map<std::string, std::string> values_;
  std::string origin_;
};

FilterParams filter_params_from(const KeyValueConfig& cfg);
WindowConfig window_config_from(const KeyValueConfig& cfg);
DetectorConfig detector_config_from(const KeyValueConfig& cfg);
EvalConfig eval_config_from(const KeyValueConfig& cfg);

/// Scene keys override fields of `base` (usually a preset). Intervals use
/// `dropout_intervals = 120:140,260:280`; jag events use
/// `jag_events = 150:25,330:40` (column:amplitude).
SyntheticScene scene_from(const KeyValueConfig& cfg, SyntheticScene base);

}  // namespace octrack
