#include "octrack/config.hpp"

#include <cctype>
#include <cstdlib>
#include <fstream>
#include <sstream>

namespace octrack {

namespace {

std::string strip(std::string_view s) {
  std::size_t b = 0, e = s.size();
  while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
  while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) --e;
  return std::string(s.substr(b, e - b));
}

double parse_double(const std::string& key, const std::string& value) {
  char* end = nullptr;
  const double v = std::strtod(value.c_str(), &end);
  if (value.empty() || end != value.c_str() + value.size()) {
    throw ConfigError("config key '" + key + "': bad number '" + value + "'");
  }
  return v;
}

// "a:b,c:d" -> list of (a, b) number pairs
std::vector<std::pair<double, double>> parse_pairs(const std::string& key,
                                                   const std::string& value) {
  std::vector<std::pair<double, double>> out;
  std::istringstream in(value);
  std::string item;
  while (std::getline(in, item, ',')) {
    item = strip(item);
    if (item.empty()) continue;
    const auto colon = item.find(':');
    if (colon == std::string::npos) {
      throw ConfigError("config key '" + key + "': expected a:b pairs, got '" + item + "'");
    }
    out.emplace_back(parse_double(key, strip(item.substr(0, colon))),
                     parse_double(key, strip(item.substr(colon + 1))));
  }
  return out;
}

}  // namespace

KeyValueConfig KeyValueConfig::from_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config file: " + path.string());
  std::ostringstream text;
  text << in.rdbuf();
  return from_string(text.str(), path.string());
}

KeyValueConfig KeyValueConfig::from_string(std::string_view text, std::string origin) {
  KeyValueConfig cfg;
  cfg.origin_ = std::move(origin);
  std::istringstream in{std::string(text)};
  std::string line;
  long line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    const std::string stripped = strip(line);
    if (stripped.empty()) continue;
    const auto eq = stripped.find('=');
    if (eq == std::string::npos) {
      throw ConfigError(cfg.origin_ + ":" + std::to_string(line_no) +
                        ": expected key = value");
    }
    const std::string key = strip(stripped.substr(0, eq));
    const std::string value = strip(stripped.substr(eq + 1));
    if (key.empty()) {
      throw ConfigError(cfg.origin_ + ":" + std::to_string(line_no) + ": empty key");
    }
    cfg.values_[key] = value;
  }
  return cfg;
}

double KeyValueConfig::get_double(const std::string& key, double fallback) const {
  const auto it = values_.find(key);
  if (it == values_.end()) return fallback;
  return parse_double(key, it->second);
}

long KeyValueConfig::get_long(const std::string& key, long fallback) const {
  const double v = get_double(key, static_cast<double>(fallback));
  const long l = static_cast<long>(v);
  if (static_cast<double>(l) != v) {
    throw ConfigError("config key '" + key + "': expected an integer");
  }
  return l;
}

std::uint64_t KeyValueConfig::get_u64(const std::string& key, std::uint64_t fallback) const {
  const auto it = values_.find(key);
  if (it == values_.end()) return fallback;
  char* end = nullptr;
  const unsigned long long v = std::strtoull(it->second.c_str(), &end, 10);
  if (it->second.empty() || end != it->second.c_str() + it->second.size()) {
    throw ConfigError("config key '" + key + "': bad unsigned integer '" + it->second + "'");
  }
  return v;
}

std::string KeyValueConfig::get_string(const std::string& key,
                                       const std::string& fallback) const {
  const auto it = values_.find(key);
  return it == values_.end() ? fallback : it->second;
}

FilterParams filter_params_from(const KeyValueConfig& cfg) {
  FilterParams p;
  p.f = cfg.get_double("f", p.f);
  p.h = cfg.get_double("h", p.h);
  p.q = cfg.get_double("q", p.q);
  p.r = cfg.get_double("r", p.r);
  p.p0 = cfg.get_double("p0", p.p0);
  validate(p);
  return p;
}

WindowConfig window_config_from(const KeyValueConfig& cfg) {
  WindowConfig w;
  w.window_len = static_cast<int>(cfg.get_long("window_len", w.window_len));
  w.recent_weight = cfg.get_double("recent_weight", w.recent_weight);
  w.prior_weight = cfg.get_double("prior_weight", w.prior_weight);
  w.warmup_len = static_cast<int>(cfg.get_long("warmup_len", w.warmup_len));
  validate(w);
  return w;
}

DetectorConfig detector_config_from(const KeyValueConfig& cfg) {
  DetectorConfig d;
  d.search_halfwidth = static_cast<int>(cfg.get_long("search_halfwidth", d.search_halfwidth));
  d.min_layer_separation =
      static_cast<int>(cfg.get_long("min_layer_separation", d.min_layer_separation));
  d.gradient_threshold = cfg.get_double("gradient_threshold", d.gradient_threshold);
  d.smoothing_radius = static_cast<int>(cfg.get_long("smoothing_radius", d.smoothing_radius));
  validate(d);
  return d;
}

EvalConfig eval_config_from(const KeyValueConfig& cfg) {
  EvalConfig e;
  e.um_per_px = cfg.get_double("um_per_px", e.um_per_px);
  validate(e);
  return e;
}

SyntheticScene scene_from(const KeyValueConfig& cfg, SyntheticScene base) {
  base.width_px = cfg.get_long("width_px", base.width_px);
  base.depth_px = cfg.get_long("depth_px", base.depth_px);
  base.epi_base = cfg.get_double("epi_base", base.epi_base);
  base.dm_base = cfg.get_double("dm_base", base.dm_base);
  base.motion_amplitude = cfg.get_double("motion_amplitude", base.motion_amplitude);
  base.motion_period = cfg.get_double("motion_period", base.motion_period);
  base.drift_per_column = cfg.get_double("drift_per_column", base.drift_per_column);
  base.band_sigma = cfg.get_double("band_sigma", base.band_sigma);
  base.band_intensity = cfg.get_double("band_intensity", base.band_intensity);
  base.background_noise_sigma =
      cfg.get_double("background_noise_sigma", base.background_noise_sigma);
  base.sigma_obs = cfg.get_double("sigma_obs", base.sigma_obs);
  base.seed = cfg.get_u64("seed", base.seed);
  if (cfg.has("dropout_intervals")) {
    base.dropout_intervals.clear();
    for (const auto& [a, b] : parse_pairs("dropout_intervals",
                                          cfg.get_string("dropout_intervals", ""))) {
      base.dropout_intervals.push_back(
          ColumnInterval{static_cast<Index>(a), static_cast<Index>(b)});
    }
  }
  if (cfg.has("jag_events")) {
    base.jag_events.clear();
    for (const auto& [col, amp] : parse_pairs("jag_events", cfg.get_string("jag_events", ""))) {
      base.jag_events.push_back(JagEvent{static_cast<Index>(col), amp});
    }
  }
  validate(base);
  return base;
}

}  // namespace octrack
