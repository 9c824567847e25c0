#include "octrack/observers.hpp"

#include "octrack/rng.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cmath>
#include <random>
#include <sstream>
#include <stdexcept>
#include <vector>

namespace octrack {

namespace {

// Box average with the window truncated at the column ends.
ArrayXd box_smooth(const Eigen::Ref<const ArrayXf>& column, int radius) {
  const Index n = column.size();
  ArrayXd out(n);
  if (radius <= 0) {
    out = column.cast<double>();
    return out;
  }
  for (Index i = 0; i < n; ++i) {
    const Index lo = std::max<Index>(0, i - radius);
    const Index hi = std::min<Index>(n - 1, i + radius);
    double sum = 0.0;
    for (Index j = lo; j <= hi; ++j) sum += static_cast<double>(column[j]);
    out[i] = sum / static_cast<double>(hi - lo + 1);
  }
  return out;
}

// Vertex of the parabola through (-1,y0),(0,y1),(1,y2), clamped to half a
// pixel. Degenerate (flat or non-concave) neighborhoods keep the integer
// location.
double parabolic_offset(double y0, double y1, double y2) {
  const double denom = y0 - 2.0 * y1 + y2;
  if (!(denom < 0.0)) return 0.0;
  const double offset = 0.5 * (y0 - y2) / denom;
  return std::clamp(offset, -0.5, 0.5);
}

struct PeakResult {
  double position = 0.0;
  double max_rising_gradient = 0.0;
  bool found = false;
};

// Strongest intensity peak in [lo, hi], ties broken toward the shallower
// row, refined with a 3-point parabola. Also reports the strongest rising
// gradient inside the window for the dropout gate.
PeakResult find_peak(const ArrayXd& smooth, Index lo, Index hi) {
  PeakResult res;
  if (lo > hi) return res;
  Index best = lo;
  for (Index i = lo + 1; i <= hi; ++i) {
    if (smooth[i] > smooth[best]) best = i;
  }
  double max_grad = 0.0;
  for (Index i = std::max<Index>(lo, 1); i <= hi; ++i) {
    max_grad = std::max(max_grad, smooth[i] - smooth[i - 1]);
  }
  res.found = true;
  res.max_rising_gradient = max_grad;
  res.position = static_cast<double>(best);
  if (best > 0 && best + 1 < smooth.size()) {
    res.position += parabolic_offset(smooth[best - 1], smooth[best], smooth[best + 1]);
  }
  return res;
}

Index clamp_row(double v, Index n) {
  return std::clamp<Index>(static_cast<Index>(std::llround(v)), 0, n - 1);
}

void trim(std::string& s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.pop_back();
  std::size_t i = 0;
  while (i < s.size() && std::isspace(static_cast<unsigned char>(s[i]))) ++i;
  s.erase(0, i);
}

std::vector<std::string> split_csv(const std::string& line) {
  std::vector<std::string> fields;
  std::string field;
  std::istringstream in(line);
  while (std::getline(in, field, ',')) {
    trim(field);
    fields.push_back(field);
  }
  if (!line.empty() && line.back() == ',') fields.emplace_back();
  return fields;
}

}  // namespace

void validate(const DetectorConfig& cfg) {
  if (cfg.search_halfwidth < 1) throw std::invalid_argument("search_halfwidth must be >= 1");
  if (cfg.min_layer_separation < 1) {
    throw std::invalid_argument("min_layer_separation must be >= 1");
  }
  if (cfg.gradient_threshold < 0.0) {
    throw std::invalid_argument("gradient_threshold must be non-negative");
  }
  if (cfg.smoothing_radius < 0) throw std::invalid_argument("smoothing_radius must be >= 0");
}

ObservationPair detect_boundaries(const AScanColumn& column,
                                  const std::optional<BoundaryPair>& previous,
                                  const DetectorConfig& cfg) {
  validate(cfg);
  const Index n = column.intensities.size();
  if (n < 2 * static_cast<Index>(cfg.min_layer_separation)) {
    throw std::invalid_argument("column too short for two separated layers");
  }

  const ArrayXd smooth = box_smooth(column.intensities, cfg.smoothing_radius);
  const Index hw = cfg.search_halfwidth;
  const Index sep = cfg.min_layer_separation;

  Index epi_lo = 0, epi_hi = n / 2 - 1;
  if (previous) {
    const Index anchor = clamp_row(previous->epi, n);
    epi_lo = std::max<Index>(0, anchor - hw);
    epi_hi = std::min<Index>(n - 1, anchor + hw);
  }
  const PeakResult epi_peak = find_peak(smooth, epi_lo, epi_hi);
  const bool epi_valid =
      epi_peak.found && (cfg.gradient_threshold <= 0.0 ||
                         epi_peak.max_rising_gradient > cfg.gradient_threshold);

  Index dm_lo, dm_hi;
  if (previous) {
    const Index anchor = clamp_row(previous->dm, n);
    dm_lo = std::max<Index>(0, anchor - hw);
    dm_hi = std::min<Index>(n - 1, anchor + hw);
  } else if (epi_valid) {
    dm_lo = clamp_row(epi_peak.position + static_cast<double>(sep), n);
    dm_hi = n - 1;
  } else {
    dm_lo = n / 2;
    dm_hi = n - 1;
  }
  if (epi_valid) {
    // The DM always sits below the epithelium.
    dm_lo = std::max(dm_lo, clamp_row(epi_peak.position + static_cast<double>(sep), n));
  }
  const PeakResult dm_peak = find_peak(smooth, dm_lo, dm_hi);
  const bool dm_valid =
      dm_peak.found && (cfg.gradient_threshold <= 0.0 ||
                        dm_peak.max_rising_gradient > cfg.gradient_threshold);

  BoundaryObservation epi = epi_valid
                                ? valid_obs(LayerId::Epithelium, column.index, epi_peak.position)
                                : dropout_obs(LayerId::Epithelium, column.index);
  BoundaryObservation dm = dm_valid ? valid_obs(LayerId::DM, column.index, dm_peak.position)
                                    : dropout_obs(LayerId::DM, column.index);
  return {epi, dm};
}

ObservationReader::ObservationReader(const std::filesystem::path& path)
    : in_(path), path_(path.string()) {
  if (!in_) throw std::runtime_error("cannot open observation file: " + path_);
  std::string header;
  if (!std::getline(in_, header)) {
    throw std::runtime_error(path_ + ": empty observation file");
  }
  trim(header);
  if (header != "layer,column,depth_px,status") {
    throw std::runtime_error(path_ + ": bad observation header: " + header);
  }
}

BoundaryObservation ObservationReader::parse_row(const std::string& line) {
  const auto fields = split_csv(line);
  const std::string where = path_ + ":" + std::to_string(line_no_);
  if (fields.size() != 4) {
    throw std::runtime_error(where + ": expected 4 fields, got " +
                             std::to_string(fields.size()));
  }
  BoundaryObservation obs;
  try {
    obs.layer = layer_from_name(fields[0]);
    obs.status = status_from_name(fields[3]);
  } catch (const std::invalid_argument& e) {
    throw std::runtime_error(where + ": " + e.what());
  }
  long long col = 0;
  auto [p, ec] = std::from_chars(fields[1].data(), fields[1].data() + fields[1].size(), col);
  if (ec != std::errc{} || p != fields[1].data() + fields[1].size() || col < 0) {
    throw std::runtime_error(where + ": bad column index: " + fields[1]);
  }
  obs.column = static_cast<Index>(col);
  char* end = nullptr;
  obs.depth_px = std::strtod(fields[2].c_str(), &end);
  if (end != fields[2].c_str() + fields[2].size() || fields[2].empty()) {
    throw std::runtime_error(where + ": bad depth value: " + fields[2]);
  }
  if (obs.status == ObsStatus::Valid && !std::isfinite(obs.depth_px)) {
    throw std::runtime_error(where + ": non-finite depth for valid observation");
  }
  return obs;
}

std::optional<ObservationPair> ObservationReader::next() {
  std::string line;
  std::optional<BoundaryObservation> epi, dm;
  while (!(epi && dm)) {
    if (!std::getline(in_, line)) {
      if (!epi && !dm) return std::nullopt;
      throw std::runtime_error(path_ + ": column " + std::to_string(next_column_) +
                               " is missing a layer at end of file");
    }
    ++line_no_;
    trim(line);
    if (line.empty()) continue;
    const BoundaryObservation obs = parse_row(line);
    if (obs.column != next_column_) {
      throw std::runtime_error(path_ + ":" + std::to_string(line_no_) +
                               ": out-of-order column " + std::to_string(obs.column) +
                               ", expected " + std::to_string(next_column_));
    }
    auto& slot = obs.layer == LayerId::Epithelium ? epi : dm;
    if (slot) {
      throw std::runtime_error(path_ + ":" + std::to_string(line_no_) +
                               ": duplicate " + layer_name(obs.layer) + " row for column " +
                               std::to_string(obs.column));
    }
    slot = obs;
  }
  ++next_column_;
  return ObservationPair{*epi, *dm};
}

ObservationPair noisy_oracle(const SyntheticScene& scene, Index column,
                             std::uint64_t seed) {
  if (column < 0 || column >= scene.width_px) {
    throw std::out_of_range("noisy_oracle column index out of range");
  }
  if (in_dropout(scene, column)) {
    return {dropout_obs(LayerId::Epithelium, column), dropout_obs(LayerId::DM, column)};
  }
  const BoundaryPair truth = ground_truth(scene, column);
  auto rng = make_rng(seed, RngStream::ObsNoise, static_cast<std::uint64_t>(column));
  double epi = truth.epi;
  double dm = truth.dm;
  if (scene.sigma_obs > 0.0) {
    std::normal_distribution<double> noise(0.0, scene.sigma_obs);
    epi += noise(rng);
    dm += noise(rng);
  }
  for (const auto& jag : scene.jag_events) {
    if (jag.column == column && jag.amplitude > 0.0) {
      std::uniform_real_distribution<double> offset(-jag.amplitude, jag.amplitude);
      epi += offset(rng);
      dm += offset(rng);
      break;
    }
  }
  return {valid_obs(LayerId::Epithelium, column, epi), valid_obs(LayerId::DM, column, dm)};
}

}  // namespace octrack
