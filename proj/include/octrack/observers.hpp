#pragma once

#include "octrack/synth.hpp"
#include "octrack/types.hpp"

#include <cstdint>
#include <filesystem>
#include <fstream>
#include <optional>
#include <string>

namespace octrack {

/// Classical per-column boundary detector standing in for a learned
/// segmenter. Searches for each layer's bright band near the previous
/// estimate and refines the peak to sub-pixel accuracy.
struct DetectorConfig {
  int search_halfwidth = 40;       // px around the previous estimate
  int min_layer_separation = 30;   // px enforced between epithelium and DM
  double gradient_threshold = 0.0; // 0 disables the dropout gate
  int smoothing_radius = 2;        // axial box pre-smoothing radius
};

void validate(const DetectorConfig& cfg);

/// Detects the epithelium and DM in one A-scan. `previous` anchors the
/// per-layer search windows; without it the epithelium is searched in the
/// top half of the column and the DM below the detected epithelium.
/// With a positive gradient_threshold, a window whose strongest rising
/// edge is at or below the threshold yields a Dropout observation.
ObservationPair detect_boundaries(const AScanColumn& column,
                                  const std::optional<BoundaryPair>& previous,
                                  const DetectorConfig& cfg);

/// Sequential reader over the observation CSV format
/// (`layer,column,depth_px,status`). Columns must be consecutive from 0
/// and each column must carry both layers.
class ObservationReader {
 public:
  explicit ObservationReader(const std::filesystem::path& path);

  /// Next column's (epithelium, dm) pair, or nothing at end of file.
  std::optional<ObservationPair> next();

 private:
  BoundaryObservation parse_row(const std::string& line);

  std::ifstream in_;
  std::string path_;
  Index next_column_ = 0;
  long line_no_ = 1;  // header already consumed
};

/// Ground truth plus Gaussian observation noise and the scene's scheduled
/// artifacts. Pure function of (scene, column, seed): dropout intervals
/// yield Dropout pairs, jag events add a uniform offset per layer.
ObservationPair noisy_oracle(const SyntheticScene& scene, Index column,
                             std::uint64_t seed);

}  // namespace octrack
