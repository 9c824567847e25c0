#pragma once

#include <Eigen/Dense>

#include <cstdint>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace octrack {

using Eigen::Index;
using Eigen::ArrayXd;
using Eigen::ArrayXf;
using Eigen::ArrayXXf;

/// Tracked corneal layers. Row 0 is the top of the image, so the
/// epithelium sits at a smaller depth than the DM in every valid scene.
enum class LayerId { Epithelium, DM };

const char* layer_name(LayerId layer);
LayerId layer_from_name(std::string_view name);

enum class ObsStatus { Valid, Dropout };

const char* status_name(ObsStatus status);
ObsStatus status_from_name(std::string_view name);

/// One per-column depth measurement for one layer. depth_px is only
/// meaningful when status == Valid.
struct BoundaryObservation {
  LayerId layer = LayerId::Epithelium;
  Index column = 0;
  double depth_px = 0.0;
  ObsStatus status = ObsStatus::Valid;
};

BoundaryObservation valid_obs(LayerId layer, Index column, double depth_px);
BoundaryObservation dropout_obs(LayerId layer, Index column);

bool same_observation(const BoundaryObservation& a, const BoundaryObservation& b);

/// (epithelium, dm) depth pair for one column.
struct BoundaryPair {
  double epi = 0.0;
  double dm = 0.0;
};

using ObservationPair = std::pair<BoundaryObservation, BoundaryObservation>;

struct FrameError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// An M-scan segment: depth rows x time columns of non-negative
/// intensities. Column k is the A-scan sampled at time index k.
struct MScanFrame {
  ArrayXXf data;

  Index depth() const { return data.rows(); }
  Index width() const { return data.cols(); }
};

/// A single A-scan, viewed without copying out of a frame.
struct AScanColumn {
  Index index = 0;
  Eigen::Ref<const ArrayXf> intensities;
};

AScanColumn column_view(const MScanFrame& frame, Index k);

/// Builds a frame from per-column samples; every column must have the
/// same length. Throws FrameError naming the first offending column.
MScanFrame frame_from_columns(const std::vector<ArrayXf>& columns);

/// Checks the frame invariants (consistent dimensions, finite
/// non-negative samples) and returns the frame unchanged.
const MScanFrame& validate_frame(const MScanFrame& frame);

/// Per-layer result of one tracking run. raw, filtered and gain are
/// aligned by column.
struct BoundaryTrace {
  LayerId layer = LayerId::Epithelium;
  std::vector<BoundaryObservation> raw;
  std::vector<double> filtered;
  std::vector<double> gain;
};

/// Raw observation sequence with dropout gaps filled by holding the last
/// valid depth (0.0 before the first valid observation).
ArrayXd raw_estimates(const BoundaryTrace& trace);

ArrayXd filtered_estimates(const BoundaryTrace& trace);

}  // namespace octrack
