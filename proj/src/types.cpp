#include "octrack/types.hpp"

#include <cmath>
#include <sstream>

namespace octrack {

const char* layer_name(LayerId layer) {
  return layer == LayerId::Epithelium ? "epithelium" : "dm";
}

LayerId layer_from_name(std::string_view name) {
  if (name == "epithelium") return LayerId::Epithelium;
  if (name == "dm") return LayerId::DM;
  throw std::invalid_argument("unknown layer name: " + std::string(name));
}

const char* status_name(ObsStatus status) {
  return status == ObsStatus::Valid ? "valid" : "dropout";
}

ObsStatus status_from_name(std::string_view name) {
  if (name == "valid") return ObsStatus::Valid;
  if (name == "dropout") return ObsStatus::Dropout;
  throw std::invalid_argument("unknown observation status: " + std::string(name));
}

BoundaryObservation valid_obs(LayerId layer, Index column, double depth_px) {
  if (!std::isfinite(depth_px)) {
    throw std::invalid_argument("valid observation requires a finite depth");
  }
  return BoundaryObservation{layer, column, depth_px, ObsStatus::Valid};
}

BoundaryObservation dropout_obs(LayerId layer, Index column) {
  return BoundaryObservation{layer, column, 0.0, ObsStatus::Dropout};
}

bool same_observation(const BoundaryObservation& a, const BoundaryObservation& b) {
  if (a.layer != b.layer || a.column != b.column || a.status != b.status) return false;
  // Depth carries no information for dropouts.
  return a.status == ObsStatus::Dropout || a.depth_px == b.depth_px;
}

AScanColumn column_view(const MScanFrame& frame, Index k) {
  if (k < 0 || k >= frame.width()) {
    throw std::out_of_range("column index out of range");
  }
  return AScanColumn{k, frame.data.col(k)};
}

MScanFrame frame_from_columns(const std::vector<ArrayXf>& columns) {
  if (columns.empty()) throw FrameError("frame needs at least one column");
  const Index depth = columns.front().size();
  MScanFrame frame;
  frame.data.resize(depth, static_cast<Index>(columns.size()));
  for (std::size_t k = 0; k < columns.size(); ++k) {
    if (columns[k].size() != depth) {
      std::ostringstream msg;
      msg << "dimension mismatch at column " << k << ": expected " << depth
          << " samples, got " << columns[k].size();
      throw FrameError(msg.str());
    }
    frame.data.col(static_cast<Index>(k)) = columns[k];
  }
  return validate_frame(frame), frame;
}

const MScanFrame& validate_frame(const MScanFrame& frame) {
  if (frame.width() <= 0 || frame.depth() <= 0) {
    throw FrameError("frame must have positive width and depth");
  }
  for (Index k = 0; k < frame.width(); ++k) {
    for (Index row = 0; row < frame.depth(); ++row) {
      const float v = frame.data(row, k);
      if (!std::isfinite(v)) {
        std::ostringstream msg;
        msg << "non-finite sample at column " << k << ", row " << row;
        throw FrameError(msg.str());
      }
      if (v < 0.0f) {
        std::ostringstream msg;
        msg << "negative sample at column " << k << ", row " << row;
        throw FrameError(msg.str());
      }
    }
  }
  return frame;
}

ArrayXd raw_estimates(const BoundaryTrace& trace) {
  ArrayXd out(static_cast<Index>(trace.raw.size()));
  double held = 0.0;
  for (std::size_t i = 0; i < trace.raw.size(); ++i) {
    if (trace.raw[i].status == ObsStatus::Valid) held = trace.raw[i].depth_px;
    out[static_cast<Index>(i)] = held;
  }
  return out;
}

ArrayXd filtered_estimates(const BoundaryTrace& trace) {
  return Eigen::Map<const ArrayXd>(trace.filtered.data(),
                                   static_cast<Index>(trace.filtered.size()));
}

}  // namespace octrack
