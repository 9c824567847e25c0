#pragma once

#include "octrack/io.hpp"
#include "octrack/kalman.hpp"
#include "octrack/observers.hpp"
#include "octrack/synth.hpp"
#include "octrack/types.hpp"
#include "octrack/window.hpp"

#include <cstdint>
#include <filesystem>
#include <span>
#include <string_view>
#include <vector>

namespace octrack {

enum class Pipeline { Raw, Kdh };

const char* pipeline_name(Pipeline p);
Pipeline pipeline_from_name(std::string_view name);

struct TrackingConfig {
  FilterParams filter;
  WindowConfig window;
};

/// Single-layer causal tracker. Raw passes observations through (holding
/// the last valid depth across dropouts); Kdh runs the windowed Kalman
/// pipeline. Estimates before the first valid observation are 0.
class LayerTracker {
 public:
  LayerTracker(LayerId layer, Pipeline pipeline, const TrackingConfig& cfg);

  /// Consumes the next column's observation and returns its estimate.
  double observe(const BoundaryObservation& obs);

  double applied_gain() const { return applied_gain_; }
  const BoundaryTrace& trace() const { return trace_; }
  BoundaryTrace take_trace() { return std::move(trace_); }

 private:
  Pipeline pipeline_;
  TrackingConfig cfg_;
  KalmanState kalman_;
  WindowState window_;
  BoundaryTrace trace_;
  bool initialized_ = false;
  double last_raw_ = 0.0;
  double applied_gain_ = 0.0;
  Index next_column_ = 0;
};

struct TrackResult {
  BoundaryTrace epi;
  BoundaryTrace dm;
};

TrackResult track_observations(std::span<const ObservationPair> observations,
                               Pipeline pipeline, const TrackingConfig& cfg);

std::vector<TraceRow> trace_rows(const TrackResult& result, LayerId layer);

// Observation sources. All are causal and column-ordered.
std::vector<ObservationPair> observations_from_frame(const MScanFrame& frame,
                                                     const DetectorConfig& cfg);
std::vector<ObservationPair> observations_from_scene(const SyntheticScene& scene,
                                                     std::uint64_t seed);
std::vector<ObservationPair> observations_from_csv(const std::filesystem::path& path);

struct BenchReport {
  Pipeline pipeline = Pipeline::Kdh;
  std::uint64_t columns = 0;     // per repetition
  int repetitions = 1;
  double total_seconds = 0.0;    // tracking loop only
  double columns_per_second = 0.0;
  double p50_latency_us = 0.0;   // per-column, both layers
  double p99_latency_us = 0.0;
};

/// Times the tracking loop over pre-parsed observations; file parsing and
/// observation generation are excluded by construction.
BenchReport bench_tracking(std::span<const ObservationPair> observations,
                           Pipeline pipeline, const TrackingConfig& cfg,
                           int repetitions);

}  // namespace octrack
