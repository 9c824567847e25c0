#include "octrack/pipeline.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <stdexcept>

namespace octrack {

const char* pipeline_name(Pipeline p) { return p == Pipeline::Raw ? "raw" : "kdh"; }

Pipeline pipeline_from_name(std::string_view name) {
  if (name == "raw") return Pipeline::Raw;
  if (name == "kdh") return Pipeline::Kdh;
  throw std::invalid_argument("unknown pipeline: " + std::string(name));
}

LayerTracker::LayerTracker(LayerId layer, Pipeline pipeline, const TrackingConfig& cfg)
    : pipeline_(pipeline), cfg_(cfg) {
  validate(cfg.filter);
  validate(cfg.window);
  trace_.layer = layer;
}

double LayerTracker::observe(const BoundaryObservation& obs) {
  if (obs.layer != trace_.layer) throw std::invalid_argument("observation layer mismatch");
  if (obs.column != next_column_) {
    throw std::invalid_argument("observation columns must be consecutive: got " +
                                std::to_string(obs.column) + ", expected " +
                                std::to_string(next_column_));
  }
  ++next_column_;
  applied_gain_ = 0.0;

  double estimate;
  if (pipeline_ == Pipeline::Raw) {
    if (obs.status == ObsStatus::Valid) last_raw_ = obs.depth_px;
    estimate = last_raw_;
  } else if (!initialized_) {
    if (obs.status == ObsStatus::Valid) {
      kalman_ = init_state(obs.depth_px, cfg_.filter);
      push(window_, obs.depth_px, cfg_.window);
      initialized_ = true;
    }
    estimate = kalman_.x_hat;  // 0 until the first valid observation
  } else {
    estimate = kdh_step(kalman_, window_, obs, cfg_.filter, cfg_.window);
    if (obs.status == ObsStatus::Valid) applied_gain_ = kalman_.last_gain;
  }

  trace_.raw.push_back(obs);
  trace_.filtered.push_back(estimate);
  trace_.gain.push_back(applied_gain_);
  return estimate;
}

TrackResult track_observations(std::span<const ObservationPair> observations,
                               Pipeline pipeline, const TrackingConfig& cfg) {
  LayerTracker epi(LayerId::Epithelium, pipeline, cfg);
  LayerTracker dm(LayerId::DM, pipeline, cfg);
  for (const auto& [epi_obs, dm_obs] : observations) {
    epi.observe(epi_obs);
    dm.observe(dm_obs);
  }
  return TrackResult{epi.take_trace(), dm.take_trace()};
}

std::vector<TraceRow> trace_rows(const TrackResult& result, LayerId layer) {
  return trace_rows(layer == LayerId::Epithelium ? result.epi : result.dm);
}

std::vector<ObservationPair> observations_from_frame(const MScanFrame& frame,
                                                     const DetectorConfig& cfg) {
  validate_frame(frame);
  std::vector<ObservationPair> out;
  out.reserve(static_cast<std::size_t>(frame.width()));
  std::optional<BoundaryPair> previous;
  for (Index k = 0; k < frame.width(); ++k) {
    const ObservationPair pair = detect_boundaries(column_view(frame, k), previous, cfg);
    // Valid detections become the next column's search anchors.
    BoundaryPair anchor = previous.value_or(BoundaryPair{});
    bool have_epi = previous.has_value();
    bool have_dm = previous.has_value();
    if (pair.first.status == ObsStatus::Valid) {
      anchor.epi = pair.first.depth_px;
      have_epi = true;
    }
    if (pair.second.status == ObsStatus::Valid) {
      anchor.dm = pair.second.depth_px;
      have_dm = true;
    }
    if (have_epi && have_dm) previous = anchor;
    out.push_back(pair);
  }
  return out;
}

std::vector<ObservationPair> observations_from_scene(const SyntheticScene& scene,
                                                     std::uint64_t seed) {
  validate(scene);
  std::vector<ObservationPair> out;
  out.reserve(static_cast<std::size_t>(scene.width_px));
  for (Index k = 0; k < scene.width_px; ++k) {
    out.push_back(noisy_oracle(scene, k, seed));
  }
  return out;
}

std::vector<ObservationPair> observations_from_csv(const std::filesystem::path& path) {
  ObservationReader reader(path);
  std::vector<ObservationPair> out;
  while (auto pair = reader.next()) out.push_back(*pair);
  return out;
}

BenchReport bench_tracking(std::span<const ObservationPair> observations,
                           Pipeline pipeline, const TrackingConfig& cfg,
                           int repetitions) {
  if (repetitions < 1) throw std::invalid_argument("repetitions must be >= 1");
  if (observations.empty()) throw std::invalid_argument("nothing to benchmark");

  using clock = std::chrono::steady_clock;
  std::vector<double> latencies_ns;
  latencies_ns.reserve(observations.size() * static_cast<std::size_t>(repetitions));
  double total_seconds = 0.0;
  double sink = 0.0;  // keeps the loop from being optimized away

  for (int rep = 0; rep < repetitions; ++rep) {
    LayerTracker epi(LayerId::Epithelium, pipeline, cfg);
    LayerTracker dm(LayerId::DM, pipeline, cfg);
    const auto rep_start = clock::now();
    for (const auto& [epi_obs, dm_obs] : observations) {
      const auto t0 = clock::now();
      sink += epi.observe(epi_obs);
      sink += dm.observe(dm_obs);
      const auto t1 = clock::now();
      latencies_ns.push_back(
          std::chrono::duration<double, std::nano>(t1 - t0).count());
    }
    total_seconds += std::chrono::duration<double>(clock::now() - rep_start).count();
  }

  BenchReport report;
  report.pipeline = pipeline;
  report.columns = observations.size();
  report.repetitions = repetitions;
  report.total_seconds = total_seconds;
  const double processed =
      static_cast<double>(observations.size()) * static_cast<double>(repetitions);
  report.columns_per_second = processed / total_seconds;

  auto percentile = [&](double pct) {
    const std::size_t idx = std::min(
        latencies_ns.size() - 1,
        static_cast<std::size_t>(pct / 100.0 * static_cast<double>(latencies_ns.size())));
    std::nth_element(latencies_ns.begin(),
                     latencies_ns.begin() + static_cast<std::ptrdiff_t>(idx),
                     latencies_ns.end());
    return latencies_ns[idx] / 1000.0;  // us
  };
  report.p50_latency_us = percentile(50.0);
  report.p99_latency_us = percentile(99.0);
  if (!std::isfinite(sink)) throw std::logic_error("non-finite estimate in bench loop");
  return report;
}

}  // namespace octrack
