#pragma once

#include "octrack/kalman.hpp"
#include "octrack/types.hpp"

#include <cmath>
#include <cstdint>
#include <deque>
#include <stdexcept>
#include <utility>

namespace octrack {

/// Sliding-window observation pre-filter: raw observations during warmup,
/// then a weighted average of the two most recent window_len-point spans.
struct WindowConfig {
  int window_len = 50;
  double recent_weight = 0.7;
  double prior_weight = 0.3;
  int warmup_len = 50;
};

inline void validate(const WindowConfig& cfg) {
  if (cfg.window_len < 1) throw std::invalid_argument("window_len must be >= 1");
  if (cfg.warmup_len < 1) throw std::invalid_argument("warmup_len must be >= 1");
  if (cfg.recent_weight < 0.0 || cfg.recent_weight > 1.0 ||
      cfg.prior_weight < 0.0 || cfg.prior_weight > 1.0) {
    throw std::invalid_argument("window weights must lie in [0,1]");
  }
  if (std::abs(cfg.recent_weight + cfg.prior_weight - 1.0) > 1e-12) {
    throw std::invalid_argument("window weights must sum to 1");
  }
}

/// FIFO of the last 2*window_len valid observation depths. Dropouts never
/// enter the buffer; count tracks valid observations seen in total.
struct WindowState {
  std::deque<double> buffer;
  std::uint64_t count = 0;
};

inline void push(WindowState& state, double z, const WindowConfig& cfg) {
  if (!std::isfinite(z)) throw std::invalid_argument("window input must be finite");
  state.buffer.push_back(z);
  if (state.buffer.size() > static_cast<std::size_t>(2 * cfg.window_len)) {
    state.buffer.pop_front();
  }
  ++state.count;
}

/// Observation fed to the Kalman update for the current column. Expects z
/// to have been pushed already. Passthrough while warming up or until two
/// full windows exist; afterwards blends the window means.
inline double effective_observation(const WindowState& state, double z,
                                    const WindowConfig& cfg) {
  const std::uint64_t full = 2 * static_cast<std::uint64_t>(cfg.window_len);
  if (state.count <= static_cast<std::uint64_t>(cfg.warmup_len) || state.count < full) {
    return z;
  }
  const std::size_t n = state.buffer.size();
  const std::size_t w = static_cast<std::size_t>(cfg.window_len);
  double prior_sum = 0.0;
  for (std::size_t i = n - 2 * w; i < n - w; ++i) prior_sum += state.buffer[i];
  double recent_sum = 0.0;
  for (std::size_t i = n - w; i < n; ++i) recent_sum += state.buffer[i];
  const double prior_mean = prior_sum / static_cast<double>(w);
  const double recent_mean = recent_sum / static_cast<double>(w);
  return cfg.recent_weight * recent_mean + cfg.prior_weight * prior_mean;
}

/// One column of the windowed Kalman pipeline. Valid observations are
/// pushed, window-adjusted and filtered; dropouts coast on predict only
/// and leave the window untouched.
inline double kdh_step(KalmanState& kalman, WindowState& window,
                       const BoundaryObservation& obs, const FilterParams& params,
                       const WindowConfig& cfg) {
  KalmanState prior = predict(kalman, params);
  if (obs.status == ObsStatus::Valid) {
    push(window, obs.depth_px, cfg);
    const double z_eff = effective_observation(window, obs.depth_px, cfg);
    prior = update(prior, z_eff, params);
  }
  ++prior.steps;
  kalman = prior;
  return kalman.x_hat;
}

}  // namespace octrack
