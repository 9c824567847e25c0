#pragma once

#include "octrack/types.hpp"

#include <cstdint>
#include <string_view>
#include <vector>

namespace octrack {

/// [begin, end) column range.
struct ColumnInterval {
  Index begin = 0;
  Index end = 0;
};

/// A segmenter glitch: at this column the emitted observation is offset
/// by a uniform draw in [-amplitude, amplitude].
struct JagEvent {
  Index column = 0;
  double amplitude = 0.0;
};

/// Ground-truth boundary trajectories plus the artifact schedule used by
/// the phantom renderer and the noisy observation oracle.
struct SyntheticScene {
  Index width_px = 512;
  Index depth_px = 512;
  double epi_base = 150.0;
  double dm_base = 350.0;
  double motion_amplitude = 0.0;   // px, common-mode sinusoidal eye motion
  double motion_period = 256.0;    // columns
  double drift_per_column = 0.0;   // px per column, both layers
  double band_sigma = 2.5;         // axial Gaussian width of each bright band
  double band_intensity = 180.0;
  double background_noise_sigma = 4.0;
  double sigma_obs = 0.5;          // observation noise fed to the oracle
  std::vector<ColumnInterval> dropout_intervals;
  std::vector<JagEvent> jag_events;
  std::uint64_t seed = 0;
};

void validate(const SyntheticScene& scene);

enum class Regime { Clean, LowSNR, Motion, DropoutJagged };

const char* regime_name(Regime regime);
Regime regime_from_name(std::string_view name);

/// Scene presets for the four signal regimes the tracker is exercised
/// against: clean signal, low SNR, eye motion, and signal loss with
/// jagged observations.
SyntheticScene preset(Regime regime);

/// True boundary depths at column k (clamped into [0, depth_px)).
BoundaryPair ground_truth(const SyntheticScene& scene, Index k);

bool in_dropout(const SyntheticScene& scene, Index k);

struct RenderedScene {
  MScanFrame frame;
  std::vector<BoundaryPair> truth;
};

/// Renders the phantom: clipped Gaussian background noise plus one
/// Gaussian bright band per layer; dropout columns keep background only.
/// Deterministic for a fixed scene (including seed).
RenderedScene render_frame(const SyntheticScene& scene);

}  // namespace octrack
