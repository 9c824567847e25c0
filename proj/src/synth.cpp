#include "octrack/synth.hpp"

#include "octrack/rng.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>
#include <stdexcept>

namespace octrack {

namespace {

double trajectory(double base, const SyntheticScene& s, Index k) {
  const double phase = 2.0 * std::numbers::pi * static_cast<double>(k) / s.motion_period;
  double v = base + s.motion_amplitude * std::sin(phase) +
             s.drift_per_column * static_cast<double>(k);
  const double hi = std::nextafter(static_cast<double>(s.depth_px), 0.0);
  return std::clamp(v, 0.0, hi);
}

void check_trajectory_bounds(const SyntheticScene& s) {
  const double span = s.drift_per_column * static_cast<double>(s.width_px - 1);
  const double lo_shift = -s.motion_amplitude + std::min(0.0, span);
  const double hi_shift = s.motion_amplitude + std::max(0.0, span);
  if (s.epi_base + lo_shift < 0.0 || s.dm_base + hi_shift >= static_cast<double>(s.depth_px)) {
    throw std::invalid_argument("scene trajectories leave [0, depth_px)");
  }
}

}  // namespace

void validate(const SyntheticScene& scene) {
  if (scene.width_px <= 0 || scene.depth_px <= 0) {
    throw std::invalid_argument("scene dimensions must be positive");
  }
  if (!(scene.band_sigma > 0.0)) throw std::invalid_argument("band_sigma must be positive");
  if (!(scene.band_intensity > 0.0)) throw std::invalid_argument("band_intensity must be positive");
  if (scene.background_noise_sigma < 0.0 || scene.sigma_obs < 0.0) {
    throw std::invalid_argument("noise sigmas must be non-negative");
  }
  if (!(scene.motion_period > 0.0)) throw std::invalid_argument("motion_period must be positive");
  if (scene.motion_amplitude < 0.0) throw std::invalid_argument("motion_amplitude must be non-negative");
  if (!(scene.epi_base + 3.0 * scene.band_sigma < scene.dm_base)) {
    throw std::invalid_argument("epithelium and DM bands overlap");
  }
  check_trajectory_bounds(scene);
  for (const auto& iv : scene.dropout_intervals) {
    if (iv.begin < 0 || iv.end > scene.width_px || iv.begin >= iv.end) {
      throw std::invalid_argument("bad dropout interval");
    }
  }
  for (const auto& jag : scene.jag_events) {
    if (jag.column < 0 || jag.column >= scene.width_px || jag.amplitude < 0.0) {
      throw std::invalid_argument("bad jag event");
    }
  }
}

const char* regime_name(Regime regime) {
  switch (regime) {
    case Regime::Clean: return "clean";
    case Regime::LowSNR: return "low_snr";
    case Regime::Motion: return "motion";
    case Regime::DropoutJagged: return "dropout_jagged";
  }
  return "clean";
}

Regime regime_from_name(std::string_view name) {
  if (name == "clean") return Regime::Clean;
  if (name == "low_snr") return Regime::LowSNR;
  if (name == "motion") return Regime::Motion;
  if (name == "dropout_jagged") return Regime::DropoutJagged;
  throw std::invalid_argument("unknown preset: " + std::string(name));
}

SyntheticScene preset(Regime regime) {
  SyntheticScene s;
  switch (regime) {
    case Regime::Clean:
      s.sigma_obs = 0.5;
      s.background_noise_sigma = 2.0;
      s.band_intensity = 200.0;
      break;
    case Regime::LowSNR:
      s.sigma_obs = 3.0;
      s.background_noise_sigma = 25.0;
      s.band_intensity = 120.0;
      break;
    case Regime::Motion:
      s.motion_amplitude = 15.0;
      s.motion_period = 200.0;
      s.sigma_obs = 1.5;
      s.background_noise_sigma = 4.0;
      break;
    case Regime::DropoutJagged:
      s.sigma_obs = 1.0;
      s.background_noise_sigma = 6.0;
      s.dropout_intervals = {{120, 140}, {260, 280}, {400, 420}};
      s.jag_events = {{110, 20.0}, {155, 24.0}, {190, 28.0}, {225, 32.0},
                      {300, 36.0}, {330, 40.0}, {360, 22.0}, {430, 30.0},
                      {460, 34.0}, {490, 38.0}};
      break;
  }
  return s;
}

BoundaryPair ground_truth(const SyntheticScene& scene, Index k) {
  if (k < 0 || k >= scene.width_px) {
    throw std::out_of_range("ground_truth column index out of range");
  }
  return BoundaryPair{trajectory(scene.epi_base, scene, k),
                      trajectory(scene.dm_base, scene, k)};
}

bool in_dropout(const SyntheticScene& scene, Index k) {
  for (const auto& iv : scene.dropout_intervals) {
    if (k >= iv.begin && k < iv.end) return true;
  }
  return false;
}

RenderedScene render_frame(const SyntheticScene& scene) {
  validate(scene);
  RenderedScene out;
  out.frame.data.resize(scene.depth_px, scene.width_px);
  out.truth.reserve(static_cast<std::size_t>(scene.width_px));

  const ArrayXd rows = ArrayXd::LinSpaced(scene.depth_px, 0.0,
                                          static_cast<double>(scene.depth_px - 1));
  const double two_sigma_sq = 2.0 * scene.band_sigma * scene.band_sigma;

  for (Index k = 0; k < scene.width_px; ++k) {
    const BoundaryPair truth = ground_truth(scene, k);
    out.truth.push_back(truth);

    ArrayXd col = ArrayXd::Zero(scene.depth_px);
    if (scene.background_noise_sigma > 0.0) {
      auto rng = make_rng(scene.seed, RngStream::RenderNoise, static_cast<std::uint64_t>(k));
      std::normal_distribution<double> noise(0.0, scene.background_noise_sigma);
      for (Index row = 0; row < scene.depth_px; ++row) {
        col[row] = std::max(0.0, noise(rng));
      }
    }
    if (!in_dropout(scene, k)) {
      col += scene.band_intensity * (-(rows - truth.epi).square() / two_sigma_sq).exp();
      col += scene.band_intensity * (-(rows - truth.dm).square() / two_sigma_sq).exp();
    }
    out.frame.data.col(k) = col.cast<float>();
  }
  return out;
}

}  // namespace octrack
