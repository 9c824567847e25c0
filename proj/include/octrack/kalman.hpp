#pragma once

#include "octrack/types.hpp"

#include <cmath>
#include <cstdint>
#include <stdexcept>
#include <utility>

namespace octrack {

/// Scalar Kalman filter parameters. Defaults give a heavily smoothed,
/// slowly adapting track (steady-state gain around 3.2e-3).
struct FilterParams {
  double f = 1.0;     // state transition
  double h = 1.0;     // observation model
  double q = 1e-5;    // process noise covariance
  double r = 1.0;     // observation noise covariance
  double p0 = 1.0;    // initial error covariance
};

inline void validate(const FilterParams& params) {
  if (!(params.q > 0.0) || !std::isfinite(params.q)) {
    throw std::invalid_argument("filter param q must be positive");
  }
  if (!(params.r > 0.0) || !std::isfinite(params.r)) {
    throw std::invalid_argument("filter param r must be positive");
  }
  if (!(params.p0 > 0.0) || !std::isfinite(params.p0)) {
    throw std::invalid_argument("filter param p0 must be positive");
  }
  if (params.f == 0.0 || !std::isfinite(params.f)) {
    throw std::invalid_argument("filter param f must be finite and nonzero");
  }
  if (params.h == 0.0 || !std::isfinite(params.h)) {
    throw std::invalid_argument("filter param h must be finite and nonzero");
  }
}

struct KalmanState {
  double x_hat = 0.0;      // current estimate (px)
  double p = 1.0;          // error covariance (px^2)
  double last_gain = 0.0;  // gain applied by the most recent update
  std::uint64_t steps = 0;
};

inline KalmanState init_state(double first_observation, const FilterParams& params) {
  if (!std::isfinite(first_observation)) {
    throw std::invalid_argument("first observation must be finite");
  }
  return KalmanState{first_observation, params.p0, 0.0, 0};
}

inline KalmanState predict(const KalmanState& state, const FilterParams& params) {
  KalmanState next = state;
  next.x_hat = params.f * state.x_hat;
  next.p = params.f * state.p * params.f + params.q;
  return next;
}

inline KalmanState update(const KalmanState& prior, double z, const FilterParams& params) {
  if (!std::isfinite(z)) {
    throw std::invalid_argument("observation must be finite");
  }
  KalmanState next = prior;
  const double gain = prior.p * params.h / (params.h * prior.p * params.h + params.r);
  next.x_hat = prior.x_hat + gain * (z - params.h * prior.x_hat);
  next.p = (1.0 - gain * params.h) * prior.p;
  next.last_gain = gain;
  return next;
}

/// One predict/update cycle. Dropout observations run the predict step
/// only, so the estimate coasts and the covariance widens by q.
inline std::pair<KalmanState, double> step(const KalmanState& state,
                                           const BoundaryObservation& obs,
                                           const FilterParams& params) {
  KalmanState next = predict(state, params);
  if (obs.status == ObsStatus::Valid) {
    next = update(next, obs.depth_px, params);
  }
  ++next.steps;
  return {next, next.x_hat};
}

struct SteadyState {
  double p_prior = 0.0;  // fixpoint of the prior covariance recursion
  double gain = 0.0;     // Kalman gain at that fixpoint
};

/// Iterates the covariance recursion to its fixpoint. The estimate never
/// enters this recursion, so the result depends on params alone.
inline SteadyState steady_state(const FilterParams& params, double tol = 1e-13,
                                long max_iter = 2'000'000) {
  if (!(tol > 0.0)) throw std::invalid_argument("tol must be positive");
  if (max_iter < 1) throw std::invalid_argument("max_iter must be positive");
  double p_prior = params.f * params.p0 * params.f + params.q;
  double gain = 0.0;
  for (long i = 0; i < max_iter; ++i) {
    gain = p_prior * params.h / (params.h * p_prior * params.h + params.r);
    const double p_post = (1.0 - gain * params.h) * p_prior;
    const double next = params.f * p_post * params.f + params.q;
    const double delta = std::abs(next - p_prior);
    p_prior = next;
    if (delta < tol) {
      gain = p_prior * params.h / (params.h * p_prior * params.h + params.r);
      return SteadyState{p_prior, gain};
    }
  }
  throw std::runtime_error("steady_state did not converge; params look divergent");
}

}  // namespace octrack
