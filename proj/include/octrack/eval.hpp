#pragma once

#include "octrack/types.hpp"

#include <nlohmann/json_fwd.hpp>

#include <span>
#include <string>

namespace octrack {

struct EvalConfig {
  double um_per_px = 2.61;
};

void validate(const EvalConfig& cfg);

/// Per-layer accuracy summary for one trace.
struct EvalReport {
  LayerId layer = LayerId::Epithelium;
  double mae_px = 0.0;
  double mae_um = 0.0;
  double jaggedness_px = 0.0;  // mean absolute first difference
  Index n_columns = 0;
};

double mean_abs_error(const Eigen::Ref<const ArrayXd>& estimates,
                      const Eigen::Ref<const ArrayXd>& truth);

double px_to_um(double px, const EvalConfig& cfg);

/// 100 * (baseline - method) / baseline. Positive means the method improved
/// on the baseline.
double reduction_pct(double baseline_mae, double method_mae);

double jaggedness(const Eigen::Ref<const ArrayXd>& estimates);

EvalReport evaluate_trace(const Eigen::Ref<const ArrayXd>& estimates,
                          const Eigen::Ref<const ArrayXd>& truth, LayerId layer,
                          const EvalConfig& cfg);

/// Raw pipeline vs KDH pipeline on the same layer and truth.
struct LayerComparison {
  EvalReport raw;
  EvalReport kdh;
  double reduction_pct = 0.0;
};

LayerComparison compare_layer(const Eigen::Ref<const ArrayXd>& raw_estimates,
                              const Eigen::Ref<const ArrayXd>& kdh_estimates,
                              const Eigen::Ref<const ArrayXd>& truth, LayerId layer,
                              const EvalConfig& cfg);

/// Aligned plain-text table over both layers, percentages to two decimals.
std::string comparison_table(std::span<const LayerComparison> layers,
                             const EvalConfig& cfg);

nlohmann::json comparison_json(std::span<const LayerComparison> layers,
                               const EvalConfig& cfg);

}  // namespace octrack
