#include "octrack/eval.hpp"

#include <nlohmann/json.hpp>

#include <cmath>
#include <cstdio>
#include <stdexcept>

namespace octrack {

void validate(const EvalConfig& cfg) {
  if (!(cfg.um_per_px > 0.0)) throw std::invalid_argument("um_per_px must be positive");
}

double mean_abs_error(const Eigen::Ref<const ArrayXd>& estimates,
                      const Eigen::Ref<const ArrayXd>& truth) {
  if (estimates.size() != truth.size()) {
    throw std::invalid_argument("estimate/truth length mismatch");
  }
  if (estimates.size() == 0) throw std::invalid_argument("empty trace");
  return (estimates - truth).abs().mean();
}

double px_to_um(double px, const EvalConfig& cfg) { return px * cfg.um_per_px; }

double reduction_pct(double baseline_mae, double method_mae) {
  if (!(baseline_mae > 0.0)) throw std::invalid_argument("baseline error must be positive");
  return 100.0 * (baseline_mae - method_mae) / baseline_mae;
}

double jaggedness(const Eigen::Ref<const ArrayXd>& estimates) {
  const Index n = estimates.size();
  if (n < 2) throw std::invalid_argument("jaggedness needs at least 2 points");
  return (estimates.tail(n - 1) - estimates.head(n - 1)).abs().mean();
}

EvalReport evaluate_trace(const Eigen::Ref<const ArrayXd>& estimates,
                          const Eigen::Ref<const ArrayXd>& truth, LayerId layer,
                          const EvalConfig& cfg) {
  validate(cfg);
  EvalReport report;
  report.layer = layer;
  report.mae_px = mean_abs_error(estimates, truth);
  report.mae_um = px_to_um(report.mae_px, cfg);
  report.jaggedness_px = jaggedness(estimates);
  report.n_columns = estimates.size();
  return report;
}

LayerComparison compare_layer(const Eigen::Ref<const ArrayXd>& raw_estimates,
                              const Eigen::Ref<const ArrayXd>& kdh_estimates,
                              const Eigen::Ref<const ArrayXd>& truth, LayerId layer,
                              const EvalConfig& cfg) {
  LayerComparison cmp;
  cmp.raw = evaluate_trace(raw_estimates, truth, layer, cfg);
  cmp.kdh = evaluate_trace(kdh_estimates, truth, layer, cfg);
  cmp.reduction_pct = reduction_pct(cmp.raw.mae_px, cmp.kdh.mae_px);
  return cmp;
}

std::string comparison_table(std::span<const LayerComparison> layers,
                             const EvalConfig& cfg) {
  (void)cfg;
  char buf[256];
  std::string out;
  out += "Approach       ";
  for (const auto& cmp : layers) {
    std::snprintf(buf, sizeof(buf), "  Average %s Error (px / um)   ",
                  cmp.kdh.layer == LayerId::Epithelium ? "Epithelium" : "DM");
    out += buf;
  }
  out += "\n";
  out += "KDH            ";
  for (const auto& cmp : layers) {
    std::snprintf(buf, sizeof(buf), "  %10.4f px  %10.4f um   ", cmp.kdh.mae_px,
                  cmp.kdh.mae_um);
    out += buf;
  }
  out += "\n";
  out += "Raw            ";
  for (const auto& cmp : layers) {
    std::snprintf(buf, sizeof(buf), "  %10.4f px  %10.4f um   ", cmp.raw.mae_px,
                  cmp.raw.mae_um);
    out += buf;
  }
  out += "\n";
  out += "Reduction      ";
  for (const auto& cmp : layers) {
    std::snprintf(buf, sizeof(buf), "  %10.2f %%                  ", cmp.reduction_pct);
    out += buf;
  }
  out += "\n";
  return out;
}

namespace {

nlohmann::json report_json(const EvalReport& report) {
  return nlohmann::json{{"layer", layer_name(report.layer)},
                        {"mae_px", report.mae_px},
                        {"mae_um", report.mae_um},
                        {"jaggedness_px", report.jaggedness_px},
                        {"n_columns", report.n_columns}};
}

}  // namespace

nlohmann::json comparison_json(std::span<const LayerComparison> layers,
                               const EvalConfig& cfg) {
  nlohmann::json out;
  out["um_per_px"] = cfg.um_per_px;
  out["layers"] = nlohmann::json::array();
  for (const auto& cmp : layers) {
    out["layers"].push_back({{"layer", layer_name(cmp.kdh.layer)},
                             {"raw", report_json(cmp.raw)},
                             {"kdh", report_json(cmp.kdh)},
                             {"reduction_pct", cmp.reduction_pct}});
  }
  return out;
}

}  // namespace octrack
