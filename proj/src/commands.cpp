#include "octrack/commands.hpp"

#include "octrack/config.hpp"
#include "octrack/eval.hpp"

#include <nlohmann/json.hpp>

#include <array>
#include <fstream>

namespace octrack {

namespace {

KeyValueConfig load_config(const std::optional<std::filesystem::path>& path) {
  if (path) return KeyValueConfig::from_file(*path);
  if (const char* env = std::getenv("OCTRACK_CONFIG"); env && *env) {
    return KeyValueConfig::from_file(env);
  }
  return KeyValueConfig{};
}

struct ParsedSource {
  enum class Kind { Frame, Obs, Preset } kind;
  std::string value;
};

ParsedSource parse_source(const std::string& source) {
  const auto colon = source.find(':');
  if (colon != std::string::npos) {
    const std::string kind = source.substr(0, colon);
    const std::string value = source.substr(colon + 1);
    if (kind == "frame") return {ParsedSource::Kind::Frame, value};
    if (kind == "obs") return {ParsedSource::Kind::Obs, value};
    if (kind == "preset") return {ParsedSource::Kind::Preset, value};
  }
  throw UsageError("bad --source '" + source + "', expected frame:<path>, obs:<path> or preset:<name>");
}

SyntheticScene scene_for(const std::string& preset_name, const KeyValueConfig& cfg) {
  Regime regime;
  try {
    regime = regime_from_name(preset_name);
  } catch (const std::invalid_argument& e) {
    throw UsageError(e.what());
  }
  return scene_from(cfg, preset(regime));
}

void write_json(const std::filesystem::path& path, const nlohmann::json& doc) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write " + path.string());
  out << doc.dump(2) << "\n";
}

}  // namespace

void cmd_synth(const SynthArgs& args) {
  if (args.format != "pgm" && args.format != "mscn" && args.format != "both") {
    throw UsageError("bad --format '" + args.format + "', expected pgm, mscn or both");
  }
  const KeyValueConfig cfg = load_config(args.config_path);
  SyntheticScene scene = scene_for(args.preset_name, cfg);
  if (args.seed) scene.seed = *args.seed;

  const RenderedScene rendered = render_frame(scene);
  const std::filesystem::path stem = args.out_stem;
  if (args.format == "pgm" || args.format == "both") {
    write_pgm(stem.string() + ".pgm", rendered.frame);
  }
  if (args.format == "mscn" || args.format == "both") {
    write_mscn(stem.string() + ".mscn", rendered.frame);
  }
  write_truth_csv(stem.string() + ".truth.csv", rendered.truth);
}

void cmd_track(const RunManifest& manifest) {
  const KeyValueConfig cfg = load_config(manifest.config_path);
  const TrackingConfig tracking{filter_params_from(cfg), window_config_from(cfg)};
  const ParsedSource source = parse_source(manifest.source);

  std::vector<ObservationPair> observations;
  std::vector<BoundaryPair> truth;
  switch (source.kind) {
    case ParsedSource::Kind::Frame:
      observations = observations_from_frame(read_frame(source.value),
                                             detector_config_from(cfg));
      break;
    case ParsedSource::Kind::Obs:
      observations = observations_from_csv(source.value);
      break;
    case ParsedSource::Kind::Preset: {
      SyntheticScene scene = scene_for(source.value, cfg);
      const std::uint64_t seed = manifest.seed.value_or(scene.seed);
      observations = observations_from_scene(scene, seed);
      truth.reserve(static_cast<std::size_t>(scene.width_px));
      for (Index k = 0; k < scene.width_px; ++k) truth.push_back(ground_truth(scene, k));
      break;
    }
  }

  const TrackResult result = track_observations(observations, manifest.pipeline, tracking);
  const std::string stem = manifest.out_stem.string();
  for (const auto* trace : {&result.epi, &result.dm}) {
    const auto rows = octrack::trace_rows(*trace);
    write_trace_csv(stem + "." + layer_name(trace->layer) + ".trace.csv", rows);
  }
  if (!truth.empty()) write_truth_csv(stem + ".truth.csv", truth);
}

std::string cmd_eval(const EvalArgs& args) {
  const KeyValueConfig cfg = load_config(args.config_path);
  const EvalConfig eval_cfg = eval_config_from(cfg);

  const std::vector<BoundaryPair> truth = read_truth_csv(args.truth);
  const std::array<std::filesystem::path, 2> trace_paths = {args.trace_epi, args.trace_dm};
  const std::array<LayerId, 2> layers = {LayerId::Epithelium, LayerId::DM};

  std::vector<LayerComparison> comparisons;
  for (std::size_t i = 0; i < 2; ++i) {
    const std::vector<TraceRow> rows = read_trace_csv(trace_paths[i]);
    if (rows.size() != truth.size()) {
      throw std::runtime_error(trace_paths[i].string() + ": trace has " +
                               std::to_string(rows.size()) + " columns, truth has " +
                               std::to_string(truth.size()));
    }
    ArrayXd raw(static_cast<Index>(rows.size()));
    ArrayXd kdh(static_cast<Index>(rows.size()));
    ArrayXd truth_col(static_cast<Index>(rows.size()));
    for (std::size_t k = 0; k < rows.size(); ++k) {
      if (rows[k].column != static_cast<Index>(k)) {
        throw std::runtime_error(trace_paths[i].string() + ": misaligned at column " +
                                 std::to_string(rows[k].column) + ", expected " +
                                 std::to_string(k));
      }
      raw[static_cast<Index>(k)] = rows[k].raw_px;
      kdh[static_cast<Index>(k)] = rows[k].filtered_px;
      truth_col[static_cast<Index>(k)] =
          layers[i] == LayerId::Epithelium ? truth[k].epi : truth[k].dm;
    }
    comparisons.push_back(compare_layer(raw, kdh, truth_col, layers[i], eval_cfg));
  }

  if (args.out_stem) {
    write_json(args.out_stem->string() + ".report.json",
               comparison_json(comparisons, eval_cfg));
  }
  return comparison_table(comparisons, eval_cfg);
}

std::string cmd_bench(const BenchArgs& args) {
  if (args.repetitions < 1) throw UsageError("--repetitions must be >= 1");
  const KeyValueConfig cfg = load_config(args.manifest.config_path);
  const TrackingConfig tracking{filter_params_from(cfg), window_config_from(cfg)};
  const ParsedSource source = parse_source(args.manifest.source);

  std::vector<ObservationPair> observations;
  switch (source.kind) {
    case ParsedSource::Kind::Frame:
      observations = observations_from_frame(read_frame(source.value),
                                             detector_config_from(cfg));
      break;
    case ParsedSource::Kind::Obs:
      observations = observations_from_csv(source.value);
      break;
    case ParsedSource::Kind::Preset: {
      const SyntheticScene scene = scene_for(source.value, cfg);
      observations =
          observations_from_scene(scene, args.manifest.seed.value_or(scene.seed));
      break;
    }
  }

  const BenchReport report =
      bench_tracking(observations, args.manifest.pipeline, tracking, args.repetitions);
  nlohmann::json doc{{"pipeline", pipeline_name(report.pipeline)},
                     {"columns", report.columns},
                     {"repetitions", report.repetitions},
                     {"total_seconds", report.total_seconds},
                     {"columns_per_second", report.columns_per_second},
                     {"latency_us", {{"p50", report.p50_latency_us},
                                     {"p99", report.p99_latency_us}}}};
  const std::string text = doc.dump(2) + "\n";
  if (!args.manifest.out_stem.empty()) {
    write_json(args.manifest.out_stem.string() + ".bench.json", doc);
  }
  return text;
}

}  // namespace octrack
