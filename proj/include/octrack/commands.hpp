#pragma once

#include "octrack/pipeline.hpp"

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>

namespace octrack {

/// Thrown for bad user input that argument parsing cannot catch, such as
/// unknown preset names or a malformed --source value. Exit code 1.
struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// One tracking run: exactly one input source, a pipeline, optional
/// config, an output path stem and a seed.
struct RunManifest {
  std::string source;  // "frame:<path>" | "obs:<path>" | "preset:<name>"
  Pipeline pipeline = Pipeline::Kdh;
  std::optional<std::filesystem::path> config_path;
  std::filesystem::path out_stem;
  std::optional<std::uint64_t> seed;
};

struct SynthArgs {
  std::string preset_name = "clean";
  std::optional<std::filesystem::path> config_path;
  std::optional<std::uint64_t> seed;
  std::filesystem::path out_stem;
  std::string format = "pgm";  // pgm | mscn | both
};

struct EvalArgs {
  std::filesystem::path trace_epi;
  std::filesystem::path trace_dm;
  std::filesystem::path truth;
  std::optional<std::filesystem::path> config_path;
  std::optional<std::filesystem::path> out_stem;
};

struct BenchArgs {
  RunManifest manifest;
  int repetitions = 3;
};

/// Writes <out>.pgm and/or <out>.mscn plus <out>.truth.csv.
void cmd_synth(const SynthArgs& args);

/// Writes <out>.epithelium.trace.csv and <out>.dm.trace.csv; preset
/// sources also write <out>.truth.csv. Single-pass and causal.
void cmd_track(const RunManifest& manifest);

/// Writes <out>.report.json (when --out is given) and returns the
/// plain-text comparison table.
std::string cmd_eval(const EvalArgs& args);

/// Returns the bench report as JSON text; also writes <out>.bench.json
/// when the manifest names an output stem.
std::string cmd_bench(const BenchArgs& args);

}  // namespace octrack
