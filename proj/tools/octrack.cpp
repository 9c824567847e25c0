// octrack: streaming boundary tracking for M-mode OCT scans.
//
// Subcommands: synth, track, eval, bench. Exit codes: 0 success, 1 usage
// error, 2 data error.

#include "octrack/commands.hpp"

#include <CLI11.hpp>

#include <cstdint>
#include <iostream>
#include <optional>
#include <string>

namespace {

struct SharedFlags {
  std::string config;
  std::string out;
  std::string source;
  std::string pipeline = "kdh";
  std::optional<std::uint64_t> seed;
};

void add_config_flag(CLI::App* app, SharedFlags& flags) {
  app->add_option("--config", flags.config,
                  "Key-value config file (falls back to $OCTRACK_CONFIG)");
}

void add_seed_flag(CLI::App* app, SharedFlags& flags) {
  app->add_option_function<std::uint64_t>(
      "--seed", [&flags](std::uint64_t s) { flags.seed = s; },
      "Seed for all randomness in this run");
}

void add_manifest_flags(CLI::App* app, SharedFlags& flags) {
  add_config_flag(app, flags);
  add_seed_flag(app, flags);
  app->add_option("--source", flags.source,
                  "Input: frame:<path>, obs:<path> or preset:<name>")
      ->required();
  app->add_option("--pipeline", flags.pipeline, "Tracking pipeline")
      ->check(CLI::IsMember({"raw", "kdh"}));
}

octrack::RunManifest make_manifest(const SharedFlags& flags) {
  octrack::RunManifest m;
  m.source = flags.source;
  m.pipeline = octrack::pipeline_from_name(flags.pipeline);
  if (!flags.config.empty()) m.config_path = flags.config;
  m.out_stem = flags.out;
  m.seed = flags.seed;
  return m;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Streaming boundary tracking for M-mode OCT scans"};
  app.require_subcommand(1);

  SharedFlags synth_flags, track_flags, bench_flags;
  std::string synth_preset = "clean";
  std::string synth_format = "pgm";
  int repetitions = 3;
  octrack::EvalArgs eval_args;
  std::string eval_config, eval_out;

  CLI::App* synth = app.add_subcommand("synth", "Render a synthetic M-scan plus truth CSV");
  synth->add_option("--preset", synth_preset, "Scene preset")
      ->check(CLI::IsMember({"clean", "low_snr", "motion", "dropout_jagged"}));
  synth->add_option("--format", synth_format, "Frame file format")
      ->check(CLI::IsMember({"pgm", "mscn", "both"}));
  synth->add_option("--out", synth_flags.out, "Output path stem")->required();
  add_config_flag(synth, synth_flags);
  add_seed_flag(synth, synth_flags);

  CLI::App* track = app.add_subcommand("track", "Track layer boundaries column by column");
  add_manifest_flags(track, track_flags);
  track->add_option("--out", track_flags.out, "Output path stem")->required();

  CLI::App* eval = app.add_subcommand("eval", "Compare raw and KDH traces against truth");
  eval->add_option("--trace-epi", eval_args.trace_epi, "Epithelium trace CSV")->required();
  eval->add_option("--trace-dm", eval_args.trace_dm, "DM trace CSV")->required();
  eval->add_option("--truth", eval_args.truth, "Truth CSV")->required();
  eval->add_option("--out", eval_out, "Output path stem for the JSON report");
  eval->add_option("--config", eval_config, "Key-value config file");

  CLI::App* bench = app.add_subcommand("bench", "Measure tracking throughput and latency");
  add_manifest_flags(bench, bench_flags);
  bench->add_option("--out", bench_flags.out, "Output path stem");
  bench->add_option("--repetitions", repetitions, "Tracking loop repetitions")
      ->check(CLI::PositiveNumber);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 1;
  }

  try {
    if (synth->parsed()) {
      octrack::SynthArgs args;
      args.preset_name = synth_preset;
      args.format = synth_format;
      if (!synth_flags.config.empty()) args.config_path = synth_flags.config;
      args.seed = synth_flags.seed;
      args.out_stem = synth_flags.out;
      octrack::cmd_synth(args);
    } else if (track->parsed()) {
      octrack::cmd_track(make_manifest(track_flags));
    } else if (eval->parsed()) {
      if (!eval_config.empty()) eval_args.config_path = eval_config;
      if (!eval_out.empty()) eval_args.out_stem = eval_out;
      std::cout << octrack::cmd_eval(eval_args);
    } else if (bench->parsed()) {
      octrack::BenchArgs args;
      args.manifest = make_manifest(bench_flags);
      args.repetitions = repetitions;
      std::cout << octrack::cmd_bench(args);
    }
  } catch (const octrack::UsageError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 0;
}
