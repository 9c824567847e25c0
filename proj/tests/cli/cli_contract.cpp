// Exercises the installed CLI binary end to end: exit codes, output files,
// determinism, and the documented flag surface. The binary path arrives as
// argv[1] from CTest.

#include "octrack/io.hpp"
#include "octrack/observers.hpp"
#include "octrack/synth.hpp"

#include <nlohmann/json.hpp>

#include <sys/wait.h>

#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

namespace fs = std::filesystem;

namespace {

int g_failures = 0;

void check(bool ok, const std::string& what) {
  if (ok) {
    std::printf("[ok] %s\n", what.c_str());
  } else {
    ++g_failures;
    std::printf("[FAIL] %s\n", what.c_str());
  }
}

int run(const std::string& cmd) {
  const int status = std::system(cmd.c_str());
  if (status == -1) return -1;
  if (WIFEXITED(status)) return WEXITSTATUS(status);
  return -1;
}

std::string bytes_of(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  std::ostringstream out;
  out << in.rdbuf();
  return out.str();
}

}  // namespace

int main(int argc, char** argv) {
  if (argc < 2) {
    std::cerr << "usage: cli_contract <path-to-octrack>\n";
    return 2;
  }
  const std::string bin = argv[1];
  const fs::path dir = fs::temp_directory_path() / "octrack_cli_contract";
  fs::remove_all(dir);
  fs::create_directories(dir);
  const std::string out = dir.string();
  const std::string quiet = " > " + out + "/stdout.txt 2> " + out + "/stderr.txt";

  // synth: files exist, same seed twice is byte-identical
  check(run(bin + " synth --preset clean --seed 1 --out " + out + "/scene1" + quiet) == 0,
        "synth exits 0");
  check(fs::exists(out + "/scene1.pgm"), "synth wrote scene1.pgm");
  check(fs::exists(out + "/scene1.truth.csv"), "synth wrote scene1.truth.csv");
  {
    const octrack::MScanFrame frame = octrack::read_pgm(out + "/scene1.pgm");
    check(frame.width() == 512 && frame.depth() == 512, "synth frame is 512x512");
  }
  run(bin + " synth --preset clean --seed 1 --out " + out + "/scene1b" + quiet);
  check(bytes_of(out + "/scene1.pgm") == bytes_of(out + "/scene1b.pgm"),
        "synth is byte-deterministic for one seed");
  run(bin + " synth --preset clean --seed 2 --out " + out + "/scene2" + quiet);
  check(bytes_of(out + "/scene1.pgm") != bytes_of(out + "/scene2.pgm"),
        "different seeds change the frame");

  check(run(bin + " synth --preset nope --out " + out + "/bad" + quiet) == 1,
        "unknown preset exits 1");
  check(run(bin + " synth" + quiet) == 1, "missing required flags exit 1");
  check(run(bin + " --help" + quiet) == 0, "--help exits 0");

  // mscn output variant
  check(run(bin + " synth --preset motion --seed 4 --format both --out " + out +
            "/scene4" + quiet) == 0,
        "synth --format both exits 0");
  check(fs::exists(out + "/scene4.mscn"), "synth wrote scene4.mscn");

  // track on a preset source: traces + truth, deterministic, gap-free
  const std::string track_cmd = bin +
      " track --source preset:dropout_jagged --pipeline kdh --seed 3 --out " + out + "/run1";
  check(run(track_cmd + quiet) == 0, "track exits 0");
  check(fs::exists(out + "/run1.epithelium.trace.csv"), "track wrote epithelium trace");
  check(fs::exists(out + "/run1.dm.trace.csv"), "track wrote dm trace");
  check(fs::exists(out + "/run1.truth.csv"), "track wrote truth for a preset source");
  run(bin + " track --source preset:dropout_jagged --pipeline kdh --seed 3 --out " + out +
      "/run1b" + quiet);
  check(bytes_of(out + "/run1.epithelium.trace.csv") ==
            bytes_of(out + "/run1b.epithelium.trace.csv"),
        "track is byte-deterministic for one manifest");
  {
    const auto rows = octrack::read_trace_csv(out + "/run1.epithelium.trace.csv");
    bool gap_free = rows.size() == 512;
    std::size_t dropouts = 0;
    for (const auto& row : rows) {
      gap_free = gap_free && std::isfinite(row.filtered_px);
      if (row.status == octrack::ObsStatus::Dropout) ++dropouts;
    }
    check(gap_free, "every trace row has a finite estimate");
    check(dropouts == 60, "dropout schedule is visible in the trace status column");
  }

  // raw pipeline over a replay CSV echoes the depths exactly
  {
    octrack::SyntheticScene scene = octrack::preset(octrack::Regime::Clean);
    scene.width_px = 40;
    std::vector<octrack::ObservationPair> obs;
    for (octrack::Index k = 0; k < scene.width_px; ++k) {
      obs.push_back(octrack::noisy_oracle(scene, k, 555));
    }
    octrack::write_observations_csv(out + "/replay.csv", obs);
    check(run(bin + " track --source obs:" + out + "/replay.csv --pipeline raw --out " +
              out + "/rawrun" + quiet) == 0,
          "track over a replay CSV exits 0");
    const auto rows = octrack::read_trace_csv(out + "/rawrun.epithelium.trace.csv");
    bool echoed = rows.size() == obs.size();
    for (std::size_t k = 0; k < rows.size() && echoed; ++k) {
      echoed = rows[k].raw_px == obs[k].first.depth_px &&
               rows[k].filtered_px == obs[k].first.depth_px;
    }
    check(echoed, "raw pipeline echoes replayed depths exactly");
  }

  // malformed input is a data error (exit 2)
  {
    std::ofstream bad(out + "/bad.csv");
    bad << "layer,column,depth_px,status\nepithelium,0,abc,valid\n";
  }
  check(run(bin + " track --source obs:" + out + "/bad.csv --out " + out + "/badrun" +
            quiet) == 2,
        "malformed observation CSV exits 2");
  check(run(bin + " track --source frame:" + out + "/missing.pgm --out " + out +
            "/missingrun" + quiet) == 2,
        "missing frame file exits 2");
  check(run(bin + " track --source nonsense --out " + out + "/srcrun" + quiet) == 1,
        "malformed --source exits 1");

  // track over a rendered frame
  check(run(bin + " track --source frame:" + out + "/scene1.pgm --pipeline kdh --out " +
            out + "/framerun" + quiet) == 0,
        "track over a frame exits 0");

  // eval produces the table and the JSON report
  check(run(bin + " eval --trace-epi " + out + "/run1.epithelium.trace.csv --trace-dm " +
            out + "/run1.dm.trace.csv --truth " + out + "/run1.truth.csv --out " + out +
            "/run1 > " + out + "/eval_stdout.txt 2>&1") == 0,
        "eval exits 0");
  check(fs::exists(out + "/run1.report.json"), "eval wrote the JSON report");
  {
    std::ifstream in(out + "/run1.report.json");
    nlohmann::json doc;
    in >> doc;
    bool keys_ok = doc.contains("um_per_px") && doc["layers"].size() == 2;
    for (const auto& layer : doc["layers"]) {
      keys_ok = keys_ok && layer.contains("layer") && layer.contains("reduction_pct") &&
                layer["kdh"].contains("mae_px") && layer["kdh"].contains("mae_um") &&
                layer["kdh"].contains("jaggedness_px") && layer["kdh"].contains("n_columns");
    }
    check(keys_ok, "report JSON carries the documented keys");
    check(doc["layers"][0]["reduction_pct"].get<double>() > 0.0,
          "KDH reduces the error on the jagged preset");
    const std::string table = bytes_of(out + "/eval_stdout.txt");
    check(table.find("KDH") != std::string::npos &&
              table.find("Raw") != std::string::npos,
          "eval prints the comparison table");
  }
  {
    std::ofstream short_truth(out + "/short.truth.csv");
    short_truth << "column,epi_px,dm_px\n0,150,350\n1,150,350\n";
  }
  check(run(bin + " eval --trace-epi " + out + "/run1.epithelium.trace.csv --trace-dm " +
            out + "/run1.dm.trace.csv --truth " + out + "/short.truth.csv" + quiet) == 2,
        "mismatched truth exits 2");

  // bench emits JSON with throughput and latency percentiles
  check(run(bin + " bench --source preset:clean --pipeline kdh --repetitions 2 --seed 1 > " +
            out + "/bench.json 2> " + out + "/bench_err.txt") == 0,
        "bench exits 0");
  {
    std::ifstream in(out + "/bench.json");
    nlohmann::json doc;
    in >> doc;
    check(doc["columns_per_second"].get<double>() > 0.0 &&
              doc["latency_us"].contains("p50") && doc["latency_us"].contains("p99") &&
              doc["pipeline"] == "kdh",
          "bench JSON has throughput and latency percentiles");
  }

  // OCTRACK_CONFIG is the config fallback
  {
    std::ofstream cfg(out + "/env.cfg");
    cfg << "width_px = 64\ndepth_px = 128\nepi_base = 40\ndm_base = 90\n";
  }
  check(run("OCTRACK_CONFIG=" + out + "/env.cfg " + bin + " synth --preset clean --out " +
            out + "/envscene" + quiet) == 0,
        "synth with OCTRACK_CONFIG exits 0");
  {
    const octrack::MScanFrame frame = octrack::read_pgm(out + "/envscene.pgm");
    check(frame.width() == 64 && frame.depth() == 128,
          "OCTRACK_CONFIG scene keys were honored");
  }
  {
    std::ofstream cfg(out + "/broken.cfg");
    cfg << "width_px 64\n";
  }
  check(run(bin + " synth --preset clean --config " + out + "/broken.cfg --out " + out +
            "/brokenscene" + quiet) == 2,
        "malformed config exits 2");

  if (g_failures == 0) {
    std::printf("cli contract: all checks passed\n");
    return 0;
  }
  std::printf("cli contract: %d checks FAILED\n", g_failures);
  return 1;
}
