#include "octrack/patcher.hpp"

#include "octrack/io.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace octrack {

void validate(const PatchConfig& cfg) {
  if (cfg.patch_width < 1 || cfg.patches_per_frame < 1) {
    throw std::invalid_argument("patch geometry must be positive");
  }
  if (!(cfg.norm_std > 0.0)) throw std::invalid_argument("norm_std must be positive");
}

NormStats compute_norm_stats(const std::vector<MScanFrame>& frames) {
  if (frames.empty()) throw std::invalid_argument("norm stats need at least one frame");
  double sum = 0.0;
  double count = 0.0;
  for (const auto& f : frames) {
    sum += f.data.cast<double>().sum();
    count += static_cast<double>(f.data.size());
  }
  if (count == 0.0) throw std::invalid_argument("norm stats need at least one pixel");
  const double mean = sum / count;
  double sq = 0.0;
  for (const auto& f : frames) {
    sq += (f.data.cast<double>() - mean).square().sum();
  }
  const double variance = sq / count;
  if (!(variance > 0.0)) {
    throw std::invalid_argument("zero variance: all pixels share one value");
  }
  return NormStats{mean, std::sqrt(variance)};
}

std::vector<Patch> extract_patches(const MScanFrame& frame, const PatchConfig& cfg) {
  validate(cfg);
  if (frame.width() != cfg.patch_width * cfg.patches_per_frame) {
    std::ostringstream msg;
    msg << "frame width " << frame.width() << " != patch_width * patches_per_frame ("
        << cfg.patch_width << " * " << cfg.patches_per_frame << ")";
    throw std::invalid_argument(msg.str());
  }
  std::vector<Patch> patches;
  patches.reserve(static_cast<std::size_t>(cfg.patches_per_frame));
  for (Index i = 0; i < cfg.patches_per_frame; ++i) {
    Patch p;
    p.origin_column = i * cfg.patch_width;
    p.data = (frame.data.middleCols(p.origin_column, cfg.patch_width).cast<double>() -
              cfg.norm_mean) /
             cfg.norm_std;
    patches.push_back(std::move(p));
  }
  return patches;
}

MScanFrame reassemble(const std::vector<Patch>& patches, const PatchConfig& cfg) {
  validate(cfg);
  if (patches.empty()) throw std::invalid_argument("no patches to reassemble");
  const Index depth = patches.front().data.rows();
  std::vector<const Patch*> ordered;
  ordered.reserve(patches.size());
  for (const auto& p : patches) ordered.push_back(&p);
  std::sort(ordered.begin(), ordered.end(),
            [](const Patch* a, const Patch* b) { return a->origin_column < b->origin_column; });

  Index expected = 0;
  for (const Patch* p : ordered) {
    if (p->data.rows() != depth || p->data.cols() != cfg.patch_width) {
      throw std::invalid_argument("patch dimensions do not match the config");
    }
    if (p->origin_column != expected) {
      std::ostringstream msg;
      msg << (p->origin_column > expected ? "gap" : "overlap") << " at patch origin "
          << p->origin_column << ", expected " << expected;
      throw std::invalid_argument(msg.str());
    }
    expected += cfg.patch_width;
  }

  MScanFrame frame;
  frame.data.resize(depth, expected);
  for (const Patch* p : ordered) {
    frame.data.middleCols(p->origin_column, cfg.patch_width) =
        (p->data * cfg.norm_std + cfg.norm_mean).cast<float>();
  }
  return frame;
}

void write_norm_stats(const std::filesystem::path& path, const NormStats& stats) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write norm stats: " + path.string());
  out << "mean=" << format_double(stats.mean) << "\n"
      << "std=" << format_double(stats.stddev) << "\n";
}

NormStats read_norm_stats(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot read norm stats: " + path.string());
  NormStats stats;
  std::string line;
  bool have_mean = false, have_std = false;
  while (std::getline(in, line)) {
    if (line.rfind("mean=", 0) == 0) {
      stats.mean = std::stod(line.substr(5));
      have_mean = true;
    } else if (line.rfind("std=", 0) == 0) {
      stats.stddev = std::stod(line.substr(4));
      have_std = true;
    }
  }
  if (!have_mean || !have_std) {
    throw std::runtime_error("malformed norm stats file: " + path.string());
  }
  return stats;
}

}  // namespace octrack
