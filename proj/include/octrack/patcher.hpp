#pragma once

#include "octrack/types.hpp"

#include <filesystem>
#include <vector>

namespace octrack {

/// Patch geometry and normalization stats. patch_width * patches_per_frame
/// must equal the frame width.
struct PatchConfig {
  Index patch_width = 32;
  Index patches_per_frame = 16;
  double norm_mean = 0.0;
  double norm_std = 1.0;
};

void validate(const PatchConfig& cfg);

/// One normalized column block of a frame.
struct Patch {
  Index origin_column = 0;
  Eigen::ArrayXXd data;  // depth x patch_width
};

struct NormStats {
  double mean = 0.0;
  double stddev = 1.0;
};

/// Population mean and standard deviation over every pixel of every frame.
/// Throws on empty input or zero variance.
NormStats compute_norm_stats(const std::vector<MScanFrame>& frames);

/// Splits a frame into non-overlapping left-to-right column blocks, each
/// normalized as (v - norm_mean) / norm_std.
std::vector<Patch> extract_patches(const MScanFrame& frame, const PatchConfig& cfg);

/// Inverse of extract_patches, including denormalization. Patch order does
/// not matter; origins must tile the frame exactly.
MScanFrame reassemble(const std::vector<Patch>& patches, const PatchConfig& cfg);

/// Two-line sidecar (`mean=...`, `std=...`) next to dataset manifests.
void write_norm_stats(const std::filesystem::path& path, const NormStats& stats);
NormStats read_norm_stats(const std::filesystem::path& path);

}  // namespace octrack
