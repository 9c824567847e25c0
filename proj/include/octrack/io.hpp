#pragma once

#include "octrack/types.hpp"

#include <filesystem>
#include <span>
#include <string>
#include <vector>

namespace octrack {

/// Shortest decimal form that round-trips the exact double.
std::string format_double(double v);

// Frame files. PGM is binary P5, 8-bit when every sample fits in a byte,
// 16-bit (big-endian, per Netpbm) otherwise; samples are rounded and
// clamped to the sample range. The .mscn format keeps float samples
// exactly: 16-byte header (magic "MSCN", u32 width, u32 depth, u32 flags,
// all little-endian) followed by width*depth f32 little-endian samples in
// column-major order, one A-scan after another.
void write_pgm(const std::filesystem::path& path, const MScanFrame& frame);
MScanFrame read_pgm(const std::filesystem::path& path);
void write_mscn(const std::filesystem::path& path, const MScanFrame& frame);
MScanFrame read_mscn(const std::filesystem::path& path);

/// Dispatch on extension: .pgm or .mscn.
MScanFrame read_frame(const std::filesystem::path& path);

// Truth CSV: header `column,epi_px,dm_px`, consecutive columns from 0.
void write_truth_csv(const std::filesystem::path& path,
                     std::span<const BoundaryPair> truth);
std::vector<BoundaryPair> read_truth_csv(const std::filesystem::path& path);

// Observation CSV: header `layer,column,depth_px,status`, two rows per
// column (epithelium first). Dropout rows carry depth 0.
void write_observations_csv(const std::filesystem::path& path,
                            std::span<const ObservationPair> observations);

// Trace CSV: header `column,raw_px,filtered_px,gain,status`. raw_px holds
// the last valid observation across dropout rows; status records the gap.
struct TraceRow {
  Index column = 0;
  double raw_px = 0.0;
  double filtered_px = 0.0;
  double gain = 0.0;
  ObsStatus status = ObsStatus::Valid;
};

std::string trace_header();
std::string format_trace_row(const TraceRow& row);
void write_trace_csv(const std::filesystem::path& path, std::span<const TraceRow> rows);
std::vector<TraceRow> read_trace_csv(const std::filesystem::path& path);

std::vector<TraceRow> trace_rows(const BoundaryTrace& trace);

}  // namespace octrack
