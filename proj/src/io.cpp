#include "octrack/io.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdint>
#include <cstring>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace octrack {

namespace {

[[noreturn]] void fail(const std::filesystem::path& path, const std::string& what) {
  throw std::runtime_error(path.string() + ": " + what);
}

std::ofstream open_out(const std::filesystem::path& path, bool binary) {
  std::ofstream out(path, binary ? std::ios::binary : std::ios::out);
  if (!out) fail(path, "cannot open for writing");
  return out;
}

std::ifstream open_in(const std::filesystem::path& path, bool binary) {
  std::ifstream in(path, binary ? std::ios::binary : std::ios::in);
  if (!in) fail(path, "cannot open for reading");
  return in;
}

void put_u32_le(std::ostream& out, std::uint32_t v) {
  const char bytes[4] = {static_cast<char>(v & 0xff), static_cast<char>((v >> 8) & 0xff),
                         static_cast<char>((v >> 16) & 0xff),
                         static_cast<char>((v >> 24) & 0xff)};
  out.write(bytes, 4);
}

std::uint32_t get_u32_le(std::istream& in) {
  unsigned char bytes[4];
  in.read(reinterpret_cast<char*>(bytes), 4);
  return static_cast<std::uint32_t>(bytes[0]) | (static_cast<std::uint32_t>(bytes[1]) << 8) |
         (static_cast<std::uint32_t>(bytes[2]) << 16) |
         (static_cast<std::uint32_t>(bytes[3]) << 24);
}

// Next whitespace-delimited PGM header token, skipping # comments.
std::string pgm_token(std::istream& in) {
  std::string tok;
  int c;
  while ((c = in.get()) != EOF) {
    if (c == '#') {
      while ((c = in.get()) != EOF && c != '\n') {
      }
      continue;
    }
    if (std::isspace(c)) {
      if (!tok.empty()) return tok;
      continue;
    }
    tok.push_back(static_cast<char>(c));
  }
  return tok;
}

double parse_double_field(const std::string& field, const std::filesystem::path& path,
                          long line_no, const char* name) {
  char* end = nullptr;
  const double v = std::strtod(field.c_str(), &end);
  if (field.empty() || end != field.c_str() + field.size()) {
    fail(path, "line " + std::to_string(line_no) + ": bad " + name + ": " + field);
  }
  return v;
}

std::vector<std::string> split_line(const std::string& line) {
  std::vector<std::string> fields;
  std::size_t start = 0;
  while (true) {
    const std::size_t pos = line.find(',', start);
    if (pos == std::string::npos) {
      fields.push_back(line.substr(start));
      break;
    }
    fields.push_back(line.substr(start, pos - start));
    start = pos + 1;
  }
  for (auto& f : fields) {
    while (!f.empty() && (f.back() == '\r' || f.back() == ' ')) f.pop_back();
  }
  return fields;
}

}  // namespace

std::string format_double(double v) {
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof(buf), v);
  return std::string(buf, res.ptr);
}

void write_pgm(const std::filesystem::path& path, const MScanFrame& frame) {
  validate_frame(frame);
  const float max_sample = frame.data.maxCoeff();
  const bool wide = max_sample > 255.0f;
  const unsigned maxval = wide ? 65535u : 255u;

  auto out = open_out(path, true);
  out << "P5\n" << frame.width() << " " << frame.depth() << "\n" << maxval << "\n";
  for (Index row = 0; row < frame.depth(); ++row) {
    for (Index k = 0; k < frame.width(); ++k) {
      const long v = std::lround(static_cast<double>(frame.data(row, k)));
      const unsigned u = static_cast<unsigned>(std::clamp<long>(v, 0, maxval));
      if (wide) {
        out.put(static_cast<char>((u >> 8) & 0xff));
        out.put(static_cast<char>(u & 0xff));
      } else {
        out.put(static_cast<char>(u & 0xff));
      }
    }
  }
  if (!out) fail(path, "write failed");
}

MScanFrame read_pgm(const std::filesystem::path& path) {
  auto in = open_in(path, true);
  if (pgm_token(in) != "P5") fail(path, "not a binary PGM (P5) file");
  Index width = 0, depth = 0;
  long maxval = 0;
  try {
    width = std::stol(pgm_token(in));
    depth = std::stol(pgm_token(in));
    maxval = std::stol(pgm_token(in));
  } catch (const std::exception&) {
    fail(path, "malformed PGM header");
  }
  if (width <= 0 || depth <= 0 || maxval <= 0 || maxval > 65535) {
    fail(path, "bad PGM dimensions or maxval");
  }
  const bool wide = maxval > 255;
  MScanFrame frame;
  frame.data.resize(depth, width);
  std::vector<char> rowbuf(static_cast<std::size_t>(width) * (wide ? 2 : 1));
  for (Index row = 0; row < depth; ++row) {
    in.read(rowbuf.data(), static_cast<std::streamsize>(rowbuf.size()));
    if (!in) fail(path, "truncated PGM data");
    for (Index k = 0; k < width; ++k) {
      unsigned v;
      if (wide) {
        const auto hi = static_cast<unsigned char>(rowbuf[2 * k]);
        const auto lo = static_cast<unsigned char>(rowbuf[2 * k + 1]);
        v = (static_cast<unsigned>(hi) << 8) | lo;
      } else {
        v = static_cast<unsigned char>(rowbuf[k]);
      }
      frame.data(row, k) = static_cast<float>(v);
    }
  }
  return frame;
}

void write_mscn(const std::filesystem::path& path, const MScanFrame& frame) {
  validate_frame(frame);
  auto out = open_out(path, true);
  out.write("MSCN", 4);
  put_u32_le(out, static_cast<std::uint32_t>(frame.width()));
  put_u32_le(out, static_cast<std::uint32_t>(frame.depth()));
  put_u32_le(out, 0u);
  // Eigen arrays are column-major, so the payload is one memcpy-shaped run
  // of A-scans.
  for (Index k = 0; k < frame.width(); ++k) {
    for (Index row = 0; row < frame.depth(); ++row) {
      const float v = frame.data(row, k);
      std::uint32_t bits;
      std::memcpy(&bits, &v, 4);
      put_u32_le(out, bits);
    }
  }
  if (!out) fail(path, "write failed");
}

MScanFrame read_mscn(const std::filesystem::path& path) {
  auto in = open_in(path, true);
  char magic[4];
  in.read(magic, 4);
  if (!in || std::memcmp(magic, "MSCN", 4) != 0) fail(path, "bad MSCN magic");
  const std::uint32_t width = get_u32_le(in);
  const std::uint32_t depth = get_u32_le(in);
  get_u32_le(in);  // flags, unused
  if (!in || width == 0 || depth == 0) fail(path, "bad MSCN header");
  MScanFrame frame;
  frame.data.resize(static_cast<Index>(depth), static_cast<Index>(width));
  for (std::uint32_t k = 0; k < width; ++k) {
    for (std::uint32_t row = 0; row < depth; ++row) {
      const std::uint32_t bits = get_u32_le(in);
      if (!in) fail(path, "truncated MSCN data");
      float v;
      std::memcpy(&v, &bits, 4);
      frame.data(static_cast<Index>(row), static_cast<Index>(k)) = v;
    }
  }
  return frame;
}

MScanFrame read_frame(const std::filesystem::path& path) {
  const auto ext = path.extension().string();
  if (ext == ".pgm") return read_pgm(path);
  if (ext == ".mscn") return read_mscn(path);
  fail(path, "unknown frame format (expected .pgm or .mscn)");
}

void write_truth_csv(const std::filesystem::path& path,
                     std::span<const BoundaryPair> truth) {
  auto out = open_out(path, false);
  out << "column,epi_px,dm_px\n";
  for (std::size_t k = 0; k < truth.size(); ++k) {
    out << k << ',' << format_double(truth[k].epi) << ',' << format_double(truth[k].dm)
        << '\n';
  }
  if (!out) fail(path, "write failed");
}

std::vector<BoundaryPair> read_truth_csv(const std::filesystem::path& path) {
  auto in = open_in(path, false);
  std::string line;
  if (!std::getline(in, line) || split_line(line)[0] != "column") {
    fail(path, "missing truth header");
  }
  std::vector<BoundaryPair> truth;
  long line_no = 1;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty() || line == "\r") continue;
    const auto fields = split_line(line);
    if (fields.size() != 3) {
      fail(path, "line " + std::to_string(line_no) + ": expected 3 fields");
    }
    const double col = parse_double_field(fields[0], path, line_no, "column");
    if (col != static_cast<double>(truth.size())) {
      fail(path, "line " + std::to_string(line_no) + ": non-consecutive column");
    }
    truth.push_back(BoundaryPair{parse_double_field(fields[1], path, line_no, "epi_px"),
                                 parse_double_field(fields[2], path, line_no, "dm_px")});
  }
  return truth;
}

void write_observations_csv(const std::filesystem::path& path,
                            std::span<const ObservationPair> observations) {
  auto out = open_out(path, false);
  out << "layer,column,depth_px,status\n";
  for (const auto& [epi, dm] : observations) {
    for (const BoundaryObservation* obs : {&epi, &dm}) {
      out << layer_name(obs->layer) << ',' << obs->column << ','
          << format_double(obs->status == ObsStatus::Valid ? obs->depth_px : 0.0) << ','
          << status_name(obs->status) << '\n';
    }
  }
  if (!out) fail(path, "write failed");
}

std::string trace_header() { return "column,raw_px,filtered_px,gain,status"; }

std::string format_trace_row(const TraceRow& row) {
  std::ostringstream out;
  out << row.column << ',' << format_double(row.raw_px) << ','
      << format_double(row.filtered_px) << ',' << format_double(row.gain) << ','
      << status_name(row.status);
  return out.str();
}

void write_trace_csv(const std::filesystem::path& path, std::span<const TraceRow> rows) {
  auto out = open_out(path, false);
  out << trace_header() << '\n';
  for (const auto& row : rows) out << format_trace_row(row) << '\n';
  if (!out) fail(path, "write failed");
}

std::vector<TraceRow> read_trace_csv(const std::filesystem::path& path) {
  auto in = open_in(path, false);
  std::string line;
  if (!std::getline(in, line)) fail(path, "empty trace file");
  while (!line.empty() && (line.back() == '\r' || line.back() == ' ')) line.pop_back();
  if (line != trace_header()) fail(path, "bad trace header: " + line);
  std::vector<TraceRow> rows;
  long line_no = 1;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty() || line == "\r") continue;
    const auto fields = split_line(line);
    if (fields.size() != 5) {
      fail(path, "line " + std::to_string(line_no) + ": expected 5 fields");
    }
    TraceRow row;
    row.column = static_cast<Index>(parse_double_field(fields[0], path, line_no, "column"));
    row.raw_px = parse_double_field(fields[1], path, line_no, "raw_px");
    row.filtered_px = parse_double_field(fields[2], path, line_no, "filtered_px");
    row.gain = parse_double_field(fields[3], path, line_no, "gain");
    try {
      row.status = status_from_name(fields[4]);
    } catch (const std::invalid_argument& e) {
      fail(path, "line " + std::to_string(line_no) + ": " + e.what());
    }
    rows.push_back(row);
  }
  return rows;
}

std::vector<TraceRow> trace_rows(const BoundaryTrace& trace) {
  const ArrayXd raw = raw_estimates(trace);
  std::vector<TraceRow> rows;
  rows.reserve(trace.raw.size());
  for (std::size_t i = 0; i < trace.raw.size(); ++i) {
    rows.push_back(TraceRow{trace.raw[i].column, raw[static_cast<Index>(i)],
                            trace.filtered[i], trace.gain[i], trace.raw[i].status});
  }
  return rows;
}

}  // namespace octrack
