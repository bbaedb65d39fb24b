#include "ringsplit/io.hpp"

#include <bit>
#include <cstdio>
#include <cstring>
#include <fstream>
#include <sstream>

namespace ringsplit {

static_assert(std::endian::native == std::endian::little,
              "snapshot writer assumes a little-endian host");

namespace {

std::string format17(double x) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

double parse_field(const std::string& s, const std::string& path, std::size_t line) {
  char* end = nullptr;
  const double v = std::strtod(s.c_str(), &end);
  if (end == s.c_str() || *end != '\0')
    throw IoError(path + ":" + std::to_string(line) + ": bad numeric field '" + s + "'");
  return v;
}

}  // namespace

void write_text_file(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot open for writing: " + path);
  out << text;
  if (!out) throw IoError("write failed: " + path);
}

void write_timeseries(const TimeSeries& ts, const std::string& path) {
  std::ostringstream o;
  o << "t,ac1,ac2,S,norm1,norm2,energy\n";
  for (std::size_t i = 0; i < ts.rows(); ++i) {
    o << format17(ts.t[i]) << ',' << format17(ts.ac1[i]) << ',' << format17(ts.ac2[i])
      << ',' << format17(ts.sep[i]) << ',' << format17(ts.norm1[i]) << ','
      << format17(ts.norm2[i]) << ',' << format17(ts.energy[i]) << '\n';
  }
  write_text_file(path, o.str());
}

TimeSeries read_timeseries(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open: " + path);
  std::string line;
  if (!std::getline(in, line)) throw IoError(path + ": empty file");
  if (!line.empty() && line.back() == '\r') line.pop_back();
  if (line != "t,ac1,ac2,S,norm1,norm2,energy")
    throw IoError(path + ": unexpected header '" + line + "'");
  TimeSeries ts;
  std::size_t lineno = 1;
  while (std::getline(in, line)) {
    ++lineno;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    std::stringstream ss(line);
    std::string field;
    std::vector<double> row;
    while (std::getline(ss, field, ',')) row.push_back(parse_field(field, path, lineno));
    if (row.size() != 7)
      throw IoError(path + ":" + std::to_string(lineno) + ": expected 7 fields, got " +
                    std::to_string(row.size()));
    ts.t.push_back(row[0]);
    ts.ac1.push_back(row[1]);
    ts.ac2.push_back(row[2]);
    ts.sep.push_back(row[3]);
    ts.norm1.push_back(row[4]);
    ts.norm2.push_back(row[5]);
    ts.energy.push_back(row[6]);
  }
  return ts;
}

void write_density_snapshot(const Grid2D& grid, const std::vector<double>& density,
                            double t, const std::string& path) {
  if (density.size() != grid.size())
    throw IoError("density size does not match grid");
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot open for writing: " + path);
  out.write(kSnapshotMagic, sizeof kSnapshotMagic);
  const std::uint64_t nx = grid.nx, ny = grid.ny;
  out.write(reinterpret_cast<const char*>(&nx), 8);
  out.write(reinterpret_cast<const char*>(&ny), 8);
  out.write(reinterpret_cast<const char*>(&grid.dx), 8);
  out.write(reinterpret_cast<const char*>(&grid.dy), 8);
  out.write(reinterpret_cast<const char*>(&t), 8);
  out.write(reinterpret_cast<const char*>(density.data()),
            static_cast<std::streamsize>(8 * density.size()));
  if (!out) throw IoError("write failed: " + path);
}

DensitySnapshot read_density_snapshot(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open: " + path);
  char magic[16];
  in.read(magic, 16);
  if (!in || std::memcmp(magic, kSnapshotMagic, 16) != 0)
    throw IoError(path + ": not a density snapshot (bad magic)");
  DensitySnapshot s;
  std::uint64_t nx = 0, ny = 0;
  in.read(reinterpret_cast<char*>(&nx), 8);
  in.read(reinterpret_cast<char*>(&ny), 8);
  in.read(reinterpret_cast<char*>(&s.dx), 8);
  in.read(reinterpret_cast<char*>(&s.dy), 8);
  in.read(reinterpret_cast<char*>(&s.t), 8);
  if (!in) throw IoError(path + ": truncated header");
  s.nx = nx;
  s.ny = ny;
  s.density.resize(nx * ny);
  in.read(reinterpret_cast<char*>(s.density.data()),
          static_cast<std::streamsize>(8 * s.density.size()));
  if (!in) throw IoError(path + ": truncated payload");
  return s;
}

void write_sidecar(const RunConfig& cfg, const std::string& artifact_path) {
  write_text_file(artifact_path + ".cfg", render_config(cfg.resolved()));
}

void write_sweep_csv(const SweepResult& result, const std::string& path) {
  std::ostringstream o;
  o << "r0,a12,label,yield,peak_time,sigma,v0,g11,g12,status\n";
  const std::size_t na = result.a12_values.size();
  for (std::size_t ir = 0; ir < result.r0_values.size(); ++ir) {
    for (std::size_t ia = 0; ia < na; ++ia) {
      const SweepCell& c = result.cells[ir * na + ia];
      o << format17(c.r0) << ',' << format17(c.a12) << ',' << to_string(result.target)
        << ',' << format17(c.yield) << ',' << format17(c.peak_time) << ','
        << format17(c.sigma) << ',' << format17(c.v0) << ',' << format17(c.g11) << ','
        << format17(c.g12) << ',' << (c.ok ? "ok" : "failed") << '\n';
    }
  }
  write_text_file(path, o.str());
}

void write_contours_csv(const std::vector<ContourSet>& contours,
                        const std::string& path) {
  std::ostringstream o;
  o << "level,polyline,vertex,r0,a12\n";
  for (const auto& cs : contours) {
    for (std::size_t li = 0; li < cs.polylines.size(); ++li) {
      const auto& line = cs.polylines[li];
      for (std::size_t vi = 0; vi < line.size(); ++vi) {
        o << format17(cs.level) << ',' << li << ',' << vi << ','
          << format17(line[vi].r0) << ',' << format17(line[vi].a12) << '\n';
      }
    }
  }
  write_text_file(path, o.str());
}

}  // namespace ringsplit
