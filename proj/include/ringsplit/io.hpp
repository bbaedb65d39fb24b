// On-disk artifact formats: time-series CSV, binary density snapshots,
// sweep/contour CSVs. All writers are deterministic byte-for-byte.
#pragma once

#include <string>
#include <vector>

#include "ringsplit/analysis.hpp"
#include "ringsplit/config.hpp"
#include "ringsplit/grid.hpp"
#include "ringsplit/observables.hpp"

namespace ringsplit {

struct IoError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// CSV with header `t,ac1,ac2,S,norm1,norm2,energy`, 17 significant digits,
// LF line endings, '.' decimal separator.
void write_timeseries(const TimeSeries& ts, const std::string& path);
TimeSeries read_timeseries(const std::string& path);

// Binary layout (little-endian):
//   16-byte magic "RINGSPLITDENS\0\0\0",
//   u64 nx, u64 ny, f64 dx, f64 dy, f64 t,
//   nx*ny f64 density values, row-major with x fastest.
// A human-readable sidecar (resolved config) is written separately.
inline constexpr char kSnapshotMagic[16] = {'R', 'I', 'N', 'G', 'S', 'P', 'L', 'I',
                                            'T', 'D', 'E', 'N', 'S', 0, 0, 0};

struct DensitySnapshot {
  std::size_t nx = 0, ny = 0;
  double dx = 0.0, dy = 0.0;
  double t = 0.0;
  std::vector<double> density;
};

void write_density_snapshot(const Grid2D& grid, const std::vector<double>& density,
                            double t, const std::string& path);
DensitySnapshot read_density_snapshot(const std::string& path);

// Resolved-config sidecar next to an artifact ("<artifact>.cfg").
void write_sidecar(const RunConfig& cfg, const std::string& artifact_path);

// Long format: r0,a12,label,yield,peak_time,sigma,v0,g11,g12,status.
void write_sweep_csv(const SweepResult& result, const std::string& path);

// level,polyline,vertex,r0,a12 rows in deterministic order.
void write_contours_csv(const std::vector<ContourSet>& contours,
                        const std::string& path);

void write_text_file(const std::string& path, const std::string& text);

}  // namespace ringsplit
