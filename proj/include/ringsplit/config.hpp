// Run configuration: INI-style text with [physical], [trap], [numerics],
// [sweep], [output] sections, '#' comments, strict key validation. Every
// output artifact gets the resolved config echoed as its sidecar.
#pragma once

#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "ringsplit/model.hpp"

namespace ringsplit {

struct ConfigError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

enum class SeparabilityTarget { s_half, s_one, s_three_half, s_two };

std::string to_string(SeparabilityTarget t);
SeparabilityTarget parse_target(const std::string& s);
// Multiple of the species-2 revival time the target peak sits near (1/2..2).
double target_multiple(SeparabilityTarget t);

struct NumericsParams {
  std::size_t n = 512;
  double dx = 0.1841;          // a_perp
  double dt = 0.0915;          // 1/omega_perp
  std::size_t n_steps = 16384;
  std::size_t sample_every = 4;
  unsigned long seed = 0;      // reserved; dynamics are deterministic

  bool operator==(const NumericsParams&) const = default;
};

struct SweepParams {
  std::vector<double> r0_values{10.0, 11.0, 12.0, 13.0, 14.0};
  std::vector<double> a12_values{0.0, 0.1, 0.2, 0.3, 0.4, 0.5, 0.6};
  SeparabilityTarget target = SeparabilityTarget::s_one;
  std::size_t n = 256;         // per-cell grid size
  std::size_t sample_every = 8;

  bool operator==(const SweepParams&) const = default;
};

struct OutputParams {
  std::string out_dir = "out";
  std::vector<double> snapshot_times;  // 1/omega_perp

  bool operator==(const OutputParams&) const = default;
};

struct RunConfig {
  // [physical]: a12 is stored here in units of a11 (as in configs).
  double m1 = 85.0;
  double m2 = 87.0;
  double n1 = 1000.0;
  double n2 = 1000.0;
  double a11 = 2.698e-9;       // m
  double a22 = 2.698e-9;       // m
  double a12 = 0.3;            // units of a11
  double omega_perp = 2.0 * 3.14159265358979323846 * 130.0;  // rad/s
  double lambda = 0.01;

  // [trap]
  double r0 = 12.0;            // a_perp
  double omega = 2.0113;       // omega_r/omega_perp
  std::optional<double> sigma; // a_perp; default 0.8*r0
  double d0 = 0.75;            // a_perp

  NumericsParams numerics;
  SweepParams sweep;
  OutputParams output;

  double resolved_sigma() const { return sigma ? *sigma : 0.8 * r0; }
  // Copy with all optional defaults materialized; what sidecars echo.
  RunConfig resolved() const {
    RunConfig r = *this;
    r.sigma = resolved_sigma();
    return r;
  }
  PhysicalParams physical() const;
  TrapParams trap() const;
  ModelSpec resolve() const { return resolve_model(physical(), trap()); }

  bool operator==(const RunConfig&) const = default;
};

// Parses and validates; unknown sections/keys and unit violations are
// rejected with line-numbered diagnostics. Empty text -> all defaults.
RunConfig parse_config(const std::string& text);
RunConfig load_config(const std::string& path);

// Deterministic echo of the resolved config; parse_config(render_config(c))
// compares equal to c. Derived quantities are included as comments.
std::string render_config(const RunConfig& c);

}  // namespace ringsplit
