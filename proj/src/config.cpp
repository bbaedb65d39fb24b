#include "ringsplit/config.hpp"

#include <cctype>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <functional>
#include <map>
#include <set>
#include <sstream>

namespace ringsplit {

std::string to_string(SeparabilityTarget t) {
  switch (t) {
    case SeparabilityTarget::s_half: return "S1/2";
    case SeparabilityTarget::s_one: return "S1";
    case SeparabilityTarget::s_three_half: return "S3/2";
    case SeparabilityTarget::s_two: return "S2";
  }
  return "S1";
}

SeparabilityTarget parse_target(const std::string& s) {
  std::string u = s;
  if (!u.empty() && (u[0] == 's' || u[0] == 'S')) u[0] = 'S';
  if (u == "S1/2") return SeparabilityTarget::s_half;
  if (u == "S1") return SeparabilityTarget::s_one;
  if (u == "S3/2") return SeparabilityTarget::s_three_half;
  if (u == "S2") return SeparabilityTarget::s_two;
  throw ConfigError("unknown separability target '" + s +
                    "' (expected S1/2, S1, S3/2 or S2)");
}

double target_multiple(SeparabilityTarget t) {
  switch (t) {
    case SeparabilityTarget::s_half: return 0.5;
    case SeparabilityTarget::s_one: return 1.0;
    case SeparabilityTarget::s_three_half: return 1.5;
    case SeparabilityTarget::s_two: return 2.0;
  }
  return 1.0;
}

PhysicalParams RunConfig::physical() const {
  PhysicalParams p;
  p.m1_amu = m1;
  p.m2_amu = m2;
  p.n1 = n1;
  p.n2 = n2;
  p.a11_m = a11;
  p.a22_m = a22;
  p.a12_m = a12 * a11;  // a12 is configured in units of a11
  p.omega_perp = omega_perp;
  p.lambda = lambda;
  return p;
}

TrapParams RunConfig::trap() const {
  TrapParams t;
  t.r0 = r0;
  t.omega = omega;
  t.sigma = resolved_sigma();
  t.d0 = d0;
  return t;
}

namespace {

std::string trim(const std::string& s) {
  std::size_t b = 0, e = s.size();
  while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
  while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) --e;
  return s.substr(b, e - b);
}

[[noreturn]] void fail(int line, const std::string& msg) {
  throw ConfigError("line " + std::to_string(line) + ": " + msg);
}

double parse_double(const std::string& v, int line, const std::string& key) {
  char* end = nullptr;
  const double x = std::strtod(v.c_str(), &end);
  if (end == v.c_str() || *end != '\0')
    fail(line, "value of '" + key + "' is not a number: '" + v + "'");
  return x;
}

std::size_t parse_size(const std::string& v, int line, const std::string& key) {
  char* end = nullptr;
  const auto x = std::strtoull(v.c_str(), &end, 10);
  if (end == v.c_str() || *end != '\0' || v.find('-') != std::string::npos)
    fail(line, "value of '" + key + "' is not a non-negative integer: '" + v + "'");
  return static_cast<std::size_t>(x);
}

std::vector<double> parse_list(const std::string& v, int line, const std::string& key) {
  std::vector<double> out;
  std::stringstream ss(v);
  std::string item;
  while (std::getline(ss, item, ',')) {
    item = trim(item);
    if (item.empty()) continue;
    out.push_back(parse_double(item, line, key));
  }
  return out;
}

std::string format_double(double x) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

std::string format_list(const std::vector<double>& xs) {
  std::string out;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    if (i) out += ",";
    out += format_double(xs[i]);
  }
  return out;
}

}  // namespace

RunConfig parse_config(const std::string& text) {
  RunConfig cfg;
  std::istringstream in(text);
  std::string raw;
  std::string section;
  std::set<std::string> seen;
  int line = 0;

  using Setter = std::function<void(const std::string&, int)>;
  const std::map<std::string, Setter> setters = {
      {"physical.m1", [&](const std::string& v, int l) { cfg.m1 = parse_double(v, l, "m1"); }},
      {"physical.m2", [&](const std::string& v, int l) { cfg.m2 = parse_double(v, l, "m2"); }},
      {"physical.n1", [&](const std::string& v, int l) { cfg.n1 = parse_double(v, l, "n1"); }},
      {"physical.n2", [&](const std::string& v, int l) { cfg.n2 = parse_double(v, l, "n2"); }},
      {"physical.a11", [&](const std::string& v, int l) { cfg.a11 = parse_double(v, l, "a11"); }},
      {"physical.a22", [&](const std::string& v, int l) { cfg.a22 = parse_double(v, l, "a22"); }},
      {"physical.a12", [&](const std::string& v, int l) { cfg.a12 = parse_double(v, l, "a12"); }},
      {"physical.omega_perp",
       [&](const std::string& v, int l) { cfg.omega_perp = parse_double(v, l, "omega_perp"); }},
      {"physical.lambda",
       [&](const std::string& v, int l) { cfg.lambda = parse_double(v, l, "lambda"); }},
      {"trap.r0", [&](const std::string& v, int l) { cfg.r0 = parse_double(v, l, "r0"); }},
      {"trap.omega", [&](const std::string& v, int l) { cfg.omega = parse_double(v, l, "omega"); }},
      {"trap.sigma", [&](const std::string& v, int l) { cfg.sigma = parse_double(v, l, "sigma"); }},
      {"trap.d0", [&](const std::string& v, int l) { cfg.d0 = parse_double(v, l, "d0"); }},
      {"numerics.n", [&](const std::string& v, int l) { cfg.numerics.n = parse_size(v, l, "n"); }},
      {"numerics.dx", [&](const std::string& v, int l) { cfg.numerics.dx = parse_double(v, l, "dx"); }},
      {"numerics.dt", [&](const std::string& v, int l) { cfg.numerics.dt = parse_double(v, l, "dt"); }},
      {"numerics.n_steps",
       [&](const std::string& v, int l) { cfg.numerics.n_steps = parse_size(v, l, "n_steps"); }},
      {"numerics.sample_every",
       [&](const std::string& v, int l) { cfg.numerics.sample_every = parse_size(v, l, "sample_every"); }},
      {"numerics.seed",
       [&](const std::string& v, int l) { cfg.numerics.seed = parse_size(v, l, "seed"); }},
      {"sweep.r0_values",
       [&](const std::string& v, int l) { cfg.sweep.r0_values = parse_list(v, l, "r0_values"); }},
      {"sweep.a12_values",
       [&](const std::string& v, int l) { cfg.sweep.a12_values = parse_list(v, l, "a12_values"); }},
      {"sweep.target",
       [&](const std::string& v, int l) {
         try {
           cfg.sweep.target = parse_target(v);
         } catch (const ConfigError& e) {
           fail(l, e.what());
         }
       }},
      {"sweep.n", [&](const std::string& v, int l) { cfg.sweep.n = parse_size(v, l, "n"); }},
      {"sweep.sample_every",
       [&](const std::string& v, int l) { cfg.sweep.sample_every = parse_size(v, l, "sample_every"); }},
      {"output.out_dir", [&](const std::string& v, int l) {
         if (v.empty()) fail(l, "out_dir must not be empty");
         cfg.output.out_dir = v;
       }},
      {"output.snapshot_times",
       [&](const std::string& v, int l) { cfg.output.snapshot_times = parse_list(v, l, "snapshot_times"); }},
  };
  static const std::set<std::string> sections = {"physical", "trap", "numerics",
                                                 "sweep", "output"};

  while (std::getline(in, raw)) {
    ++line;
    const auto hash = raw.find('#');
    std::string s = trim(hash == std::string::npos ? raw : raw.substr(0, hash));
    if (s.empty()) continue;
    if (s.front() == '[') {
      if (s.back() != ']') fail(line, "malformed section header: '" + s + "'");
      section = trim(s.substr(1, s.size() - 2));
      if (!sections.count(section)) fail(line, "unknown section '[" + section + "]'");
      continue;
    }
    const auto eq = s.find('=');
    if (eq == std::string::npos) fail(line, "expected 'key = value', got '" + s + "'");
    const std::string key = trim(s.substr(0, eq));
    const std::string value = trim(s.substr(eq + 1));
    if (section.empty()) fail(line, "key '" + key + "' appears before any section");
    const std::string qualified = section + "." + key;
    const auto it = setters.find(qualified);
    if (it == setters.end())
      fail(line, "unknown key '" + key + "' in section [" + section + "]");
    if (!seen.insert(qualified).second)
      fail(line, "duplicate key '" + key + "' in section [" + section + "]");
    it->second(value, line);
  }

  // validation with units
  auto check = [](bool ok, const std::string& msg) {
    if (!ok) throw ConfigError(msg);
  };
  check(cfg.m1 > 0, "m1 must be positive (atomic mass units)");
  check(cfg.m2 > 0, "m2 must be positive (atomic mass units)");
  check(cfg.n1 > 0, "n1 must be positive");
  check(cfg.n2 > 0, "n2 must be positive");
  check(cfg.a11 > 0, "a11 must be positive (meters)");
  check(cfg.a22 > 0, "a22 must be positive (meters)");
  check(cfg.a12 >= 0, "a12 must be non-negative (units of a11)");
  check(cfg.omega_perp > 0, "omega_perp must be positive (rad/s)");
  check(cfg.lambda > 0, "lambda must be positive");
  check(cfg.r0 > 0, "r0 must be positive (a_perp)");
  check(cfg.omega > 0, "omega must be positive (omega_r/omega_perp)");
  check(!cfg.sigma || *cfg.sigma > 0, "sigma must be positive (a_perp)");
  check(cfg.d0 > 0, "d0 must be positive (a_perp)");
  check(is_power_of_two(cfg.numerics.n) && cfg.numerics.n >= 8,
        "n must be a power of two >= 8");
  check(cfg.numerics.dx > 0, "dx must be positive (a_perp)");
  check(cfg.numerics.dt > 0, "dt must be positive (1/omega_perp)");
  check(cfg.numerics.sample_every >= 1, "sample_every must be >= 1");
  check(is_power_of_two(cfg.sweep.n) && cfg.sweep.n >= 8,
        "sweep n must be a power of two >= 8");
  check(cfg.sweep.sample_every >= 1, "sweep sample_every must be >= 1");
  for (double r : cfg.sweep.r0_values) check(r > 0, "sweep r0 values must be positive");
  for (double a : cfg.sweep.a12_values)
    check(a >= 0, "sweep a12 values must be non-negative");
  for (double t : cfg.output.snapshot_times)
    check(t >= 0, "snapshot times must be non-negative");
  return cfg;
}

RunConfig load_config(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ConfigError("cannot open config file: " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  try {
    return parse_config(ss.str());
  } catch (const ConfigError& e) {
    throw ConfigError(path + ": " + e.what());
  }
}

std::string render_config(const RunConfig& c) {
  std::ostringstream o;
  o << "# ringsplit run configuration (resolved; defaults applied)\n";
  o << "# units: lengths in a_perp, times in 1/omega_perp, a12 in units of a11\n";
  o << "[physical]\n";
  o << "m1 = " << format_double(c.m1) << "            # atomic mass units\n";
  o << "m2 = " << format_double(c.m2) << "            # atomic mass units\n";
  o << "n1 = " << format_double(c.n1) << "\n";
  o << "n2 = " << format_double(c.n2) << "\n";
  o << "a11 = " << format_double(c.a11) << "          # m\n";
  o << "a22 = " << format_double(c.a22) << "          # m\n";
  o << "a12 = " << format_double(c.a12) << "          # units of a11\n";
  o << "omega_perp = " << format_double(c.omega_perp) << "   # rad/s\n";
  o << "lambda = " << format_double(c.lambda) << "\n";
  o << "[trap]\n";
  o << "r0 = " << format_double(c.r0) << "            # a_perp\n";
  o << "omega = " << format_double(c.omega) << "      # omega_r/omega_perp\n";
  o << "sigma = " << format_double(c.resolved_sigma()) << "  # a_perp\n";
  o << "d0 = " << format_double(c.d0) << "            # a_perp\n";
  o << "[numerics]\n";
  o << "n = " << c.numerics.n << "\n";
  o << "dx = " << format_double(c.numerics.dx) << "   # a_perp\n";
  o << "dt = " << format_double(c.numerics.dt) << "   # 1/omega_perp\n";
  o << "n_steps = " << c.numerics.n_steps << "\n";
  o << "sample_every = " << c.numerics.sample_every << "\n";
  o << "seed = " << c.numerics.seed << "      # reserved; dynamics are deterministic\n";
  o << "[sweep]\n";
  o << "r0_values = " << format_list(c.sweep.r0_values) << "\n";
  o << "a12_values = " << format_list(c.sweep.a12_values) << "\n";
  o << "target = " << to_string(c.sweep.target) << "\n";
  o << "n = " << c.sweep.n << "\n";
  o << "sample_every = " << c.sweep.sample_every << "\n";
  o << "[output]\n";
  o << "out_dir = " << c.output.out_dir << "\n";
  o << "snapshot_times = " << format_list(c.output.snapshot_times) << "\n";
  try {
    const ModelSpec spec = c.resolve();
    o << "# derived: a_perp = " << format_double(spec.units.a_perp)
      << " m, t_unit = " << format_double(spec.units.t_unit) << " s\n";
    o << "# derived: g11 = " << format_double(spec.g.g11)
      << ", g12 = " << format_double(spec.g.g12)
      << ", g21 = " << format_double(spec.g.g21)
      << ", g22 = " << format_double(spec.g.g22) << "\n";
    o << "# derived: v0 = " << format_double(spec.v0)
      << " (calibrated: dV1/dr(r0) = 0)\n";
  } catch (const std::exception&) {
    // leave derived block out when the combination is not resolvable
  }
  return o.str();
}

}  // namespace ringsplit
