// pdscale - scaled primal-dual solvers for linearly constrained convex programs
// Copyright 2026 pdscale contributors
// Licensed under Apache 2.0
#include "pdscale/config.hpp"

#include <algorithm>
#include <cctype>
#include <cerrno>
#include <climits>
#include <cstdlib>
#include <fstream>
#include <istream>
#include <sstream>

#include "pdscale/errors.hpp"

namespace pdscale {

namespace {

std::string trim(const std::string& s) {
  const auto first = s.find_first_not_of(" \t");
  if (first == std::string::npos) return "";
  const auto last = s.find_last_not_of(" \t");
  return s.substr(first, last - first + 1);
}

bool is_comment(const std::string& line) {
  return !line.empty() && (line[0] == '#' || line[0] == ';');
}

}  // namespace

ConfigMap ConfigMap::parse(std::istream& in, const std::string& origin) {
  ConfigMap cfg;
  cfg.origin_ = origin;
  std::string raw, section;
  int lineno = 0;
  while (std::getline(in, raw)) {
    ++lineno;
    if (!raw.empty() && raw.back() == '\r') raw.pop_back();
    const std::string line = trim(raw);
    if (line.empty() || is_comment(line)) continue;
    if (line.front() == '[') {
      require_input(line.back() == ']' && line.size() > 2,
                    origin + ":" + std::to_string(lineno) +
                        ": malformed section header '" + line + "'");
      section = trim(line.substr(1, line.size() - 2));
      require_input(!section.empty(),
                    origin + ":" + std::to_string(lineno) +
                        ": empty section name");
      continue;
    }
    const auto eq = line.find('=');
    require_input(eq != std::string::npos,
                  origin + ":" + std::to_string(lineno) +
                      ": expected 'key = value', got '" + line + "'");
    // Sectionless keys would never be read by any builder, so a missing
    // header is almost certainly a mistake; reject it loudly.
    require_input(!section.empty(),
                  origin + ":" + std::to_string(lineno) +
                      ": key outside any [section]: '" + line + "'");
    const std::string key = trim(line.substr(0, eq));
    const std::string value = trim(line.substr(eq + 1));
    require_input(!key.empty(), origin + ":" + std::to_string(lineno) +
                                    ": empty key");
    require_input(!value.empty(), origin + ":" + std::to_string(lineno) +
                                      ": empty value for key '" + key + "'");
    const std::string full = section + "." + key;
    require_input(cfg.entries_.find(full) == cfg.entries_.end(),
                  origin + ":" + std::to_string(lineno) + ": duplicate key '" +
                      full + "' (first set on line " +
                      std::to_string(cfg.lines_.count(full)
                                         ? cfg.lines_.at(full)
                                         : 0) +
                      ")");
    cfg.entries_[full] = value;
    cfg.lines_[full] = lineno;
  }
  return cfg;
}

ConfigMap ConfigMap::parse_file(const std::string& path) {
  std::ifstream in(path);
  require_input(in.good(), "config: cannot open '" + path + "'");
  return parse(in, path);
}

bool ConfigMap::has(const std::string& key) const {
  return entries_.find(key) != entries_.end();
}

int ConfigMap::line_of(const std::string& key) const {
  const auto it = lines_.find(key);
  return it == lines_.end() ? 0 : it->second;
}

void ConfigMap::fail(const std::string& key, const std::string& what) const {
  throw InvalidInputError(origin_ + ":" + std::to_string(line_of(key)) +
                          ": key '" + key + "': " + what);
}

std::string ConfigMap::get_string(const std::string& key,
                                  const std::string& fallback) const {
  const auto it = entries_.find(key);
  return it == entries_.end() ? fallback : it->second;
}

double ConfigMap::get_double(const std::string& key, double fallback) const {
  const auto it = entries_.find(key);
  if (it == entries_.end()) return fallback;
  errno = 0;
  char* end = nullptr;
  const double v = std::strtod(it->second.c_str(), &end);
  if (errno != 0 || end == it->second.c_str() || *end != '\0')
    fail(key, "cannot parse '" + it->second + "' as a number");
  return v;
}

int ConfigMap::get_int(const std::string& key, int fallback) const {
  const auto it = entries_.find(key);
  if (it == entries_.end()) return fallback;
  errno = 0;
  char* end = nullptr;
  const long v = std::strtol(it->second.c_str(), &end, 10);
  if (errno != 0 || end == it->second.c_str() || *end != '\0' ||
      v < INT_MIN || v > INT_MAX)
    fail(key, "cannot parse '" + it->second + "' as an integer");
  return static_cast<int>(v);
}

std::uint64_t ConfigMap::get_u64(const std::string& key,
                                 std::uint64_t fallback) const {
  const auto it = entries_.find(key);
  if (it == entries_.end()) return fallback;
  const std::string& s = it->second;
  if (!s.empty() && s[0] == '-')
    fail(key, "cannot parse '" + s + "' as an unsigned integer");
  errno = 0;
  char* end = nullptr;
  const unsigned long long v = std::strtoull(s.c_str(), &end, 10);
  if (errno != 0 || end == s.c_str() || *end != '\0')
    fail(key, "cannot parse '" + s + "' as an unsigned integer");
  return static_cast<std::uint64_t>(v);
}

bool ConfigMap::get_bool(const std::string& key, bool fallback) const {
  const auto it = entries_.find(key);
  if (it == entries_.end()) return fallback;
  std::string v = it->second;
  std::transform(v.begin(), v.end(), v.begin(),
                 [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
  if (v == "true" || v == "1" || v == "yes" || v == "on") return true;
  if (v == "false" || v == "0" || v == "no" || v == "off") return false;
  fail(key, "cannot parse '" + it->second + "' as a boolean");
}

std::vector<std::string> ConfigMap::section_keys(
    const std::string& section) const {
  std::vector<std::string> keys;
  const std::string prefix = section + ".";
  for (const auto& [full, value] : entries_) {
    (void)value;
    if (full.rfind(prefix, 0) == 0) keys.push_back(full.substr(prefix.size()));
  }
  return keys;
}

void ConfigMap::expect_only(const std::string& section,
                            const std::vector<std::string>& allowed) const {
  for (const std::string& key : section_keys(section)) {
    if (std::find(allowed.begin(), allowed.end(), key) == allowed.end()) {
      const std::string full = section + "." + key;
      throw InvalidInputError(origin_ + ":" +
                              std::to_string(line_of(full)) +
                              ": unknown key '" + key + "' in [" + section +
                              "]");
    }
  }
}

namespace {

void read_inner(const ConfigMap& c, const std::string& s, InnerSchedule* inner) {
  inner->tol0 = c.get_double(s + ".inner_tol", inner->tol0);
  inner->decay = c.get_double(s + ".inner_decay", inner->decay);
  inner->max_iter = c.get_int(s + ".inner_max_iter", inner->max_iter);
}

}  // namespace

FipdConfig build_fipd_config(const ConfigMap& c) {
  c.expect_only("fipd",
                {"alpha", "delta", "theta", "beta0", "schedule", "metric_scale",
                 "inner_tol", "inner_decay", "inner_max_iter", "max_outer",
                 "stop_res", "exact_step"});
  FipdConfig cfg;
  cfg.alpha = c.get_double("fipd.alpha", cfg.alpha);
  cfg.delta = c.get_double("fipd.delta", cfg.delta);
  cfg.theta = c.get_double("fipd.theta", cfg.theta);
  cfg.beta0 = c.get_double("fipd.beta0", cfg.beta0);
  const std::string sched =
      c.get_string("fipd.schedule", "recurrence");
  if (sched == "recurrence") {
    cfg.schedule.mode = BetaSchedule::Mode::Recurrence;
  } else if (sched == "constant") {
    cfg.schedule.mode = BetaSchedule::Mode::Constant;
  } else {
    throw InvalidInputError(c.origin() + ":" +
                            std::to_string(c.line_of("fipd.schedule")) +
                            ": schedule must be 'recurrence' or 'constant', "
                            "got '" +
                            sched + "'");
  }
  if (c.has("fipd.metric_scale"))
    cfg.metric = Metric::scaled_identity(c.get_double("fipd.metric_scale", 1.0));
  read_inner(c, "fipd", &cfg.inner);
  cfg.max_outer = c.get_int("fipd.max_outer", cfg.max_outer);
  cfg.stop_res = c.get_double("fipd.stop_res", cfg.stop_res);
  cfg.quadratic_exact_step =
      c.get_bool("fipd.exact_step", cfg.quadratic_exact_step);
  return cfg;
}

IlpdConfig build_ilpd_config(const ConfigMap& c) {
  c.expect_only("ilpd",
                {"alpha", "delta", "beta", "metric_scale", "inner_tol",
                 "inner_decay", "inner_max_iter", "max_outer", "stop_res",
                 "strict_metric", "exact_step"});
  IlpdConfig cfg;
  cfg.alpha = c.get_double("ilpd.alpha", cfg.alpha);
  cfg.delta = c.get_double("ilpd.delta", cfg.delta);
  cfg.beta = c.get_double("ilpd.beta", cfg.beta);
  if (c.has("ilpd.metric_scale"))
    cfg.metric = Metric::scaled_identity(c.get_double("ilpd.metric_scale", 1.0));
  read_inner(c, "ilpd", &cfg.inner);
  cfg.max_outer = c.get_int("ilpd.max_outer", cfg.max_outer);
  cfg.stop_res = c.get_double("ilpd.stop_res", cfg.stop_res);
  cfg.strict_metric_check =
      c.get_bool("ilpd.strict_metric", cfg.strict_metric_check);
  cfg.quadratic_exact_step =
      c.get_bool("ilpd.exact_step", cfg.quadratic_exact_step);
  return cfg;
}

AlmConfig build_alm_config(const ConfigMap& c) {
  c.expect_only("alm", {"sigma", "inner_tol", "inner_decay", "inner_max_iter",
                        "max_outer", "stop_res", "exact_step"});
  AlmConfig cfg;
  cfg.sigma = c.get_double("alm.sigma", cfg.sigma);
  read_inner(c, "alm", &cfg.inner);
  cfg.max_outer = c.get_int("alm.max_outer", cfg.max_outer);
  cfg.stop_res = c.get_double("alm.stop_res", cfg.stop_res);
  cfg.quadratic_exact_step =
      c.get_bool("alm.exact_step", cfg.quadratic_exact_step);
  return cfg;
}

LinAlmConfig build_lin_alm_config(const ConfigMap& c) {
  c.expect_only("lin_alm", {"sigma", "p_scale", "inner_tol", "inner_decay",
                            "inner_max_iter", "max_outer", "stop_res",
                            "exact_step"});
  LinAlmConfig cfg;
  cfg.sigma = c.get_double("lin_alm.sigma", cfg.sigma);
  if (c.has("lin_alm.p_scale"))
    cfg.p_metric = Metric::scaled_identity(c.get_double("lin_alm.p_scale", 0.0));
  read_inner(c, "lin_alm", &cfg.inner);
  cfg.max_outer = c.get_int("lin_alm.max_outer", cfg.max_outer);
  cfg.stop_res = c.get_double("lin_alm.stop_res", cfg.stop_res);
  cfg.quadratic_exact_step =
      c.get_bool("lin_alm.exact_step", cfg.quadratic_exact_step);
  return cfg;
}

DynamicConfig build_dynamic_config(const ConfigMap& c) {
  c.expect_only("dynamics",
                {"alpha", "delta", "mu", "exponent", "t0", "t_end", "dt",
                 "adaptive", "adaptive_tol", "samples"});
  DynamicConfig cfg;
  cfg.alpha = c.get_double("dynamics.alpha", cfg.alpha);
  cfg.delta = c.get_double("dynamics.delta", cfg.delta);
  cfg.power_law.mu = c.get_double("dynamics.mu", cfg.power_law.mu);
  cfg.power_law.exponent =
      c.get_double("dynamics.exponent", cfg.power_law.exponent);
  cfg.t0 = c.get_double("dynamics.t0", cfg.t0);
  cfg.t_end = c.get_double("dynamics.t_end", cfg.t_end);
  cfg.dt = c.get_double("dynamics.dt", cfg.dt);
  cfg.adaptive = c.get_bool("dynamics.adaptive", cfg.adaptive);
  cfg.adaptive_tol = c.get_double("dynamics.adaptive_tol", cfg.adaptive_tol);
  cfg.samples = c.get_int("dynamics.samples", cfg.samples);
  return cfg;
}

void write_manifest(const std::string& path, const RunManifest& m) {
  std::ofstream out(path);
  require_input(out.good(), "write_manifest: cannot open '" + path + "'");
  out << "# pdscale run manifest\n";
  out << "version = " << m.version << "\n";
  out << "command = " << m.command << "\n";
  std::ostringstream argv_line;
  for (std::size_t i = 0; i < m.argv.size(); ++i) {
    if (i) argv_line << ' ';
    argv_line << m.argv[i];
  }
  out << "argv = " << argv_line.str() << "\n";
  out << "problem = " << m.problem << "\n";
  for (const std::string& s : m.solvers) out << "solver = " << s << "\n";
  out << "config = " << (m.config_path.empty() ? "-" : m.config_path) << "\n";
  out << "seed = " << m.seed << "\n";
  out << "out = " << m.out_dir << "\n";
  out << "scale = " << m.scale << "\n";
  out << "timestamp = " << m.timestamp << "\n";
  require_input(out.good(), "write_manifest: write failed for '" + path + "'");
}

}  // namespace pdscale
