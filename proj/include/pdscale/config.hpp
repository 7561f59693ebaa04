// pdscale - scaled primal-dual solvers for linearly constrained convex programs
// Copyright 2026 pdscale contributors
// Licensed under Apache 2.0
//
// Flat key = value configuration with [section] headers, plus builders that
// turn a parsed file into solver/simulator configurations. Parse and type
// errors carry the file name and line number. Greek-letter parameters are
// spelled out (alpha, delta, theta, beta0) to keep files diff-friendly.
#ifndef PDSCALE_CONFIG_HPP
#define PDSCALE_CONFIG_HPP

#include <cstdint>
#include <iosfwd>
#include <map>
#include <string>
#include <vector>

#include "pdscale/baselines.hpp"
#include "pdscale/dynamics.hpp"
#include "pdscale/fipd.hpp"
#include "pdscale/ilpd.hpp"

namespace pdscale {

class ConfigMap {
 public:
  // origin labels error messages (file path or "<inline>").
  static ConfigMap parse(std::istream& in, const std::string& origin);
  static ConfigMap parse_file(const std::string& path);

  bool has(const std::string& key) const;  // key = "section.name"

  std::string get_string(const std::string& key,
                         const std::string& fallback) const;
  double get_double(const std::string& key, double fallback) const;
  int get_int(const std::string& key, int fallback) const;
  std::uint64_t get_u64(const std::string& key, std::uint64_t fallback) const;
  bool get_bool(const std::string& key, bool fallback) const;

  // All keys under "section." (used for unknown-key rejection).
  std::vector<std::string> section_keys(const std::string& section) const;
  // Error if the section contains a key outside `allowed` (bare names).
  void expect_only(const std::string& section,
                   const std::vector<std::string>& allowed) const;

  const std::string& origin() const { return origin_; }
  int line_of(const std::string& key) const;

 private:
  [[noreturn]] void fail(const std::string& key,
                         const std::string& what) const;

  std::string origin_;
  std::map<std::string, std::string> entries_;
  std::map<std::string, int> lines_;
};

// Section readers. Each starts from the default-constructed configuration,
// applies every recognized key of its section, and rejects unknown keys.
// Recognized keys (all optional):
//   [fipd]     alpha delta theta beta0 schedule(recurrence|constant)
//              metric_scale inner_tol inner_decay inner_max_iter
//              max_outer stop_res exact_step
//   [ilpd]     alpha delta beta metric_scale inner_tol inner_decay
//              inner_max_iter max_outer stop_res strict_metric exact_step
//   [alm]      sigma inner_tol inner_decay inner_max_iter max_outer stop_res
//              exact_step
//   [lin_alm]  sigma p_scale inner_tol inner_decay inner_max_iter max_outer
//              stop_res exact_step
//   [dynamics] alpha delta mu exponent t0 t_end dt adaptive adaptive_tol
//              samples
FipdConfig build_fipd_config(const ConfigMap& c);
IlpdConfig build_ilpd_config(const ConfigMap& c);
AlmConfig build_alm_config(const ConfigMap& c);
LinAlmConfig build_lin_alm_config(const ConfigMap& c);
DynamicConfig build_dynamic_config(const ConfigMap& c);

// Everything needed to re-run a CLI invocation, written next to its outputs.
struct RunManifest {
  std::string command;
  std::vector<std::string> argv;
  std::string problem;  // input path or generated-family tag
  std::vector<std::string> solvers;
  std::string config_path;  // empty when no file was given
  std::uint64_t seed = 0;
  std::string out_dir;
  std::string scale;
  std::string timestamp;  // informational; CSV outputs stay deterministic
  std::string version;
};

void write_manifest(const std::string& path, const RunManifest& m);

}  // namespace pdscale

#endif  // PDSCALE_CONFIG_HPP
