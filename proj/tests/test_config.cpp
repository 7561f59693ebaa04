// pdscale - scaled primal-dual solvers for linearly constrained convex programs
// Copyright 2026 pdscale contributors
// Licensed under Apache 2.0
#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cstdio>
#include <fstream>
#include <sstream>
#include <string>

#include "pdscale/config.hpp"
#include "pdscale/errors.hpp"

using namespace pdscale;

namespace {

ConfigMap parse_text(const std::string& text) {
  std::istringstream in(text);
  return ConfigMap::parse(in, "<inline>");
}

}  // namespace

TEST_CASE("parser handles sections, comments, and whitespace") {
  ConfigMap c = parse_text(
      "# leading comment\n"
      "[fipd]\n"
      "alpha = 4.5\n"
      "theta=3\n"
      "; semicolon comments work too\n"
      "\n"
      "[dynamics]\n"
      "adaptive = true\n"
      "samples = 64\n");

  CHECK(c.has("fipd.alpha"));
  CHECK(c.get_double("fipd.alpha", 0.0) == 4.5);
  CHECK(c.get_double("fipd.theta", 0.0) == 3.0);
  CHECK(c.get_int("dynamics.samples", 0) == 64);
  CHECK(c.get_bool("dynamics.adaptive", false));
  CHECK_FALSE(c.has("fipd.delta"));
  // Fallbacks apply to missing keys.
  CHECK(c.get_double("fipd.delta", 0.25) == 0.25);
  CHECK(c.get_string("fipd.schedule", "recurrence") == "recurrence");
  CHECK(c.line_of("fipd.theta") == 4);
  CHECK(c.origin() == "<inline>");

  auto keys = c.section_keys("fipd");
  CHECK(keys.size() == 2);
  CHECK_NOTHROW(c.expect_only("fipd", {"alpha", "theta", "delta"}));
  CHECK_THROWS_AS(c.expect_only("fipd", {"alpha"}), InvalidInputError);
}

TEST_CASE("bool spellings and numeric validation") {
  ConfigMap c = parse_text(
      "[a]\n"
      "t1 = true\nt2 = on\nt3 = 1\nt4 = yes\n"
      "f1 = false\nf2 = off\nf3 = 0\nf4 = no\n"
      "num = 2.5e-3\nneg = -7\nbig = 12345678901\nword = hello\n");
  for (const char* k : {"a.t1", "a.t2", "a.t3", "a.t4"})
    CHECK(c.get_bool(k, false));
  for (const char* k : {"a.f1", "a.f2", "a.f3", "a.f4"})
    CHECK_FALSE(c.get_bool(k, true));
  CHECK(c.get_double("a.num", 0.0) == 2.5e-3);
  CHECK(c.get_int("a.neg", 0) == -7);
  CHECK(c.get_u64("a.big", 0) == 12345678901ULL);

  CHECK_THROWS_AS(c.get_double("a.word", 0.0), InvalidInputError);
  CHECK_THROWS_AS(c.get_bool("a.word", false), InvalidInputError);
  try {
    c.get_int("a.num", 0);  // not an integer
    FAIL("expected type error");
  } catch (const InvalidInputError& e) {
    const std::string msg = e.what();
    CHECK(msg.find("<inline>") != std::string::npos);
    CHECK(msg.find("a.num") != std::string::npos);
  }
}

TEST_CASE("malformed lines and duplicates are reported with line numbers") {
  try {
    parse_text("[s]\nkey_without_value\n");
    FAIL("expected parse error");
  } catch (const InvalidInputError& e) {
    CHECK(std::string(e.what()).find(":2:") != std::string::npos);
  }

  try {
    parse_text("key = 1\n");  // before any section
    FAIL("expected parse error");
  } catch (const InvalidInputError& e) {
    CHECK(std::string(e.what()).find(":1:") != std::string::npos);
  }

  try {
    parse_text("[s]\na = 1\na = 2\n");
    FAIL("expected duplicate error");
  } catch (const InvalidInputError& e) {
    const std::string msg = e.what();
    CHECK(msg.find(":3:") != std::string::npos);
    CHECK(msg.find("duplicate") != std::string::npos);
  }

  try {
    parse_text("[unterminated\n");
    FAIL("expected section error");
  } catch (const InvalidInputError& e) {
    CHECK(std::string(e.what()).find(":1:") != std::string::npos);
  }
}

TEST_CASE("parse_file reads from disk and names the path in errors") {
  const std::string path = "pdscale_test_cfg.ini";
  {
    std::ofstream out(path);
    out << "[alm]\nsigma = 3.5\n";
  }
  ConfigMap c = ConfigMap::parse_file(path);
  CHECK(c.get_double("alm.sigma", 0.0) == 3.5);
  CHECK(c.origin() == path);
  std::remove(path.c_str());

  CHECK_THROWS_AS(ConfigMap::parse_file("missing_config.ini"),
                  InvalidInputError);
}

TEST_CASE("solver builders apply recognized keys and reject unknown ones") {
  ConfigMap c = parse_text(
      "[fipd]\n"
      "alpha = 5\ndelta = 0.25\ntheta = 3\nbeta0 = 0.2\n"
      "schedule = constant\nmetric_scale = 0.5\n"
      "inner_tol = 1e-9\ninner_decay = 1.5\ninner_max_iter = 42\n"
      "max_outer = 77\nstop_res = 1e-6\nexact_step = false\n");
  FipdConfig f = build_fipd_config(c);
  CHECK(f.alpha == 5.0);
  CHECK(f.delta == 0.25);
  CHECK(f.theta == 3.0);
  CHECK(f.beta0 == 0.2);
  CHECK(f.schedule.mode == BetaSchedule::Mode::Constant);
  CHECK(f.metric.lambda_max() == doctest::Approx(0.5));
  CHECK(f.inner.tol0 == 1e-9);
  CHECK(f.inner.decay == 1.5);
  CHECK(f.inner.max_iter == 42);
  CHECK(f.max_outer == 77);
  CHECK(f.stop_res == 1e-6);
  CHECK_FALSE(f.quadratic_exact_step);

  // Defaults survive an empty config.
  FipdConfig d = build_fipd_config(parse_text(""));
  CHECK(d.alpha == 3.0);
  CHECK(d.schedule.mode == BetaSchedule::Mode::Recurrence);

  CHECK_THROWS_AS(
      build_fipd_config(parse_text("[fipd]\nschedule = fancy\n")),
      InvalidInputError);
  CHECK_THROWS_AS(build_fipd_config(parse_text("[fipd]\nalhpa = 3\n")),
                  InvalidInputError);

  ConfigMap ci = parse_text(
      "[ilpd]\nalpha = 6\ndelta = 0.125\nbeta = 2\nmetric_scale = 4\n"
      "strict_metric = false\n");
  IlpdConfig il = build_ilpd_config(ci);
  CHECK(il.alpha == 6.0);
  CHECK(il.beta == 2.0);
  CHECK(il.metric.lambda_max() == doctest::Approx(4.0));
  CHECK_FALSE(il.strict_metric_check);

  AlmConfig alm = build_alm_config(parse_text("[alm]\nsigma = 9\n"));
  CHECK(alm.sigma == 9.0);

  LinAlmConfig lin =
      build_lin_alm_config(parse_text("[lin_alm]\nsigma = 2\np_scale = 3\n"));
  CHECK(lin.sigma == 2.0);
  CHECK(lin.p_metric.lambda_max() == doctest::Approx(3.0));

  DynamicConfig dyn = build_dynamic_config(parse_text(
      "[dynamics]\nalpha = 6\ndelta = 0.25\nmu = 2\nexponent = 1\n"
      "t0 = 0.5\nt_end = 50\ndt = 1e-4\nadaptive = yes\nadaptive_tol = 1e-9\n"
      "samples = 33\n"));
  CHECK(dyn.alpha == 6.0);
  CHECK(dyn.power_law.mu == 2.0);
  CHECK(dyn.power_law.exponent == 1.0);
  CHECK(dyn.t0 == 0.5);
  CHECK(dyn.t_end == 50.0);
  CHECK(dyn.dt == 1e-4);
  CHECK(dyn.adaptive);
  CHECK(dyn.adaptive_tol == 1e-9);
  CHECK(dyn.samples == 33);
}

TEST_CASE("manifest file carries the full invocation") {
  RunManifest m;
  m.command = "solve";
  m.argv = {"pdscale", "solve", "--problem", "x.problem"};
  m.problem = "x.problem";
  m.solvers = {"fipd", "alm"};
  m.config_path = "run.ini";
  m.seed = 42;
  m.out_dir = "out";
  m.scale = "desk";
  m.timestamp = "2026-08-23T00:00:00Z";
  m.version = kVersion;

  const std::string path = "pdscale_test_manifest.txt";
  write_manifest(path, m);
  std::ifstream in(path);
  std::stringstream ss;
  ss << in.rdbuf();
  const std::string text = ss.str();
  CHECK(text.find("command = solve") != std::string::npos);
  CHECK(text.find("argv = pdscale solve --problem x.problem") !=
        std::string::npos);
  CHECK(text.find("problem = x.problem") != std::string::npos);
  CHECK(text.find("seed = 42") != std::string::npos);
  CHECK(text.find("solver = fipd") != std::string::npos);
  CHECK(text.find("solver = alm") != std::string::npos);
  CHECK(text.find(kVersion) != std::string::npos);
  CHECK(text.find("timestamp = ") != std::string::npos);
  std::remove(path.c_str());
}
