#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>

#include "fisher/config.hpp"
#include "fisher/field_io.hpp"

using namespace fisher;

TEST_CASE("config parsing, comments and overrides") {
  const auto path = std::filesystem::temp_directory_path() / "fisher_cfg_test.cfg";
  {
    std::ofstream out(path);
    out << "# comment\n"
        << "params.n = 2\n"
        << "params.alpha=0.3\n"
        << "\n"
        << "grid.points = 16 24\n"
        << "grid.lengths = 1.0 2.0\n";
  }
  RunConfig cfg;
  cfg.load_file(path.string());
  CHECK(cfg.get_int("params.n", 0) == 2);
  CHECK(cfg.get_double("params.alpha", 0.0) == doctest::Approx(0.3));
  CHECK(cfg.get_double("params.c", 1.5) == 1.5);  // fallback
  cfg.set_line("params.alpha=0.4");
  CHECK(cfg.get_double("params.alpha", 0.0) == doctest::Approx(0.4));
  const TorusGrid g = cfg.grid();
  CHECK(g.n == 2);
  CHECK(g.pts[1] == 24);
  CHECK(g.len[1] == doctest::Approx(2.0));
  const ParamSet p = cfg.params();
  CHECK(p.n == 2);
  std::filesystem::remove(path);
}

TEST_CASE("config errors") {
  RunConfig cfg;
  CHECK_THROWS_AS(cfg.load_file("/nonexistent/file.cfg"), ConfigError);
  CHECK_THROWS_AS(cfg.set_line("no_equals_sign"), ConfigError);
  cfg.set("params.n", "abc");
  CHECK_THROWS_AS(cfg.get_int("params.n", 0), ConfigError);
  cfg.set("grid.lengths", "1.0 x");
  CHECK_THROWS_AS(cfg.get_doubles("grid.lengths", {}), ConfigError);
}

TEST_CASE("manifest lines are sorted key = value") {
  RunConfig cfg;
  cfg.set("b.key", "2");
  cfg.set("a.key", "1");
  const auto lines = cfg.manifest_lines();
  REQUIRE(lines.size() == 2);
  CHECK(lines[0] == "a.key = 1");
  CHECK(lines[1] == "b.key = 2");
}

TEST_CASE("fmt17 round-trips doubles exactly") {
  for (double x : {1.0 / 3.0, 6.1028927132308072e-05, -0.37591402502186743, 1e-300, 0.0}) {
    const double back = std::strtod(fmt17(x).c_str(), nullptr);
    CHECK(back == x);
  }
}

TEST_CASE("fitted order recovers a power law") {
  std::vector<double> h{0.1, 0.05, 0.025};
  std::vector<double> e;
  for (double x : h) e.push_back(3.0 * x * x);
  CHECK(fitted_order(h, e) == doctest::Approx(2.0).epsilon(1e-12));
}
