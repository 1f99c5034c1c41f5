#include <doctest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <stdexcept>
#include <string>

#include "excursion/cli_commands.hpp"
#include "excursion/csv.hpp"
#include "excursion/svg.hpp"

using namespace excursion;
namespace fs = std::filesystem;

namespace {

const std::string kData = TEST_DATA_DIR;

std::string slurp(const fs::path& p) {
  std::ifstream f(p, std::ios::binary);
  REQUIRE(f.good());
  std::ostringstream ss;
  ss << f.rdbuf();
  return ss.str();
}

fs::path tmp_file(const std::string& name) {
  return fs::temp_directory_path() / ("excursion_test_" + name);
}

// minimal well-formedness check: tags balance, every attribute value quoted
bool xml_well_formed(const std::string& text) {
  std::vector<std::string> stack;
  std::size_t i = 0;
  if (text.rfind("<?xml", 0) != 0) return false;
  i = text.find("?>");
  if (i == std::string::npos) return false;
  i += 2;
  while (i < text.size()) {
    const std::size_t open = text.find('<', i);
    if (open == std::string::npos) break;
    const std::size_t close = text.find('>', open);
    if (close == std::string::npos) return false;
    std::string tag = text.substr(open + 1, close - open - 1);
    i = close + 1;
    if (tag.empty()) return false;
    if (tag[0] == '/') {
      if (stack.empty() || stack.back() != tag.substr(1)) return false;
      stack.pop_back();
      continue;
    }
    const bool self_closing = tag.back() == '/';
    if (self_closing) tag.pop_back();
    const std::string name = tag.substr(0, tag.find_first_of(" \t\n"));
    if (!self_closing) stack.push_back(name);
  }
  return stack.empty();
}

}  // namespace

TEST_CASE("parse_ugrid") {
  const UGrid g = cli::parse_ugrid("1:5:9");
  REQUIRE(g.size() == 9);
  CHECK(g[0] == 1.0);
  CHECK(g[8] == 5.0);
  CHECK(g[4] == doctest::Approx(3.0));
  CHECK_THROWS_AS(cli::parse_ugrid("1:5"), std::invalid_argument);
  CHECK_THROWS_AS(cli::parse_ugrid("abc:5:9"), std::invalid_argument);
  CHECK_THROWS_AS(cli::parse_ugrid("5:1:9"), std::invalid_argument);
}

TEST_CASE("model_from_config") {
  cli::RunConfig cfg;
  CHECK_THROWS_AS(cli::model_from_config(cfg), std::invalid_argument);
  cfg.rho2 = 0.25;
  CHECK(cli::model_from_config(cfg).c() == doctest::Approx(std::sqrt(2.0)));
  cfg.c = 2.0;
  CHECK_THROWS_AS(cli::model_from_config(cfg), std::invalid_argument);
  cfg.rho2.reset();
  CHECK(cli::model_from_config(cfg).rho2() == doctest::Approx(5.0 / 12.0));

  cli::RunConfig bad;
  bad.rho2 = 1.0 / 12.0;
  CHECK_THROWS_WITH_AS(cli::model_from_config(bad), doctest::Contains("Assumption 1"),
                       std::invalid_argument);
}

TEST_CASE("cmd geometry: cube summary") {
  cli::RunConfig cfg;
  cfg.command = "geometry";
  cfg.geometry_path = kData + "/cube.json";
  cfg.out_path = tmp_file("cube_summary.csv").string();
  CHECK(cli::run(cfg) == 0);
  const csv::Table t = csv::read_file(cfg.out_path);
  REQUIRE(t.header.size() == 4);
  CHECK(t.header[0] == "volume");
  CHECK(t.rows[0][0] == doctest::Approx(1.0));
  CHECK(t.rows[0][1] == doctest::Approx(6.0));
  CHECK(t.rows[0][2] == doctest::Approx(1.5));
  fs::remove(cfg.out_path);
}

TEST_CASE("cmd compare: curves, SVG, and ordering") {
  cli::RunConfig cfg;
  cfg.command = "compare";
  cfg.square_side = 1.0;
  cfg.rho2 = 0.25;
  cfg.u_spec = "0:5:51";
  cfg.out_path = tmp_file("compare.csv").string();
  cfg.svg_path = tmp_file("compare.svg").string();
  cfg.log_scale = true;
  REQUIRE(cli::run(cfg) == 0);

  const csv::Table t = csv::read_file(cfg.out_path);
  REQUIRE(t.header == std::vector<std::string>({"u", "p_ec", "p_record", "p_direct"}));
  REQUIRE(t.rows.size() == 51);
  for (const auto& row : t.rows) {
    CHECK(row[1] <= row[2]);  // p_ec <= p_record everywhere
  }

  const std::string svg = slurp(cfg.svg_path);
  CHECK(xml_well_formed(svg));
  std::size_t polylines = 0;
  for (std::size_t pos = svg.find("<polyline"); pos != std::string::npos;
       pos = svg.find("<polyline", pos + 1)) {
    ++polylines;
  }
  CHECK(polylines == 3);  // one per curve
  fs::remove(cfg.out_path);
  fs::remove(cfg.svg_path);
}

TEST_CASE("cmd compare: invalid model reports an error") {
  cli::RunConfig cfg;
  cfg.command = "compare";
  cfg.square_side = 1.0;
  cfg.rho2 = 1.0 / 12.0;
  CHECK(cli::run(cfg) != 0);
}

TEST_CASE("cmd quadform") {
  cli::RunConfig cfg;
  cfg.command = "quadform";
  cfg.geometry_path = kData + "/quadform_example.json";
  cfg.tol = 1e-8;
  cfg.out_path = tmp_file("quadform.csv").string();
  REQUIRE(cli::run(cfg) == 0);
  const csv::Table t = csv::read_file(cfg.out_path);
  // the example file is the conditioned-Hessian problem at u=1, rho2=1/2
  CHECK(t.rows[0][0] ==
        doctest::Approx(2.0 * 8.0 * std::exp(-0.1) / std::sqrt(10.0)).epsilon(1e-7));
  fs::remove(cfg.out_path);
}

TEST_CASE("cmd simulate: same config and seed give byte-identical CSV") {
  cli::RunConfig cfg;
  cfg.command = "simulate";
  cfg.geometry_path = kData + "/square.json";
  cfg.u_spec = "1:3:5";
  cfg.n = 20000;
  cfg.seed = 7;
  cfg.step = 0.15;

  std::string contents[2];
  for (int i = 0; i < 2; ++i) {
    cfg.out_path = tmp_file("sim_" + std::to_string(i) + ".csv").string();
    REQUIRE(cli::run(cfg) == 0);
    contents[i] = slurp(cfg.out_path);
    fs::remove(cfg.out_path);
  }
  CHECK(contents[0] == contents[1]);

  const csv::Table t = csv::parse(contents[0]);
  CHECK(t.header ==
        std::vector<std::string>({"u", "p_hat", "ci_half_width", "n", "step", "seed"}));
  REQUIRE(t.rows.size() == 5);
}

TEST_CASE("cmd swiss-cheese") {
  cli::RunConfig cfg;
  cfg.command = "swiss-cheese";
  cfg.levels = 3;
  cfg.rho2 = 0.25;
  cfg.u_spec = "0:4:3";
  cfg.out_path = tmp_file("swiss.csv").string();
  REQUIRE(cli::run(cfg) == 0);
  const csv::Table t = csv::read_file(cfg.out_path);
  REQUIRE(t.header == std::vector<std::string>({"u", "bound", "n_disks"}));
  CHECK(t.rows[0][2] == 0.0);  // no disk pays off at u = 0
  fs::remove(cfg.out_path);
}

TEST_CASE("csv: round trip and formatting") {
  csv::Table t;
  t.header = {"a", "b"};
  t.rows = {{1.0, 0.1}, {-3.5e-17, 12345.678901234567}};
  const csv::Table back = csv::parse(csv::to_string(t));
  REQUIRE(back.header == t.header);
  REQUIRE(back.rows.size() == 2);
  for (std::size_t i = 0; i < 2; ++i) {
    for (std::size_t j = 0; j < 2; ++j) {
      CHECK(back.rows[i][j] == t.rows[i][j]);  // exact round trip
    }
  }
  CHECK(csv::format_double(0.1) == "0.1");
  CHECK(csv::format_double(1.0) == "1");
  CHECK_THROWS(csv::parse("a,b\n1,nope\n"));
}
