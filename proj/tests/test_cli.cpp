#include <cmath>
#include <random>
#include <sstream>

#include "commands.hpp"
#include "config.hpp"
#include "doctest.h"
#include "table.hpp"

using namespace lauricella;
using namespace lauricella::cli;
using nlohmann::json;

namespace {

std::string error_path(const json& doc) {
  RunConfig cfg;
  try {
    apply_json(doc, cfg);
    build_data(cfg);
    validate(cfg);
  } catch (const ConfigError& e) {
    return e.path();
  }
  return "<none>";
}

}  // namespace

TEST_CASE("format_number round-trips doubles") {
  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> mant(-1.0, 1.0);
  std::uniform_int_distribution<int> expo(-300, 300);
  for (int i = 0; i < 1000; ++i) {
    const double v = std::ldexp(mant(rng), expo(rng));
    CHECK(std::stod(format_number(v)) == v);
  }
  CHECK(format_number(1.0) == "1");
  CHECK(format_number(0.1) == "0.1");
}

TEST_CASE("csv and json tables") {
  Table t;
  t.columns = {"x", "note"};
  t.add({0.5, std::string("plain")});
  t.add({std::nan(""), std::string("a,\"b\"")});
  std::ostringstream csv;
  write_csv(csv, t);
  CHECK(csv.str() == "x,note\n0.5,plain\nnan,\"a,\"\"b\"\"\"\n");

  std::ostringstream js;
  write_json(js, t);
  const json parsed = json::parse(js.str());
  CHECK(parsed[0]["x"] == 0.5);
  CHECK(parsed[1]["x"].is_null());
  CHECK(parsed[1]["note"] == "a,\"b\"");

  CHECK_THROWS_AS(t.add({1.0}), std::logic_error);
}

TEST_CASE("parse_list") {
  CHECK(parse_list("1, 2.5,-3e-2", "p") == std::vector<double>{1.0, 2.5, -0.03});
  CHECK(parse_list("0.1", "p") == std::vector<double>{0.1});
  for (const char* bad : {"", "1,,2", "1,x", "1.5abc"}) {
    try {
      parse_list(bad, "--b");
      FAIL("accepted " << bad);
    } catch (const ConfigError& e) {
      CHECK(e.path() == "--b");
    }
  }
}

TEST_CASE("config errors name the offending field") {
  CHECK(error_path({{"bogus", 1}}) == "bogus");
  CHECK(error_path({{"domain", {{"m", "three"}}}}) == "domain.m");
  CHECK(error_path({{"domain", {{"alpha", {0.7}}}}}) == "domain");
  CHECK(error_path({{"quadrature", {{"transform", "spline"}}}}) == "quadrature.transform");
  CHECK(error_path({{"data", {{{"face", 1}, {"family", "gaussian"}, {"widht", 0.5}}}}}) == "data[0].widht");
  CHECK(error_path({{"data", {{{"face", 2}, {"family", "zero"}}}}}) == "data[0].face");
  CHECK(error_path({{"data", {{{"face", 1}, {"family", "zero"}}, {{"face", 1}, {"family", "zero"}}}}}) ==
        "data[1].face");
  CHECK(error_path({{"data", {{{"face", 1}, {"family", "gaussian"}, {"center", {0.0}}}}}}) == "data[0].center");
  CHECK(error_path({{"command", "solve"}, {"points", {{0.5, 0.0}}}}) == "points[0]");
  CHECK(error_path({{"command", "verify"}, {"verify", {{"suite", "nightly"}}}}) == "verify.suite");
  CHECK(error_path({{"verify", {{"tolerances", {{"neumann.flux", "tight"}}}}}}) == "verify.tolerances.neumann.flux");
  CHECK(error_path({{"command", "flux"}, {"flux", {{"face", 2}}}, {"points", {{0.5, 0.0, 0.0}}}}) == "flux.face");
  CHECK(error_path({{"command", "solve"}}) == "points");
  CHECK(error_path({{"command", "solve"}, {"points", {{0.5, 0.0, 0.0}}}}) == "<none>");
}

TEST_CASE("data families build certified data") {
  RunConfig cfg;
  apply_json(json::parse(R"({
    "domain": {"m": 4, "n": 2, "alpha": [0.25, 0.3]},
    "data": [
      {"face": 1, "family": "bound_matching", "amplitude": 2.0, "eps": 0.4},
      {"face": 2, "family": "algebraic", "exponent": 1.2, "center": [0.2, 0.3, -0.1], "fit_eps": 0.5}
    ]})"),
             cfg);
  const auto data = build_data(cfg);
  REQUIRE(data.size() == 2);
  CHECK(data[0].face() == 0);
  CHECK(data[1].face() == 1);
  CHECK(data[0].bound_eps() == 0.4);
  CHECK(data[1].bound_eps() == 0.5);
}

TEST_CASE("tolerance overrides") {
  Tolerances t = Tolerances::defaults();
  apply_tolerances(json{{"energy", 0.1}}, t, "m.json");
  CHECK(t.get("energy") == 0.1);
  try {
    apply_tolerances(json{{"no.such", 0.1}}, t, "m.json");
    FAIL("accepted an unknown tolerance");
  } catch (const ConfigError& e) {
    CHECK(e.path() == "m.json.no.such");
  }
}

TEST_CASE("eval-fa and lemma2 commands") {
  RunConfig cfg;
  cfg.command = "eval-fa";
  cfg.fa.params = {1.0, {1.0}, {2.0}};
  cfg.fa.x = {{0.0}, {-0.5}};
  std::ostringstream out, log;
  CHECK(run_command(cfg, out, log) == 0);
  // 2F1(1, 1; 2; x) = -ln(1 - x)/x
  std::istringstream rows(out.str());
  std::string header, r0, r1;
  std::getline(rows, header);
  std::getline(rows, r0);
  std::getline(rows, r1);
  CHECK(header == "x_1,value,terms,method");
  CHECK(r0.starts_with("0,1,"));
  const double v = std::stod(r1.substr(r1.find(',') + 1));
  CHECK(v == doctest::Approx(std::log(1.5) / 0.5).epsilon(1e-14));

  RunConfig l2;
  l2.command = "lemma2";
  l2.format = Format::Json;
  std::ostringstream o2;
  CHECK(run_command(l2, o2, log) == 0);
  const json j = json::parse(o2.str());
  CHECK(j[0]["closed_form"] == doctest::Approx(1.5707963267948966).epsilon(1e-15));
  CHECK(j[0]["passed"] == "true");
}
