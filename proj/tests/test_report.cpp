/*
 * This code is part of gsteer.
 *
 * This code is licensed under the Apache License, Version 2.0. You may
 * obtain a copy of this license in the LICENSE file in the root directory
 * of this source tree or at http://www.apache.org/licenses/LICENSE-2.0.
 */

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstdio>
#include <filesystem>
#include <fstream>

#include "gsteer/report.hpp"

using namespace gsteer::io;
using nlohmann::json;

namespace {

std::string temp_file(const std::string& name) {
  return (std::filesystem::temp_directory_path() / name).string();
}

}  // namespace

TEST_CASE("grid parsing: lists, log and linear ranges, rejects") {
  const auto list = parse_grid("0.5,1,2");
  REQUIRE(list.size() == 3);
  CHECK(list[1] == doctest::Approx(1.0));

  const auto logs = parse_grid("1e-4:1e-2:log3");
  REQUIRE(logs.size() == 3);
  CHECK(logs[0] == doctest::Approx(1e-4).epsilon(1e-12));
  CHECK(logs[1] == doctest::Approx(1e-3).epsilon(1e-12));
  CHECK(logs[2] == doctest::Approx(1e-2).epsilon(1e-12));

  const auto lins = parse_grid("0:1:lin21");
  REQUIRE(lins.size() == 21);
  CHECK(lins[10] == doctest::Approx(0.5).epsilon(1e-12));

  CHECK_THROWS_AS((void)parse_grid(""), std::invalid_argument);
  CHECK_THROWS_AS((void)parse_grid("1:2"), std::invalid_argument);
  CHECK_THROWS_AS((void)parse_grid("1:2:cos5"), std::invalid_argument);
  CHECK_THROWS_AS((void)parse_grid("-1:1:log5"), std::invalid_argument);
  CHECK_THROWS_AS((void)parse_grid("a,b"), std::invalid_argument);
}

TEST_CASE("config files: key = value with comments") {
  const std::string path = temp_file("gsteer_test_config.cfg");
  {
    std::ofstream out(path);
    out << "# comment line\n"
        << "theta = 1e-2   # trailing comment\n"
        << "\n"
        << "k = 1\n";
  }
  const auto kv = parse_config_file(path);
  CHECK(kv.at("theta") == "1e-2");
  CHECK(kv.at("k") == "1");
  CHECK(kv.size() == 2);
  std::filesystem::remove(path);

  const std::string bad = temp_file("gsteer_test_bad.cfg");
  {
    std::ofstream out(bad);
    out << "theta 1e-2\n";
  }
  CHECK_THROWS_AS((void)parse_config_file(bad), std::invalid_argument);
  std::filesystem::remove(bad);
  CHECK_THROWS_AS((void)parse_config_file("/nonexistent/path.cfg"),
                  std::ios_base::failure);
}

TEST_CASE("unknown keys are rejected with the valid listing") {
  RunConfig config;
  config.scenario = "criterion";
  config.params["theta"] = "1e-2";
  config.params["banana"] = "1";
  try {
    validate_config(config);
    FAIL("expected a rejection");
  } catch (const std::invalid_argument& e) {
    const std::string msg = e.what();
    CHECK(msg.find("banana") != std::string::npos);
    CHECK(msg.find("gamma") != std::string::npos);  // the listing names valid keys
  }
  RunConfig unknown;
  unknown.scenario = "frobnicate";
  CHECK_THROWS_AS(validate_config(unknown), std::invalid_argument);
}

TEST_CASE("defaults are applied and echoed") {
  RunConfig config;
  config.scenario = "criterion";
  config.params["theta"] = "1e-2";
  const auto report = run_scenario(config);
  CHECK(report.at("config").at("gamma") == "1e-4");
  CHECK(report.at("config").at("k") == "1");
  CHECK(report.at("results").at("v_quantum")[2].get<double>() ==
        doctest::Approx(1.0).epsilon(1e-10));
  CHECK(report.at("results").at("v_classical")[2].get<double>() ==
        doctest::Approx(0.5).epsilon(2e-3));
}

TEST_CASE("missing required keys are named") {
  RunConfig config;
  config.scenario = "criterion";  // no theta, no SI keys
  CHECK_THROWS_WITH_AS((void)run_scenario(config),
                       "missing 'theta' (or the SI keys m1,m2,d,tau)",
                       std::invalid_argument);
}

TEST_CASE("SI mode derives the coupling phase") {
  RunConfig config;
  config.scenario = "bmv";
  config.params = {{"G", "6.674e-11"}, {"m1", "3.2848e-16"}, {"m2", "3.2848e-16"},
                   {"d", "1e-6"},      {"L", "1e-6"},        {"tau", "1.0"},
                   {"k", "1"}};
  const auto report = run_scenario(config);
  CHECK(report.at("derived").at("theta").get<double>() ==
        doctest::Approx(0.010000166402983959806).epsilon(1e-14));
}

TEST_CASE("budget scenario reproduces the daily rate") {
  RunConfig config;
  config.scenario = "budget";
  config.params = {{"p_herald", "2e-8"}, {"a_w", "1e4"}};
  const auto report = run_scenario(config);
  CHECK(report.at("results").at("heralds_per_day").get<double>() ==
        doctest::Approx(864.0).epsilon(1e-12));
}

TEST_CASE("json reports re-run bit-for-bit") {
  RunConfig config;
  config.scenario = "criterion";
  config.params = {{"theta", "1e-2"}, {"k", "1"}, {"gamma", "1e-4"}};
  const auto report = run_scenario(config);
  const std::string text = emit_json(report);

  std::string diagnostic;
  CHECK(check_report(text, &diagnostic));

  // Any numeric tampering is caught.
  json tampered = json::parse(text);
  tampered["results"]["visibility_gap"] =
      tampered["results"]["visibility_gap"].get<double>() + 1e-15;
  CHECK(!check_report(tampered.dump(), &diagnostic));
  CHECK(!diagnostic.empty());

  CHECK(!check_report("{ not json", &diagnostic));
}

TEST_CASE("sweep tables are stable across runs") {
  RunConfig config;
  config.scenario = "sweep";
  config.format = "csv";
  config.params = {{"theta", "1e-4:1e-2:log5"}, {"k", "0.5,1,2"}};
  const auto csv1 = emit_csv(run_scenario(config));
  const auto csv2 = emit_csv(run_scenario(config));
  CHECK(csv1 == csv2);
  CHECK(csv1.rfind("theta,k,epsilon,a_w,", 0) == 0);
  // 5 x 3 grid -> header + 15 rows, LF endings only.
  CHECK(std::count(csv1.begin(), csv1.end(), '\n') == 16);
  CHECK(csv1.find('\r') == std::string::npos);
}

TEST_CASE("csv of an empty table is just the header") {
  json report;
  report["results"]["columns"] = {"a", "b"};
  report["results"]["rows"] = json::array();
  CHECK(emit_csv(report) == "a,b\n");
}

TEST_CASE("csv of a scalar report is a two-line table") {
  RunConfig config;
  config.scenario = "resolution";
  config.params = {{"gamma", "1e-4"}};
  const auto csv = emit_csv(run_scenario(config));
  CHECK(std::count(csv.begin(), csv.end(), '\n') == 2);
  CHECK(csv.find("max_weak_value") != std::string::npos);
  CHECK(csv.find("141.421356237") != std::string::npos);
}

TEST_CASE("svg output draws the gap curve") {
  RunConfig config;
  config.scenario = "sweep";
  config.params = {{"theta", "1e-4:1e-2:log5"}, {"k", "1"}};
  const auto svg = emit_svg(run_scenario(config));
  CHECK(svg.rfind("<svg", 0) == 0);
  CHECK(svg.find("polyline") != std::string::npos);
  CHECK(svg.find("visibility_gap") != std::string::npos);

  json no_table;
  no_table["results"]["scalar"] = 1.0;
  CHECK_THROWS_AS((void)emit_svg(no_table), std::invalid_argument);
}

TEST_CASE("write_report honors the output directory variable") {
  RunConfig config;
  config.scenario = "resolution";
  config.params = {{"gamma", "1e-4"}};
  config.format = "json";
  config.output_path = "gsteer_report_env_test.json";
  const auto tmp = std::filesystem::temp_directory_path();
  setenv(kOutputDirEnv, tmp.string().c_str(), 1);
  const auto report = run_scenario(config);
  const std::string written = write_report(report, config);
  unsetenv(kOutputDirEnv);
  CHECK(written == (tmp / config.output_path).string());
  CHECK(std::filesystem::exists(written));
  std::filesystem::remove(written);

  RunConfig bad = config;
  bad.output_path = "/nonexistent_dir_zzz/x.json";
  CHECK_THROWS_AS((void)write_report(report, bad), std::ios_base::failure);
}

TEST_CASE("montecarlo scenario is reproducible and self-describing") {
  RunConfig config;
  config.scenario = "montecarlo";
  config.params = {{"theta", "1e-2"}, {"k", "1"},        {"model", "classical"},
                   {"shots", "50000"}, {"seed", "123"},  {"heralded", "20000"}};
  const auto r1 = run_scenario(config);
  const auto r2 = run_scenario(config);
  CHECK(r1.at("results") == r2.at("results"));
  CHECK(r1.at("config").at("seed") == "123");
  CHECK(r1.at("results").at("heralded_visibility").at("value").get<double>() ==
        doctest::Approx(0.5).epsilon(0.05));
}
