#include "doctest.h"

#include <cstdio>
#include <filesystem>
#include <fstream>

#include "json.hpp"

#include "core/errors.hpp"
#include "core/experiment.hpp"

using namespace qflab;
using namespace qflab::experiment;

namespace {

ExperimentConfig small(Command c) {
  ExperimentConfig cfg;
  cfg.command = c;
  cfg.D_min = -60;
  cfg.D_max = 0;
  cfg.X = {300};
  cfg.Y = {5, 10};
  cfg.v0 = {1, 2};
  cfg.n_max = 300;
  cfg.p_list = {3, 5};
  cfg.beta_max = 2;
  cfg.bound = 10'000;
  return cfg;
}

}  // namespace

TEST_CASE("command names round-trip") {
  for (const auto& name : command_names()) {
    Command c{};
    REQUIRE(parse_command(name, c));
    CHECK(name == command_name(c));
  }
  Command c{};
  CHECK_FALSE(parse_command("nope", c));
}

TEST_CASE("settings and config files") {
  ExperimentConfig cfg;
  apply_setting(cfg, "d-min", "-500");
  apply_setting(cfg, "X", "1000, 2000");
  apply_setting(cfg, "y", "5,10");
  apply_setting(cfg, "converse", "yes");
  CHECK(cfg.D_min == -500);
  CHECK(cfg.X == std::vector<std::int64_t>{1000, 2000});
  CHECK(cfg.Y == std::vector<std::uint64_t>{5, 10});
  CHECK(cfg.converse);
  apply_setting(cfg, "x", "hlogd");
  CHECK(cfg.X_hlogd);
  CHECK_THROWS_AS(apply_setting(cfg, "colour", "blue"), Error);
  CHECK_THROWS_AS(apply_setting(cfg, "d_min", "abc"), Error);
  CHECK_THROWS_AS(apply_setting(cfg, "format", "xml"), Error);

  const auto path = std::filesystem::temp_directory_path() / "qflab_test.conf";
  {
    std::ofstream out(path);
    out << "# sample\ncommand = mass-check\nd_min = -200  # trailing comment\n\nconvention = standard\n";
  }
  ExperimentConfig f;
  load_config_file(f, path.string());
  CHECK(f.command == Command::mass_check);
  CHECK(f.D_min == -200);
  CHECK(f.convention == "standard");
  {
    std::ofstream out(path);
    out << "just words\n";
  }
  CHECK_THROWS_AS(load_config_file(f, path.string()), Error);
  std::filesystem::remove(path);
  CHECK_THROWS_AS(load_config_file(f, "/nonexistent/qflab.conf"), Error);
}

TEST_CASE("validation") {
  ExperimentConfig cfg;
  CHECK_NOTHROW(validate(cfg));
  cfg.D_min = -5;
  cfg.D_max = -4;
  CHECK_THROWS_AS(validate(cfg), Error);  // no discriminants in range
  cfg = ExperimentConfig{};
  cfg.D_max = 5;
  CHECK_THROWS_AS(validate(cfg), Error);
  cfg = ExperimentConfig{};
  cfg.quadrature_tol = 0;
  CHECK_THROWS_AS(validate(cfg), Error);
  cfg = ExperimentConfig{};
  cfg.p_list = {2, 3};
  CHECK_THROWS_AS(validate(cfg), Error);
  cfg = ExperimentConfig{};
  cfg.X_hlogd = true;
  cfg.command = Command::main_term;
  CHECK_THROWS_AS(validate(cfg), Error);
  cfg = ExperimentConfig{};
  cfg.command = Command::theorem1;
  cfg.D_min = -3;
  CHECK_THROWS_AS(run(cfg), Error);
}

TEST_CASE("every command runs and passes at small scale") {
  for (const auto& name : command_names()) {
    Command c{};
    parse_command(name, c);
    auto cfg = small(c);
    if (c == Command::mass_check) cfg.convention = "standard";
    if (c == Command::main_term) cfg.X = {1000, 2000};
    if (c == Command::main_term) cfg.max_relative_error = 0.5;
    CAPTURE(name);
    const auto r = run(cfg);
    CHECK(r.error.empty());
    CHECK_FALSE(r.rows.empty());
    CHECK_FALSE(r.assertions.empty());
    for (const auto& a : r.assertions) {
      CAPTURE(a.name);
      CAPTURE(a.detail);
      CHECK(a.passed);
    }
    for (const auto& row : r.rows) CHECK(row.size() == r.columns.size());
  }
}

TEST_CASE("CSV layout") {
  const auto r = run(small(Command::theorem1));
  const auto csv = to_csv(r);
  CHECK(csv.rfind("D,X,pi,pi_D,h,R_set,R_strict,lhs,rhs,ratio\n", 0) == 0);
  CHECK(csv.back() == '\n');
  std::size_t lines = 0;
  for (char ch : csv) lines += ch == '\n';
  CHECK(lines == r.rows.size() + 1);
  CHECK(format_cell(Cell{0.1}) == "0.10000000000000001");
  CHECK(format_cell(Cell{true}) == "true");
  CHECK(format_cell(Cell{std::int64_t{-7}}) == "-7");
}

TEST_CASE("JSON mirrors the CSV") {
  const auto r = run(small(Command::theorem1));
  const auto j = nlohmann::json::parse(to_json(r));
  CHECK(j["schema_version"] == 1);
  CHECK(j["command"] == "theorem1");
  CHECK(j["rows"].size() == r.rows.size());
  CHECK(j["columns"].size() == r.columns.size());
  CHECK(j["passed"] == true);
  CHECK(j.contains("wall_clock_seconds"));
  CHECK_FALSE(nlohmann::json::parse(to_json(r, false)).contains("wall_clock_seconds"));
  CHECK(j["rows"][0]["D"] == std::get<std::int64_t>(r.rows[0][0]));
  // summary is recomputable from the rows
  double hi = 0.0;
  for (const auto& row : j["rows"]) hi = std::max(hi, row["ratio"].get<double>());
  CHECK(j["summary"]["ratio_max"].get<double>() == hi);
}

TEST_CASE("plots") {
  CHECK(to_svg(run(small(Command::densities))).empty());
  const auto svg = to_svg(run(small(Command::theorem1)));
  CHECK(svg.rfind("<svg", 0) == 0);
  CHECK(svg.find("<circle") != std::string::npos);
  auto cfg = small(Command::main_term);
  cfg.X = {1000, 2000};
  cfg.max_relative_error = 0.5;
  CHECK(to_svg(run(cfg)).find("<path") != std::string::npos);
}

TEST_CASE("output is independent of the thread count") {
  for (auto c : {Command::sieve_bound, Command::dirichlet_check, Command::pair_correlation}) {
    auto a = small(c);
    auto b = a;
    b.threads = 3;
    CHECK(to_csv(run(a)) == to_csv(run(b)));
  }
}

TEST_CASE("written files") {
  const auto dir = std::filesystem::temp_directory_path() / "qflab_test_out";
  std::filesystem::remove_all(dir);
  auto cfg = small(Command::theorem1);
  cfg.format = Format::json;
  cfg.name = "t1";
  const auto files = write_report(run(cfg), dir.string());
  CHECK(std::filesystem::exists(files.csv));
  CHECK(std::filesystem::exists(files.json));
  CHECK(std::filesystem::exists(files.svg));
  CHECK(std::filesystem::path(files.csv).filename() == "t1.csv");
  std::filesystem::remove_all(dir);
}
