#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <variant>
#include <vector>

namespace qflab::experiment {

enum class Command {
  densities,
  sieve_bound,
  theorem1,
  mass_check,
  dirichlet_check,
  least_prime,
  pair_correlation,
  main_term,
};

const char* command_name(Command c);
bool parse_command(const std::string& s, Command& out);
std::vector<std::string> command_names();

enum class Format { csv, json };

struct ExperimentConfig {
  Command command = Command::theorem1;
  std::int64_t D_min = -100;  // exclusive
  std::int64_t D_max = 0;     // exclusive
  std::string convention = "squarefree";  // squarefree | with-minus4 | standard
  bool X_hlogd = false;
  std::vector<std::int64_t> X{1000};
  std::vector<std::uint64_t> Y{5, 10, 30};
  double delta = 0.25;
  std::vector<std::int64_t> v0{1, 2, 3};
  std::int64_t d1 = 1;
  std::int64_t d2 = 1;
  std::vector<std::uint64_t> p_list{3, 5, 7, 11, 13};
  int beta_max = 5;
  std::uint64_t n_max = 2000;
  std::uint64_t omega_p_max = 50;
  std::uint64_t bound = 1'000'000;
  bool converse = false;
  double quadrature_tol = 1e-8;
  double sharpness = 1.0;
  double kappa = 0.26179938779914941;  // pi / 12, calibrated by mass-check
  double max_ratio = 10.0;
  double max_relative_error = 0.05;
  std::uint64_t seed = 1;
  int threads = 1;
  std::string output_dir = "qflab-out";
  std::string name;  // file stem; defaults to the command name
  Format format = Format::csv;

  // Ordered key=value echo used in reports.
  std::vector<std::pair<std::string, std::string>> echo() const;
};

// Applies one key=value setting; throws an argument error for unknown keys or bad values.
void apply_setting(ExperimentConfig& cfg, const std::string& key, const std::string& value);

// Reads a flat key=value file ('#' starts a comment).
void load_config_file(ExperimentConfig& cfg, const std::string& path);

void validate(const ExperimentConfig& cfg);

using Cell = std::variant<std::int64_t, double, std::string, bool>;

struct Assertion {
  std::string name;
  bool passed = false;
  std::string detail;
};

enum class PlotKind { none, scatter_ratio, error_vs_X };

struct ExperimentReport {
  ExperimentConfig config;
  std::vector<std::string> columns;
  std::vector<std::vector<Cell>> rows;
  std::vector<std::pair<std::string, double>> summary;
  std::vector<Assertion> assertions;
  PlotKind plot = PlotKind::none;
  std::string plot_x;  // column names for the plot
  std::string plot_y;
  std::string error;   // set when an internal error stopped the run
  double wall_clock_seconds = 0.0;

  bool passed() const;
};

// Runs the configured experiment. Invalid configurations throw; internal
// failures are captured in report.error.
ExperimentReport run(const ExperimentConfig& cfg);

// Rendering (report.cpp).
std::string to_csv(const ExperimentReport& r);
std::string to_json(const ExperimentReport& r, bool include_timing = true);
std::string to_svg(const ExperimentReport& r);  // empty when the report has no plot

struct WrittenFiles {
  std::string csv;
  std::string json;
  std::string svg;  // empty when no plot
};

WrittenFiles write_report(const ExperimentReport& r, const std::string& dir);

std::string format_cell(const Cell& c);

}  // namespace qflab::experiment
