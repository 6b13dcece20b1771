#include <cstdio>
#include <cstdlib>
#include <map>
#include <memory>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "qflab/qflab.h"

namespace {

constexpr int kExitPass = 0;
constexpr int kExitAssertions = 1;
constexpr int kExitUsage = 2;
constexpr int kExitInternal = 3;

struct Flag {
  const char* name;  // long option; also the config key
  const char* help;
};

constexpr Flag kFlags[] = {
    {"d-min", "lower end of the discriminant range (exclusive)"},
    {"d-max", "upper end of the discriminant range (exclusive)"},
    {"convention", "squarefree | with-minus4 | standard"},
    {"x", "comma-separated X values, or hlogd (theorem1)"},
    {"y", "comma-separated sieve levels Y"},
    {"delta", "sieve level exponent for the G(sqrt Y) check"},
    {"v0", "comma-separated v0 values, m = D v0^2"},
    {"d1", "squarefree modulus for x"},
    {"d2", "squarefree modulus for y"},
    {"p-list", "odd primes for the density grid"},
    {"beta-max", "largest valuation in the density grid"},
    {"n-max", "largest n in the representation identity"},
    {"omega-p-max", "largest prime in the omega table check"},
    {"bound", "search bound for least primes"},
    {"converse", "also test the converse witness direction (true/false)"},
    {"quadrature-tol", "largest accepted quadrature error estimate"},
    {"sharpness", "shape parameter of the smooth weight"},
    {"kappa", "expected mass-formula constant"},
    {"max-ratio", "limit for the theorem1 ratio"},
    {"max-relative-error", "limit for the main-term relative error"},
    {"seed", "seed recorded with the run"},
    {"threads", "worker threads"},
    {"name", "output file stem"},
    {"format", "csv | json"},
};

void print_report(qflab_report* rep, bool quiet) {
  size_t n = 0;
  qflab_report_assertion_count(rep, &n);
  for (size_t i = 0; i < n; ++i) {
    const char* name = nullptr;
    const char* detail = nullptr;
    int ok = 0;
    qflab_report_assertion(rep, i, &name, &ok, &detail);
    if (!quiet || !ok) std::printf("%s %s: %s\n", ok ? "PASS" : "FAIL", name, detail);
  }
  if (quiet) return;
  qflab_report_summary_count(rep, &n);
  for (size_t i = 0; i < n; ++i) {
    const char* name = nullptr;
    double v = 0;
    qflab_report_summary(rep, i, &name, &v);
    std::printf("  %s = %.10g\n", name, v);
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"qflab: experiments on primes represented by binary quadratic forms"};
  app.require_subcommand(1, 1);
  app.set_version_flag("--version", std::string(qflab_version()));

  std::string config_path, output_dir;
  std::vector<std::string> overrides;
  bool to_stdout = false, quiet = false;
  std::map<std::string, std::string> values;

  for (size_t c = 0; c < qflab_command_count(); ++c) {
    auto* sub = app.add_subcommand(qflab_command_name(c), std::string("run the ") + qflab_command_name(c) + " experiment");
    sub->add_option("-c,--config", config_path, "key = value config file");
    sub->add_option("-o,--output", output_dir, "output directory (overrides QFLAB_OUTPUT_DIR)");
    sub->add_option("--set", overrides, "extra key=value settings");
    sub->add_flag("--stdout", to_stdout, "also print the CSV to stdout");
    sub->add_flag("-q,--quiet", quiet, "print failing assertions only");
    for (const auto& f : kFlags) sub->add_option(std::string("--") + f.name, values[f.name], f.help);
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return e.get_exit_code() == 0 ? rc : kExitUsage;
  }

  qflab_config* raw = nullptr;
  if (qflab_config_create(&raw) != QFLAB_OK) {
    std::fprintf(stderr, "qflab: %s\n", qflab_last_error());
    return kExitInternal;
  }
  std::unique_ptr<qflab_config, decltype(&qflab_config_destroy)> cfg(raw, qflab_config_destroy);

  auto usage = [](const std::string& what) {
    std::fprintf(stderr, "qflab: %s: %s\n", what.c_str(), qflab_last_error());
    return kExitUsage;
  };

  const std::string command = app.get_subcommands().front()->get_name();
  if (!config_path.empty() && qflab_config_load(cfg.get(), config_path.c_str()) != QFLAB_OK) {
    return usage("config file");
  }
  if (const char* env = std::getenv("QFLAB_OUTPUT_DIR"); env && *env) {
    qflab_config_set(cfg.get(), "output", env);
  }
  if (qflab_config_set(cfg.get(), "command", command.c_str()) != QFLAB_OK) return usage("command");
  for (const auto& f : kFlags) {
    const auto& v = values[f.name];
    if (!v.empty() && qflab_config_set(cfg.get(), f.name, v.c_str()) != QFLAB_OK) return usage(std::string("--") + f.name);
  }
  for (const auto& kv : overrides) {
    const auto eq = kv.find('=');
    if (eq == std::string::npos) {
      std::fprintf(stderr, "qflab: --set expects key=value, got '%s'\n", kv.c_str());
      return kExitUsage;
    }
    if (qflab_config_set(cfg.get(), kv.substr(0, eq).c_str(), kv.substr(eq + 1).c_str()) != QFLAB_OK) {
      return usage("--set " + kv);
    }
  }
  if (!output_dir.empty()) qflab_config_set(cfg.get(), "output", output_dir.c_str());

  qflab_report* rep_raw = nullptr;
  const int rc = qflab_run(cfg.get(), &rep_raw);
  if (rc == QFLAB_E_ARGUMENT) return usage("invalid configuration");
  if (rc != QFLAB_OK) {
    std::fprintf(stderr, "qflab: %s: %s\n", qflab_status_name(rc), qflab_last_error());
    return kExitInternal;
  }
  std::unique_ptr<qflab_report, decltype(&qflab_report_destroy)> rep(rep_raw, qflab_report_destroy);

  const char* dir = nullptr;
  qflab_config_get(cfg.get(), "output", &dir);
  const std::string out_dir = dir;
  const char* csv_path = nullptr;
  if (qflab_report_write(rep.get(), out_dir.c_str(), &csv_path) != QFLAB_OK) {
    std::fprintf(stderr, "qflab: %s\n", qflab_last_error());
    return kExitInternal;
  }
  if (to_stdout) {
    const char* text = nullptr;
    qflab_report_csv(rep.get(), &text);
    std::fputs(text, stdout);
  }
  print_report(rep.get(), quiet);
  std::fprintf(stderr, "qflab: wrote %s\n", csv_path);

  if (const char* err = qflab_report_error(rep.get())) {
    std::fprintf(stderr, "qflab: internal error: %s\n", err);
    return kExitInternal;
  }
  int passed = 0;
  qflab_report_passed(rep.get(), &passed);
  return passed ? kExitPass : kExitAssertions;
}
