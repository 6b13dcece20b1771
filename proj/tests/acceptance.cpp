// One line per acceptance criterion; the exit status is the number of failures.
#include <chrono>
#include <cstdio>
#include <string>
#include <vector>

#include "core/experiment.hpp"

using namespace qflab::experiment;

namespace {

struct Timed {
  ExperimentReport report;
  double seconds = 0.0;
};

Timed timed_run(const ExperimentConfig& cfg) {
  const auto t0 = std::chrono::steady_clock::now();
  Timed t{run(cfg), 0.0};
  t.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  return t;
}

const Assertion* find(const ExperimentReport& r, const std::string& name) {
  for (const auto& a : r.assertions) {
    if (a.name == name) return &a;
  }
  return nullptr;
}

double summary(const ExperimentReport& r, const std::string& name) {
  for (const auto& [k, v] : r.summary) {
    if (k == name) return v;
  }
  return 0.0;
}

int failures = 0;

void line(int id, const std::string& title, bool ok, const std::string& detail) {
  std::printf("criterion %2d %s  %s: %s\n", id, ok ? "PASS" : "FAIL", title.c_str(), detail.c_str());
  std::fflush(stdout);
  if (!ok) ++failures;
}

// all named assertions passed, no internal error, and within the time limit
void judge(int id, const std::string& title, const Timed& t, const std::vector<std::string>& names,
           double limit_seconds, std::string extra = {}) {
  bool ok = t.report.error.empty() && t.seconds < limit_seconds;
  std::string detail = t.report.error.empty() ? "" : "error " + t.report.error + "; ";
  for (const auto& n : names) {
    const auto* a = find(t.report, n);
    ok = ok && a && a->passed;
    detail += n + " [" + (a ? a->detail : std::string("missing")) + "]; ";
  }
  char buf[96];
  std::snprintf(buf, sizeof buf, "%.1f s (limit %.0f s)", t.seconds, limit_seconds);
  detail += buf;
  if (!extra.empty()) detail += "; " + extra;
  line(id, title, ok, detail);
}

ExperimentConfig base(Command c, std::int64_t lo, std::int64_t hi, const char* convention = "squarefree") {
  ExperimentConfig cfg;
  cfg.command = c;
  cfg.D_min = lo;
  cfg.D_max = hi;
  cfg.convention = convention;
  return cfg;
}

}  // namespace

int main() {
  std::vector<ExperimentConfig> configs;

  auto dens = base(Command::densities, -100, 0);
  dens.p_list = {3, 5, 7, 11, 13};
  dens.beta_max = 5;
  dens.omega_p_max = 50;
  configs.push_back(dens);
  const auto d = timed_run(dens);
  judge(1, "local-density exactness", d, {"closed_equals_bruteforce"}, 120);
  judge(2, "Gauss-sum exactness", d,
        {"gauss_odd_closed_form", "gauss_power_of_four_discrepancy_present", "gauss_even_branch_unused_downstream"},
        120);

  auto dir = base(Command::dirichlet_check, -500, 0, "with-minus4");
  dir.n_max = 2000;
  configs.push_back(dir);
  judge(3, "Dirichlet identity", timed_run(dir), {"dirichlet_identity", "prime_multiplicity_at_most_4"}, 300);

  auto l1 = base(Command::dirichlet_check, -2000, -4, "standard");
  l1.n_max = 1;
  configs.push_back(l1);
  judge(4, "L(1) cross-validation", timed_run(l1), {"L1_routes_agree"}, 300);

  auto mass = base(Command::mass_check, -10'000, -4, "standard");
  configs.push_back(mass);
  {
    const auto t = timed_run(mass);
    const double used = summary(t.report, "used");
    auto shown = t;
    if (used < 50) shown.report.error = "only " + std::to_string(static_cast<int>(used)) + " discriminants";
    char buf[96];
    std::snprintf(buf, sizeof buf, "%d discriminants, kappa %.12f", static_cast<int>(used), summary(t.report, "kappa"));
    judge(5, "mass-formula ratio constancy", shown, {"ratio_constant"}, 300, buf);
  }

  auto main_term = base(Command::main_term, -100, -3);
  main_term.X = {1000, 2000, 4000, 8000, 10'000};
  main_term.v0 = {1};
  main_term.max_relative_error = 0.05;
  configs.push_back(main_term);
  judge(6, "main-term convergence", timed_run(main_term),
        {"relative_error_within_limit_at_largest_X", "median_error_non_increasing"}, 600);

  auto sv = base(Command::sieve_bound, -50, 0);
  sv.v0 = {1, 2, 3};
  sv.Y = {5, 10, 30};
  sv.X = {1000, 10'000};
  configs.push_back(sv);
  judge(7, "Selberg sieve inequality", timed_run(sv), {"sieve_inequality"}, 600);

  judge(8, "omega consistency", d, {"omega_table_equals_sigma_ratio"}, 120);

  auto pc = base(Command::pair_correlation, -200, 0);
  pc.X = {10, 100, 500, 1000, 2000};
  configs.push_back(pc);
  judge(9, "pair-correlation forward implication", timed_run(pc), {"forward_witnesses"}, 600);

  auto t1 = base(Command::theorem1, -2000, -3);
  t1.X_hlogd = true;
  t1.max_ratio = 10;
  configs.push_back(t1);
  {
    const auto t = timed_run(t1);
    char buf[64];
    std::snprintf(buf, sizeof buf, "C_obs = %.6f", summary(t.report, "C_obs"));
    judge(10, "theorem1 empirical constant", t, {"max_ratio_below_limit"}, 600, buf);
  }

  // every command, run twice, compared byte for byte without timing
  configs.push_back(base(Command::least_prime, -2000, 0));
  std::vector<std::string> seen;
  bool same = true;
  std::string diffs;
  for (const auto& cfg : configs) {
    const auto a = run(cfg);
    const auto b = run(cfg);
    const bool eq = to_csv(a) == to_csv(b) && to_json(a, false) == to_json(b, false) && to_svg(a) == to_svg(b);
    if (!eq) {
      same = false;
      diffs += std::string(command_name(cfg.command)) + " ";
    }
    seen.emplace_back(command_name(cfg.command));
  }
  std::size_t covered = 0;
  for (const auto& name : command_names()) {
    for (const auto& s : seen) {
      if (s == name) {
        ++covered;
        break;
      }
    }
  }
  same = same && covered == command_names().size();
  line(11, "determinism", same,
       std::to_string(configs.size()) + " configs over " + std::to_string(covered) + " commands" +
           (diffs.empty() ? ", identical CSV, JSON and SVG" : ", differing: " + diffs));

  std::printf("%d of 11 criteria failed\n", failures);
  return failures == 0 ? 0 : 1;
}
