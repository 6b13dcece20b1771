#include "core/experiment.hpp"

#include <algorithm>
#include <cctype>
#include <chrono>
#include <cmath>
#include <complex>
#include <fstream>
#include <exception>
#include <functional>
#include <map>
#include <sstream>
#include <thread>

#include "core/archimedean.hpp"
#include "core/correlate.hpp"
#include "core/dirichlet.hpp"
#include "core/errors.hpp"
#include "core/lattice.hpp"
#include "core/localdens.hpp"
#include "core/qforms.hpp"
#include "core/sieve.hpp"

namespace qflab::experiment {

namespace {

struct CommandName {
  Command c;
  const char* name;
};

constexpr CommandName kCommands[] = {
    {Command::densities, "densities"},
    {Command::sieve_bound, "sieve-bound"},
    {Command::theorem1, "theorem1"},
    {Command::mass_check, "mass-check"},
    {Command::dirichlet_check, "dirichlet-check"},
    {Command::least_prime, "least-prime"},
    {Command::pair_correlation, "pair-correlation"},
    {Command::main_term, "main-term"},
};

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r\n");
  if (b == std::string::npos) return {};
  const auto e = s.find_last_not_of(" \t\r\n");
  return s.substr(b, e - b + 1);
}

[[noreturn]] void bad_value(const std::string& key, const std::string& value) {
  fail(Errc::argument, "config: bad value '" + value + "' for key '" + key + "'");
}

std::int64_t parse_int(const std::string& key, const std::string& v) {
  try {
    std::size_t pos = 0;
    const long long x = std::stoll(v, &pos);
    if (pos != v.size()) bad_value(key, v);
    return x;
  } catch (const std::logic_error&) {
    bad_value(key, v);
  }
}

std::uint64_t parse_uint(const std::string& key, const std::string& v) {
  const auto x = parse_int(key, v);
  if (x < 0) bad_value(key, v);
  return static_cast<std::uint64_t>(x);
}

double parse_double(const std::string& key, const std::string& v) {
  try {
    std::size_t pos = 0;
    const double x = std::stod(v, &pos);
    if (pos != v.size() || !std::isfinite(x)) bad_value(key, v);
    return x;
  } catch (const std::logic_error&) {
    bad_value(key, v);
  }
}

bool parse_bool(const std::string& key, const std::string& v) {
  if (v == "1" || v == "true" || v == "yes" || v == "on") return true;
  if (v == "0" || v == "false" || v == "no" || v == "off") return false;
  bad_value(key, v);
}

std::vector<std::string> split_list(const std::string& v) {
  std::vector<std::string> out;
  std::stringstream ss(v);
  std::string item;
  while (std::getline(ss, item, ',')) {
    item = trim(item);
    if (!item.empty()) out.push_back(item);
  }
  return out;
}

template <class T, class F>
std::vector<T> parse_list(const std::string& key, const std::string& v, F parse) {
  std::vector<T> out;
  for (const auto& item : split_list(v)) out.push_back(static_cast<T>(parse(key, item)));
  if (out.empty()) bad_value(key, v);
  return out;
}

template <class T>
std::string join(const std::vector<T>& xs) {
  std::string out;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    if (i) out += ",";
    out += std::to_string(xs[i]);
  }
  return out;
}

std::string fmt_double(double x) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

dirichlet::Convention convention_of(const std::string& s) {
  if (s == "squarefree") return dirichlet::Convention::squarefree_1mod4;
  if (s == "with-minus4") return dirichlet::Convention::with_minus4;
  return dirichlet::Convention::standard;
}

// Results land at their index, so the output does not depend on the thread count.
template <class T>
std::vector<T> parallel_map(std::size_t n, int threads, const std::function<T(std::size_t)>& fn) {
  std::vector<T> out(n);
  const auto workers = static_cast<std::size_t>(std::max(1, threads));
  if (workers == 1 || n < 2) {
    for (std::size_t i = 0; i < n; ++i) out[i] = fn(i);
    return out;
  }
  std::vector<std::thread> pool;
  std::vector<std::exception_ptr> errors(workers);
  for (std::size_t w = 0; w < workers; ++w) {
    pool.emplace_back([&, w] {
      try {
        for (std::size_t i = w; i < n; i += workers) out[i] = fn(i);
      } catch (...) {
        errors[w] = std::current_exception();
      }
    });
  }
  for (auto& t : pool) t.join();
  for (auto& e : errors) {
    if (e) std::rethrow_exception(e);
  }
  return out;
}

using Row = std::vector<Cell>;

Cell I(std::int64_t v) { return Cell{v}; }
Cell U(std::uint64_t v) { return Cell{static_cast<std::int64_t>(v)}; }
Cell F(double v) { return Cell{v}; }
Cell S(std::string v) { return Cell{std::move(v)}; }
Cell B(bool v) { return Cell{v}; }

void add_assert(ExperimentReport& r, std::string name, bool ok, std::string detail) {
  r.assertions.push_back({std::move(name), ok, std::move(detail)});
}

double median(std::vector<double> v) {
  if (v.empty()) return 0.0;
  std::sort(v.begin(), v.end());
  const std::size_t n = v.size();
  return n % 2 ? v[n / 2] : 0.5 * (v[n / 2 - 1] + v[n / 2]);
}

// min, max and mean of a numeric column, appended to the summary
void summarize(ExperimentReport& r, const std::string& column) {
  const auto it = std::find(r.columns.begin(), r.columns.end(), column);
  if (it == r.columns.end() || r.rows.empty()) return;
  const auto idx = static_cast<std::size_t>(it - r.columns.begin());
  double lo = INFINITY, hi = -INFINITY, sum = 0.0;
  std::size_t n = 0;
  for (const auto& row : r.rows) {
    double v = 0.0;
    if (auto d = std::get_if<double>(&row[idx])) {
      v = *d;
    } else if (auto i = std::get_if<std::int64_t>(&row[idx])) {
      v = static_cast<double>(*i);
    } else {
      continue;
    }
    lo = std::min(lo, v);
    hi = std::max(hi, v);
    sum += v;
    ++n;
  }
  if (n == 0) return;
  r.summary.emplace_back(column + "_min", lo);
  r.summary.emplace_back(column + "_max", hi);
  r.summary.emplace_back(column + "_mean", sum / static_cast<double>(n));
}

std::vector<std::int64_t> discriminants(const ExperimentConfig& cfg) {
  return dirichlet::fundamental_discriminants(cfg.D_min, cfg.D_max, convention_of(cfg.convention));
}

// ---------------------------------------------------------------- densities

std::int64_t unit_with_class(std::uint64_t p, int cls) {
  for (std::int64_t u = 1;; ++u) {
    if (arith::kronecker(u, static_cast<std::int64_t>(p)) == cls) return u;
  }
}

void run_densities(const ExperimentConfig& cfg, ExperimentReport& r) {
  r.columns = {"p", "alpha", "beta", "unit_class", "t", "closed", "series", "bruteforce", "match"};
  const auto even_before = localdens::gauss_even_branch_uses();
  std::size_t series_mismatch = 0, brute_mismatch = 0, negative = 0;

  struct Case {
    std::uint64_t p;
    int alpha, beta, unit;
  };
  std::vector<Case> cases;
  for (auto p : cfg.p_list) {
    for (int alpha = 0; alpha <= 2; ++alpha) {
      for (int beta = 0; beta <= cfg.beta_max; ++beta) {
        for (int unit : {1, -1}) cases.push_back({p, alpha, beta, unit});
      }
    }
  }
  auto rows = parallel_map<std::vector<Row>>(cases.size(), cfg.threads, [&](std::size_t i) {
    const auto& c = cases[i];
    std::vector<Row> out;
    const int chi = c.beta % 2 == 0 ? c.unit : 0;
    const Rational closed = localdens::sigma_p_closed(c.p, c.alpha, c.beta, chi);
    const Rational series = localdens::sigma_p_series(c.p, c.alpha, c.beta, c.unit);
    std::int64_t m = unit_with_class(c.p, c.unit);
    for (int b = 0; b < c.beta; ++b) m *= static_cast<std::int64_t>(c.p);
    std::int64_t k = 1;
    for (int a = 0; a < c.alpha; ++a) k *= static_cast<std::int64_t>(c.p);
    for (int t : {c.beta + 2, c.beta + 3}) {
      if (2.0 * t * std::log(static_cast<double>(c.p)) > std::log(1e8) + 1e-12) continue;
      const Rational brute = localdens::sigma_p_bruteforce(c.p, t, m, k);
      out.push_back({U(c.p), I(c.alpha), I(c.beta), I(c.unit), I(t), S(closed.str()), S(series.str()),
                     S(brute.str()), B(closed == brute && closed == series)});
    }
    return out;
  });
  for (auto& group : rows) {
    for (auto& row : group) {
      const auto& closed = std::get<std::string>(row[5]);
      if (closed != std::get<std::string>(row[6])) ++series_mismatch;
      if (closed != std::get<std::string>(row[7])) ++brute_mismatch;
      if (!closed.empty() && closed[0] == '-') ++negative;
      r.rows.push_back(std::move(row));
    }
  }
  add_assert(r, "closed_equals_series", series_mismatch == 0, std::to_string(series_mismatch) + " mismatches");
  add_assert(r, "closed_equals_bruteforce", brute_mismatch == 0,
             std::to_string(brute_mismatch) + " mismatches over " + std::to_string(r.rows.size()) + " rows");
  add_assert(r, "densities_nonnegative", negative == 0, std::to_string(negative) + " negative values");

  // omega table against the sigma ratio
  std::size_t omega_cases = 0, omega_mismatch = 0, printed_diff = 0;
  for (std::uint64_t p : arith::primes_up_to(cfg.omega_p_max)) {
    if (p == 2) continue;
    for (int beta = 0; beta <= std::max(cfg.beta_max, 5); ++beta) {
      for (int chi : {1, -1}) {
        if (beta % 2 == 1 && chi == -1) continue;
        const int c = beta % 2 == 0 ? chi : 0;
        ++omega_cases;
        const Rational ratio = sieve::omega_ratio(p, beta, c);
        if (sieve::omega_table(p, beta, c) != ratio) ++omega_mismatch;
        if (sieve::omega_table_printed(p, beta, c) != ratio) ++printed_diff;
      }
    }
  }
  add_assert(r, "omega_table_equals_sigma_ratio", omega_mismatch == 0,
             std::to_string(omega_mismatch) + " mismatches over " + std::to_string(omega_cases) + " cases");
  add_assert(r, "omega_printed_odd_beta_variant_differs", printed_diff > 0,
             std::to_string(printed_diff) + " cases where 3-1/p-3/p^k+2/p^(k+1) disagrees with the sigma ratio");

  // Gauss sums: odd moduli agree; the downstream pipeline above never touched an even branch
  double worst = 0.0;
  for (std::int64_t m = 1; m <= 99; m += 2) {
    for (std::int64_t h = 1; h <= m; ++h) {
      if (arith::gcd(h, m) != 1) continue;
      const double gap = std::abs(localdens::gauss_sum_closed(h, m) - localdens::gauss_sum_direct(h, m));
      worst = std::max(worst, gap / std::sqrt(static_cast<double>(m)));
    }
  }
  r.summary.emplace_back("gauss_odd_max_scaled_gap", worst);
  add_assert(r, "gauss_odd_closed_form", worst < 1e-8, "max |closed - direct| / sqrt(m) = " + fmt_double(worst));
  const auto even_after = localdens::gauss_even_branch_uses();
  add_assert(r, "gauss_even_branch_unused_downstream", even_before == even_after,
             std::to_string(even_after - even_before) + " even-branch evaluations during the density run");
  const double gap4 = std::abs(localdens::gauss_sum_closed(1, 4) - localdens::gauss_sum_direct(1, 4));
  add_assert(r, "gauss_power_of_four_discrepancy_present", gap4 > 1e-6,
             "G(1,4): closed form 4 vs direct sum 2+2i, |gap| = " + fmt_double(gap4));
}

// ---------------------------------------------------------------- sieve-bound

void run_sieve_bound(const ExperimentConfig& cfg, ExperimentReport& r) {
  r.columns = {"D", "v0", "m", "X", "Y", "sifted", "sifted_separate", "bound", "bound_incex", "bound_squares",
               "A1", "ratio", "degenerate_primes", "G_level", "max_abs_lambda", "identity_gap"};
  r.plot = PlotKind::scatter_ratio;
  r.plot_x = "D";
  r.plot_y = "ratio";
  const auto Ds = discriminants(cfg);
  struct Job {
    std::int64_t D, v0;
  };
  std::vector<Job> jobs;
  for (auto D : Ds) {
    for (auto v0 : cfg.v0) jobs.push_back({D, v0});
  }
  const archimedean::SmoothWeight weight(cfg.sharpness);
  auto groups = parallel_map<std::vector<Row>>(jobs.size(), cfg.threads, [&](std::size_t i) {
    const auto [D, v0] = jobs[i];
    sieve::SieveContext ctx(D, v0);
    std::vector<Row> out;
    std::vector<sieve::SieveTable> tables;
    for (auto Y : cfg.Y) tables.push_back(sieve::selberg_table(ctx, Y));
    for (auto X : cfg.X) {
      const auto sols = lattice::enumerate_solutions(ctx.m(), X, weight);
      for (const auto& t : tables) {
        const auto b = sieve::sieve_upper_bound(t, sols);
        double max_lambda = 0.0;
        for (auto [d, l] : t.lambda) max_lambda = std::max(max_lambda, std::fabs(l));
        double identity = 0.0;
        for (auto [d, mp] : t.mu_plus) identity += mp * t.omega_of(d) / static_cast<double>(d);
        const double gap = identity - 1.0 / to_double(t.G_level);
        std::string deg;
        for (auto p : t.degenerate_primes) deg += (deg.empty() ? "" : " ") + std::to_string(p);
        out.push_back({I(D), I(v0), I(ctx.m()), I(X), U(t.Y), F(b.sifted), F(b.sifted_separate), F(b.bound),
                       F(b.bound_incex), F(b.bound_squares), F(b.A1), F(b.bound > 0 ? b.sifted / b.bound : 0.0),
                       S(deg), F(to_double(t.G_level)), F(max_lambda), F(gap)});
      }
    }
    return out;
  });
  std::size_t violations = 0, incex_bad = 0, squares_bad = 0, lambda_bad = 0, identity_bad = 0, joint_bad = 0;
  for (auto& g : groups) {
    for (auto& row : g) {
      const double sifted = std::get<double>(row[5]), sep = std::get<double>(row[6]);
      const double bound = std::get<double>(row[7]);
      const double tol = 1e-9 * std::max(1.0, std::fabs(bound));
      if (sifted > bound + 1e-9) ++violations;
      if (std::fabs(bound - std::get<double>(row[8])) > tol) ++incex_bad;
      if (std::fabs(bound - std::get<double>(row[9])) > tol) ++squares_bad;
      if (std::get<double>(row[14]) > 1.0 + 1e-12) ++lambda_bad;
      if (std::fabs(std::get<double>(row[15])) > 1e-9) ++identity_bad;
      if (sifted != sep) ++joint_bad;
      r.rows.push_back(std::move(row));
    }
  }
  add_assert(r, "sieve_inequality", violations == 0,
             std::to_string(violations) + " violations over " + std::to_string(r.rows.size()) + " rows");
  add_assert(r, "incex_matches_direct", incex_bad == 0, std::to_string(incex_bad) + " disagreements");
  add_assert(r, "squares_match_direct", squares_bad == 0, std::to_string(squares_bad) + " disagreements");
  add_assert(r, "lambda_bounded_by_one", lambda_bad == 0, std::to_string(lambda_bad) + " tables with |lambda| > 1");
  add_assert(r, "selberg_minimum_identity", identity_bad == 0,
             std::to_string(identity_bad) + " tables where sum mu+(d) omega(d)/d != 1/G(sqrt Y)");
  add_assert(r, "joint_equals_separate_sifting", joint_bad == 0, std::to_string(joint_bad) + " rows differ");
  summarize(r, "ratio");

  double min_ratio = INFINITY;
  for (auto D : Ds) {
    if (D >= -2) continue;
    for (auto v0 : cfg.v0) {
      const auto g = sieve::G_lower_check(D, v0, sieve::level_from_delta(D, cfg.delta));
      min_ratio = std::min(min_ratio, g.ratio);
    }
  }
  if (std::isfinite(min_ratio)) {
    r.summary.emplace_back("G_lower_min_ratio", min_ratio);
    add_assert(r, "G_lower_ratio_positive", min_ratio > 0.0, "min ratio " + fmt_double(min_ratio));
  }
}

// ---------------------------------------------------------------- theorem1

void run_theorem1(const ExperimentConfig& cfg, ExperimentReport& r) {
  r.columns = {"D", "X", "pi", "pi_D", "h", "R_set", "R_strict", "lhs", "rhs", "ratio"};
  r.plot = PlotKind::scatter_ratio;
  r.plot_x = "D";
  r.plot_y = "ratio";
  const auto Ds = discriminants(cfg);
  const std::uint64_t fixed = cfg.X_hlogd ? 0 : static_cast<std::uint64_t>(cfg.X.front());
  auto reps = parallel_map<correlate::TheoremOneReport>(
      Ds.size(), cfg.threads, [&](std::size_t i) { return correlate::theorem_one(Ds[i], fixed); });
  std::size_t bad = 0;
  double worst = 0.0;
  std::int64_t worst_D = 0;
  for (const auto& t : reps) {
    if (t.R_set > t.h || t.pi_D > t.pi || t.R_strict > t.R_set) ++bad;
    if (t.ratio > worst) {
      worst = t.ratio;
      worst_D = t.D;
    }
    r.rows.push_back({I(t.D), U(t.X), U(t.pi), U(t.pi_D), U(t.h), U(t.R_set), U(t.R_strict), F(t.lhs), F(t.rhs),
                      F(t.ratio)});
  }
  summarize(r, "ratio");
  r.summary.emplace_back("C_obs", worst);
  add_assert(r, "counts_within_bounds", bad == 0, std::to_string(bad) + " rows with R > h or pi_D > pi");
  add_assert(r, "max_ratio_below_limit", worst < cfg.max_ratio,
             "C_obs = " + fmt_double(worst) + " at D = " + std::to_string(worst_D));
}

// ---------------------------------------------------------------- mass-check

void run_mass_check(const ExperimentConfig& cfg, ExperimentReport& r) {
  r.columns = {"D", "h", "weighted_orbits", "volume", "ratio"};
  r.plot = PlotKind::scatter_ratio;
  r.plot_x = "D";
  r.plot_y = "ratio";
  const auto Ds = discriminants(cfg);
  const auto rep = correlate::mass_formula_check(Ds);
  for (const auto& row : rep.rows) {
    r.rows.push_back({I(row.D), U(row.h), F(row.weighted_orbits), F(row.volume), F(row.ratio)});
  }
  r.summary.emplace_back("kappa", rep.kappa);
  r.summary.emplace_back("cv", rep.cv);
  r.summary.emplace_back("used", static_cast<double>(rep.used));
  add_assert(r, "ratio_constant", rep.cv < 1e-3, "coefficient of variation " + fmt_double(rep.cv));
  const double drift = std::fabs(rep.kappa - cfg.kappa) / cfg.kappa;
  add_assert(r, "kappa_matches_configured", drift < 1e-6,
             "measured " + fmt_double(rep.kappa) + ", configured " + fmt_double(cfg.kappa));
  for (const auto& row : rep.rows) {
    if (row.D == -3 || row.D == -4) {
      add_assert(r, "special_weight_D" + std::to_string(row.D),
                 std::fabs(row.ratio - rep.kappa) <= 1e-9 * rep.kappa, "ratio " + fmt_double(row.ratio));
    }
  }
}

// ---------------------------------------------------------------- dirichlet-check

struct DirichletRow {
  std::int64_t D = 0;
  std::size_t h = 0;
  int w = 2;
  std::size_t mismatches = 0;
  std::uint64_t max_r_prime = 0;
  double L1_class = 0.0, L1_char = 0.0, rel = 0.0;
};

DirichletRow dirichlet_row(std::int64_t D, std::uint64_t n_max) {
  DirichletRow row;
  row.D = D;
  row.w = dirichlet::unit_count(D);
  const auto table = qforms::enumerate_classes(D);
  row.h = table.h();
  // tally Q(x, y) <= n_max over all classes
  std::vector<std::uint64_t> reps(n_max + 1, 0);
  const double absD = static_cast<double>(-D);
  for (const auto& c : table.classes) {
    const auto& f = c.form;
    const auto ymax = static_cast<std::int64_t>(std::sqrt(4.0 * static_cast<double>(f.A * n_max) / absD)) + 1;
    for (std::int64_t y = -ymax; y <= ymax; ++y) {
      // A x^2 + B x y + C y^2 <= n  <=>  x in the root interval
      const double disc = static_cast<double>(f.B * f.B) * y * y - 4.0 * f.A * (static_cast<double>(f.C) * y * y - static_cast<double>(n_max));
      if (disc < 0) continue;
      const double sq = std::sqrt(disc);
      const auto x_lo = static_cast<std::int64_t>(std::floor((-static_cast<double>(f.B) * y - sq) / (2.0 * f.A))) - 1;
      const auto x_hi = static_cast<std::int64_t>(std::ceil((-static_cast<double>(f.B) * y + sq) / (2.0 * f.A))) + 1;
      for (std::int64_t x = x_lo; x <= x_hi; ++x) {
        const i128 v = f.eval(x, y);
        if (v >= 1 && v <= static_cast<i128>(n_max)) ++reps[static_cast<std::size_t>(v)];
      }
    }
  }
  for (std::uint64_t n = 1; n <= n_max; ++n) {
    if (reps[n] != dirichlet::r_total(n, D)) ++row.mismatches;
    if (arith::is_prime(n)) row.max_r_prime = std::max(row.max_r_prime, reps[n]);
  }
  row.L1_class = dirichlet::L1_from_class_number(D);
  row.L1_char = dirichlet::L1_from_character_sum(D, std::max<std::uint64_t>(static_cast<std::uint64_t>(-D), 100'000));
  row.rel = std::fabs(row.L1_class - row.L1_char) / row.L1_char;
  return row;
}

void run_dirichlet_check(const ExperimentConfig& cfg, ExperimentReport& r) {
  r.columns = {"D", "h", "w", "n_max", "mismatches", "max_r_prime", "L1_class_number", "L1_character_sum",
               "L1_relative_gap"};
  const auto Ds = discriminants(cfg);
  auto rows = parallel_map<DirichletRow>(Ds.size(), cfg.threads,
                                         [&](std::size_t i) { return dirichlet_row(Ds[i], cfg.n_max); });
  std::size_t mismatches = 0, over4 = 0, l1_bad = 0;
  double worst_rel = 0.0;
  for (const auto& d : rows) {
    mismatches += d.mismatches;
    if (d.D < -4 && d.max_r_prime > 4) ++over4;
    if (d.rel >= 1e-5) ++l1_bad;
    worst_rel = std::max(worst_rel, d.rel);
    r.rows.push_back({I(d.D), U(d.h), I(d.w), U(cfg.n_max), U(d.mismatches), U(d.max_r_prime), F(d.L1_class),
                      F(d.L1_char), F(d.rel)});
  }
  r.summary.emplace_back("L1_max_relative_gap", worst_rel);
  add_assert(r, "dirichlet_identity", mismatches == 0,
             std::to_string(mismatches) + " (D, n) mismatches over " + std::to_string(rows.size()) + " discriminants");
  add_assert(r, "prime_multiplicity_at_most_4", over4 == 0, std::to_string(over4) + " discriminants with r(p) > 4");
  add_assert(r, "L1_routes_agree", l1_bad == 0, "max relative gap " + fmt_double(worst_rel));
}

// ---------------------------------------------------------------- least-prime

void run_least_prime(const ExperimentConfig& cfg, ExperimentReport& r) {
  r.columns = {"D", "h", "A", "B", "C", "prime", "x", "y", "ratio_hlogd", "heegner_re", "heegner_im",
               "max_coeff_over_sqrtD"};
  r.plot = PlotKind::scatter_ratio;
  r.plot_x = "D";
  r.plot_y = "ratio_hlogd";
  const auto Ds = discriminants(cfg);
  auto groups = parallel_map<std::vector<Row>>(Ds.size(), cfg.threads, [&](std::size_t i) {
    const std::int64_t D = Ds[i];
    const auto table = qforms::enumerate_classes(D);
    const double hlogd = static_cast<double>(table.h()) * std::log(static_cast<double>(-D));
    std::vector<Row> out;
    for (const auto& c : table.classes) {
      const auto lp = qforms::least_prime_represented(c, cfg.bound);
      const auto z = qforms::heegner_point(c);
      const double coeff = static_cast<double>(std::max({c.A(), c.B() < 0 ? -c.B() : c.B(), c.C()})) /
                           std::sqrt(static_cast<double>(-D));
      if (lp) {
        out.push_back({I(D), U(table.h()), I(c.A()), I(c.B()), I(c.C()), U(lp->prime), I(lp->x), I(lp->y),
                       F(static_cast<double>(lp->prime) / hlogd), F(z.re), F(z.im), F(coeff)});
      } else {
        out.push_back({I(D), U(table.h()), I(c.A()), I(c.B()), I(c.C()), I(0), I(0), I(0), F(0.0), F(z.re),
                       F(z.im), F(coeff)});
      }
    }
    return out;
  });
  std::size_t missing = 0, unverified = 0;
  for (auto& g : groups) {
    for (auto& row : g) {
      const auto p = std::get<std::int64_t>(row[5]);
      if (p == 0) {
        ++missing;
      } else {
        const qforms::Form f{std::get<std::int64_t>(row[2]), std::get<std::int64_t>(row[3]),
                             std::get<std::int64_t>(row[4])};
        if (!arith::is_prime(static_cast<std::uint64_t>(p)) ||
            f.eval(std::get<std::int64_t>(row[6]), std::get<std::int64_t>(row[7])) != p ||
            qforms::representation_count(static_cast<std::uint64_t>(p), f) == 0) {
          ++unverified;
        }
      }
      r.rows.push_back(std::move(row));
    }
  }
  summarize(r, "ratio_hlogd");
  add_assert(r, "every_class_represents_a_prime", missing == 0,
             std::to_string(missing) + " classes without a prime <= " + std::to_string(cfg.bound));
  add_assert(r, "least_primes_verified", unverified == 0, std::to_string(unverified) + " rows failed re-evaluation");
}

// ---------------------------------------------------------------- pair-correlation

void run_pair_correlation(const ExperimentConfig& cfg, ExperimentReport& r) {
  r.columns = {"D", "X", "pairs", "witnesses", "missing", "diagonal_ok", "converse_pairs", "converse_unexpected",
               "N", "N_bound", "sum_pi_Q", "sum_pi_Q_sq", "pi_D_weighted", "R", "cauchy_schwarz", "split_ratio",
               "bookkeeping_gap"};
  r.plot = PlotKind::scatter_ratio;
  r.plot_x = "D";
  r.plot_y = "split_ratio";
  const auto Ds = discriminants(cfg);
  const archimedean::SmoothWeight weight(cfg.sharpness);
  struct Job {
    std::int64_t D;
    std::int64_t X;
  };
  std::vector<Job> jobs;
  for (auto D : Ds) {
    for (auto X : cfg.X) jobs.push_back({D, X});
  }
  auto rows = parallel_map<Row>(jobs.size(), cfg.threads, [&](std::size_t i) {
    const auto [D, X] = jobs[i];
    const auto uX = static_cast<std::uint64_t>(X);
    const auto pe = correlate::prod_equation_check(D, uX, cfg.converse);
    const auto pc = correlate::same_class_pair_count(D, uX, correlate::WeightKind::smooth, weight);
    const auto dc = correlate::double_count_N(D, uX);
    // each window prime contributes its weight once per class in its set: 1 if ambiguous, else 2
    double expected = 0.0;
    if (uX >= 2) {
      for (std::uint64_t p : arith::primes_in_window(uX).primes) {
        const auto c = qforms::canonical_prime_class(p, D);
        if (!c) continue;
        const auto& f = c->form;
        const bool ambiguous = f.B == 0 || f.B == f.A || f.A == f.C;
        expected += (ambiguous ? 1.0 : 2.0) * weight.scaled(static_cast<double>(p), static_cast<double>(uX));
      }
    }
    return Row{I(D), I(X), U(pe.pairs), U(pe.witnesses), U(pe.missing.size()), U(pe.diagonal_ok),
               U(pe.converse_pairs), U(pe.converse_unexpected), U(dc.N), U(dc.bound), F(pc.sum),
               F(pc.sum_squares), F(pc.pi_D), U(pc.R), B(pc.cauchy_schwarz), F(pc.split_ratio),
               F(pc.sum - expected)};
  });
  std::size_t missing = 0, cs_bad = 0, dc_bad = 0, book_bad = 0, unexpected = 0;
  for (auto& row : rows) {
    missing += static_cast<std::size_t>(std::get<std::int64_t>(row[4]));
    unexpected += static_cast<std::size_t>(std::get<std::int64_t>(row[7]));
    if (!std::get<bool>(row[14])) ++cs_bad;
    if (std::get<std::int64_t>(row[8]) > std::get<std::int64_t>(row[9])) ++dc_bad;
    if (std::fabs(std::get<double>(row[16])) > 1e-9 * std::max(1.0, std::get<double>(row[10]))) ++book_bad;
    r.rows.push_back(std::move(row));
  }
  summarize(r, "split_ratio");
  r.summary.emplace_back("converse_unexpected_total", static_cast<double>(unexpected));
  add_assert(r, "forward_witnesses", missing == 0, std::to_string(missing) + " same-class pairs without a witness");
  add_assert(r, "cauchy_schwarz", cs_bad == 0, std::to_string(cs_bad) + " rows violate it");
  add_assert(r, "double_count_bound", dc_bad == 0, std::to_string(dc_bad) + " rows with N above the bound");
  add_assert(r, "class_set_bookkeeping", book_bad == 0, std::to_string(book_bad) + " rows off");
}

// ---------------------------------------------------------------- main-term

void run_main_term(const ExperimentConfig& cfg, ExperimentReport& r) {
  r.columns = {"D", "v0", "m", "X", "d1", "d2", "direct", "sigma_inf", "sigma_product", "main_term",
               "relative_error", "single_sheet_ratio", "points"};
  r.plot = PlotKind::error_vs_X;
  r.plot_x = "X";
  r.plot_y = "relative_error";
  const auto Ds = discriminants(cfg);
  const archimedean::SmoothWeight weight(cfg.sharpness);
  auto Xs = cfg.X;
  std::sort(Xs.begin(), Xs.end());
  struct Job {
    std::int64_t D, v0, X;
  };
  std::vector<Job> jobs;
  for (auto D : Ds) {
    for (auto v0 : cfg.v0) {
      for (auto X : Xs) jobs.push_back({D, v0, X});
    }
  }
  double worst_quad = 0.0;
  for (auto X : Xs) {
    for (auto D : Ds) {
      for (auto v0 : cfg.v0) {
        const double a = static_cast<double>(D * v0 * v0) / (static_cast<double>(X) * static_cast<double>(X));
        worst_quad = std::max(worst_quad, archimedean::I_of(a, weight).error_estimate);
      }
    }
  }
  auto rows = parallel_map<Row>(jobs.size(), cfg.threads, [&](std::size_t i) {
    const auto [D, v0, X] = jobs[i];
    const auto c = correlate::count_A(D * v0 * v0, X, cfg.d1, cfg.d2, weight);
    return Row{I(D), I(v0), I(c.m), I(X), I(cfg.d1), I(cfg.d2), F(c.direct_count), F(c.sigma_inf),
               F(c.sigma_product), F(c.main_term), F(c.relative_error), F(c.single_sheet_ratio), U(c.points)};
  });
  std::map<std::int64_t, std::vector<double>> by_X;
  std::vector<double> sheet;
  for (auto& row : rows) {
    by_X[std::get<std::int64_t>(row[3])].push_back(std::fabs(std::get<double>(row[10])));
    sheet.push_back(std::get<double>(row[11]));
    r.rows.push_back(std::move(row));
  }
  bool monotone = true;
  double prev = INFINITY;
  std::string trail;
  for (const auto& [X, errs] : by_X) {
    const double med = median(errs);
    r.summary.emplace_back("median_abs_error_X" + std::to_string(X), med);
    trail += (trail.empty() ? "" : " ") + std::to_string(X) + ":" + fmt_double(med);
    if (med > prev) monotone = false;
    prev = med;
  }
  summarize(r, "relative_error");
  r.summary.emplace_back("median_single_sheet_ratio", median(sheet));
  r.summary.emplace_back("max_quadrature_error", worst_quad);
  if (!by_X.empty()) {
    const auto& last = by_X.rbegin()->second;
    const double worst = *std::max_element(last.begin(), last.end());
    add_assert(r, "relative_error_within_limit_at_largest_X", worst <= cfg.max_relative_error,
               "max |error| " + fmt_double(worst) + " at X = " + std::to_string(by_X.rbegin()->first));
  }
  add_assert(r, "median_error_non_increasing", monotone, trail);
  add_assert(r, "quadrature_error_within_tolerance", worst_quad <= cfg.quadrature_tol,
             "max estimate " + fmt_double(worst_quad));
}

}  // namespace

const char* command_name(Command c) {
  for (const auto& e : kCommands) {
    if (e.c == c) return e.name;
  }
  return "unknown";
}

bool parse_command(const std::string& s, Command& out) {
  for (const auto& e : kCommands) {
    if (s == e.name) {
      out = e.c;
      return true;
    }
  }
  return false;
}

std::vector<std::string> command_names() {
  std::vector<std::string> out;
  for (const auto& e : kCommands) out.emplace_back(e.name);
  return out;
}

std::vector<std::pair<std::string, std::string>> ExperimentConfig::echo() const {
  return {
      {"command", command_name(command)},
      {"d_min", std::to_string(D_min)},
      {"d_max", std::to_string(D_max)},
      {"convention", convention},
      {"x", X_hlogd ? std::string("hlogd") : join(X)},
      {"y", join(Y)},
      {"delta", fmt_double(delta)},
      {"v0", join(v0)},
      {"d1", std::to_string(d1)},
      {"d2", std::to_string(d2)},
      {"p_list", join(p_list)},
      {"beta_max", std::to_string(beta_max)},
      {"n_max", std::to_string(n_max)},
      {"omega_p_max", std::to_string(omega_p_max)},
      {"bound", std::to_string(bound)},
      {"converse", converse ? "true" : "false"},
      {"quadrature_tol", fmt_double(quadrature_tol)},
      {"sharpness", fmt_double(sharpness)},
      {"kappa", fmt_double(kappa)},
      {"max_ratio", fmt_double(max_ratio)},
      {"max_relative_error", fmt_double(max_relative_error)},
      {"seed", std::to_string(seed)},
      {"threads", std::to_string(threads)},
      {"name", name.empty() ? std::string(command_name(command)) : name},
      {"format", format == Format::csv ? "csv" : "json"},
  };
}

void apply_setting(ExperimentConfig& cfg, const std::string& raw_key, const std::string& raw_value) {
  std::string key = trim(raw_key);
  std::replace(key.begin(), key.end(), '-', '_');
  std::transform(key.begin(), key.end(), key.begin(), [](unsigned char ch) { return std::tolower(ch); });
  const std::string v = trim(raw_value);
  if (key == "command") {
    if (!parse_command(v, cfg.command)) bad_value(key, v);
  } else if (key == "d_min") {
    cfg.D_min = parse_int(key, v);
  } else if (key == "d_max") {
    cfg.D_max = parse_int(key, v);
  } else if (key == "convention") {
    if (v != "squarefree" && v != "with-minus4" && v != "standard") bad_value(key, v);
    cfg.convention = v;
  } else if (key == "x") {
    cfg.X_hlogd = v == "hlogd";
    if (!cfg.X_hlogd) cfg.X = parse_list<std::int64_t>(key, v, parse_int);
  } else if (key == "y") {
    cfg.Y = parse_list<std::uint64_t>(key, v, parse_uint);
  } else if (key == "delta") {
    cfg.delta = parse_double(key, v);
  } else if (key == "v0") {
    cfg.v0 = parse_list<std::int64_t>(key, v, parse_int);
  } else if (key == "d1") {
    cfg.d1 = parse_int(key, v);
  } else if (key == "d2") {
    cfg.d2 = parse_int(key, v);
  } else if (key == "p_list") {
    cfg.p_list = parse_list<std::uint64_t>(key, v, parse_uint);
  } else if (key == "beta_max") {
    cfg.beta_max = static_cast<int>(parse_int(key, v));
  } else if (key == "n_max") {
    cfg.n_max = parse_uint(key, v);
  } else if (key == "omega_p_max") {
    cfg.omega_p_max = parse_uint(key, v);
  } else if (key == "bound") {
    cfg.bound = parse_uint(key, v);
  } else if (key == "converse") {
    cfg.converse = parse_bool(key, v);
  } else if (key == "quadrature_tol") {
    cfg.quadrature_tol = parse_double(key, v);
  } else if (key == "sharpness") {
    cfg.sharpness = parse_double(key, v);
  } else if (key == "kappa") {
    cfg.kappa = parse_double(key, v);
  } else if (key == "max_ratio") {
    cfg.max_ratio = parse_double(key, v);
  } else if (key == "max_relative_error") {
    cfg.max_relative_error = parse_double(key, v);
  } else if (key == "seed") {
    cfg.seed = parse_uint(key, v);
  } else if (key == "threads") {
    cfg.threads = static_cast<int>(parse_int(key, v));
  } else if (key == "output" || key == "output_dir") {
    cfg.output_dir = v;
  } else if (key == "name") {
    cfg.name = v;
  } else if (key == "format") {
    if (v == "csv") {
      cfg.format = Format::csv;
    } else if (v == "json") {
      cfg.format = Format::json;
    } else {
      bad_value(key, v);
    }
  } else {
    fail(Errc::argument, "config: unknown key '" + raw_key + "'");
  }
}

void load_config_file(ExperimentConfig& cfg, const std::string& path) {
  std::ifstream in(path);
  if (!in) fail(Errc::io, "config: cannot open " + path);
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos) {
      fail(Errc::argument, "config: " + path + ":" + std::to_string(lineno) + ": expected key = value");
    }
    apply_setting(cfg, line.substr(0, eq), line.substr(eq + 1));
  }
}

void validate(const ExperimentConfig& cfg) {
  const auto need = [](bool ok, const std::string& msg) { require(ok, Errc::argument, "config: " + msg); };
  need(cfg.D_min < cfg.D_max && cfg.D_max <= 0, "need d_min < d_max <= 0");
  need(cfg.D_min >= -100'000'000, "d_min below -1e8");
  need(cfg.quadrature_tol > 0 && cfg.sharpness > 0 && cfg.kappa > 0, "tolerances, sharpness and kappa must be positive");
  need(cfg.max_ratio > 0 && cfg.max_relative_error > 0, "limits must be positive");
  need(cfg.threads >= 1 && cfg.threads <= 256, "threads must lie in [1, 256]");
  need(cfg.delta > 0 && cfg.delta < 1, "delta must lie in (0, 1)");
  for (auto X : cfg.X) need(X >= 1 && X <= lattice::kMaxScanX, "x values must lie in [1, 1e5]");
  for (auto Y : cfg.Y) need(Y >= 2 && Y <= 100'000, "y values must lie in [2, 1e5]");
  for (auto v : cfg.v0) need(v >= 1 && v <= 1000, "v0 values must lie in [1, 1000]");
  for (auto p : cfg.p_list) need(p > 2 && arith::is_prime(p), "p_list must hold odd primes");
  need(cfg.beta_max >= 0 && cfg.beta_max <= 12, "beta_max must lie in [0, 12]");
  need(cfg.n_max >= 1 && cfg.n_max <= 1'000'000, "n_max must lie in [1, 1e6]");
  need(cfg.d1 >= 1 && cfg.d2 >= 1 && arith::is_squarefree(static_cast<std::uint64_t>(cfg.d1)) &&
           arith::is_squarefree(static_cast<std::uint64_t>(cfg.d2)),
       "d1, d2 must be positive and squarefree");
  need(cfg.bound >= 2 && cfg.bound <= 100'000'000, "bound must lie in [2, 1e8]");
  need(!cfg.X_hlogd || cfg.command == Command::theorem1, "x = hlogd applies to theorem1 only");
  if (cfg.command == Command::pair_correlation) {
    for (auto X : cfg.X) need(X <= 10'000, "pair-correlation needs x <= 1e4");
  }
  if (cfg.command == Command::theorem1 && !cfg.X_hlogd) need(cfg.X.front() >= 2, "theorem1 needs x >= 2");
  if (cfg.command != Command::densities) {
    const auto Ds = discriminants(cfg);
    need(!Ds.empty(), "no fundamental discriminants in (" + std::to_string(cfg.D_min) + ", " +
                          std::to_string(cfg.D_max) + ")");
    if (cfg.command == Command::mass_check) {
      const auto usable = std::count_if(Ds.begin(), Ds.end(), [](std::int64_t D) { return D != -3 && D != -4; });
      need(usable >= 2, "mass-check needs at least two discriminants besides -3 and -4");
      need(cfg.D_min >= -10'001, "mass-check needs |D| <= 1e4");
    }
    if (cfg.command == Command::sieve_bound || cfg.command == Command::main_term) {
      need(cfg.D_min >= -1'000'001, "|D| too large for lattice scans");
    }
  }
}

bool ExperimentReport::passed() const {
  if (!error.empty()) return false;
  return std::all_of(assertions.begin(), assertions.end(), [](const Assertion& a) { return a.passed; });
}

ExperimentReport run(const ExperimentConfig& cfg) {
  validate(cfg);
  ExperimentReport r;
  r.config = cfg;
  const auto t0 = std::chrono::steady_clock::now();
  try {
    switch (cfg.command) {
      case Command::densities: run_densities(cfg, r); break;
      case Command::sieve_bound: run_sieve_bound(cfg, r); break;
      case Command::theorem1: run_theorem1(cfg, r); break;
      case Command::mass_check: run_mass_check(cfg, r); break;
      case Command::dirichlet_check: run_dirichlet_check(cfg, r); break;
      case Command::least_prime: run_least_prime(cfg, r); break;
      case Command::pair_correlation: run_pair_correlation(cfg, r); break;
      case Command::main_term: run_main_term(cfg, r); break;
    }
  } catch (const Error& e) {
    r.error = std::string(errc_name(e.code())) + ": " + e.what();
  } catch (const std::exception& e) {
    r.error = std::string("internal: ") + e.what();
  }
  r.wall_clock_seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  return r;
}

}  // namespace qflab::experiment
