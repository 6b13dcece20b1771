#include "core/correlate.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "core/dirichlet.hpp"
#include "core/lattice.hpp"
#include "core/localdens.hpp"

namespace qflab::correlate {

namespace {

struct WindowPrime {
  std::uint64_t p = 0;
  int chi = 0;
  std::vector<std::size_t> classes;  // indices into the class table
};

// Split and ramified primes of [X, 2X) with their class sets.
std::vector<WindowPrime> classify_window(const qforms::ClassGroupTable& table, std::uint64_t X) {
  std::vector<WindowPrime> out;
  if (X < 2) return out;
  for (std::uint64_t p : arith::primes_in_window(X).primes) {
    WindowPrime wp;
    wp.p = p;
    wp.chi = arith::kronecker(table.D, static_cast<std::int64_t>(p));
    if (wp.chi == -1) continue;
    for (const auto& c : qforms::prime_to_classes(p, table.D)) {
      const auto idx = table.index_of(c.form);
      require(idx >= 0, Errc::consistency, "classify_window: class missing from table");
      wp.classes.push_back(static_cast<std::size_t>(idx));
    }
    out.push_back(std::move(wp));
  }
  return out;
}

bool intersects(const std::vector<std::size_t>& a, const std::vector<std::size_t>& b) {
  for (auto i : a) {
    if (std::find(b.begin(), b.end(), i) != b.end()) return true;
  }
  return false;
}

}  // namespace

LatticeCountReport count_A(std::int64_t m, std::int64_t X, std::int64_t d1, std::int64_t d2,
                           const archimedean::SmoothWeight& w) {
  require(d1 >= 1 && d2 >= 1, Errc::argument, "count_A: d1, d2 must be positive");
  require(arith::is_squarefree(static_cast<std::uint64_t>(d1)) && arith::is_squarefree(static_cast<std::uint64_t>(d2)),
          Errc::argument, "count_A: d1, d2 must be squarefree");
  const auto fp = dirichlet::fundamental_part(m);
  LatticeCountReport r;
  r.m = m;
  r.X = X;
  r.d1 = d1;
  r.d2 = d2;
  r.D = fp.D;
  r.v0 = fp.v0;
  const auto sols = lattice::enumerate_solutions(m, X, w);
  r.points = sols.points.size();
  r.direct_count = sols.weighted_count([d1, d2](const lattice::Solution& s) {
    return s.x % d1 == 0 && s.y % d2 == 0;
  });
  r.sigma_inf = archimedean::sigma_inf_weighted(static_cast<double>(X), d1, d2, m, w).sigma_inf;
  r.sigma_product = localdens::global_sigma_product(m, d1 * d2, fp.D);
  r.main_term = kSheetFactor * r.sigma_inf * r.sigma_product;
  const double single = r.sigma_inf * r.sigma_product;
  r.relative_error = r.main_term > 0.0 ? r.direct_count / r.main_term - 1.0 : 0.0;
  r.single_sheet_ratio = single > 0.0 ? r.direct_count / single : 0.0;
  return r;
}

PairCountReport same_class_pair_count(std::int64_t D, std::uint64_t X, WeightKind kind,
                                      const archimedean::SmoothWeight& w) {
  const auto table = qforms::enumerate_classes(D);
  PairCountReport r;
  r.D = D;
  r.X = X;
  r.kind = kind;
  r.per_class.assign(table.h(), 0.0);
  for (const auto& wp : classify_window(table, X)) {
    const double weight = kind == WeightKind::sharp
                              ? 1.0
                              : w.scaled(static_cast<double>(wp.p), static_cast<double>(X));
    if (wp.chi == 1) r.pi_D += weight;
    for (auto idx : wp.classes) r.per_class[idx] += weight;
  }
  for (double v : r.per_class) {
    r.sum += v;
    r.sum_squares += v * v;
    if (v > 0.0) ++r.R;
  }
  const double lhs = r.sum * r.sum;
  const double rhs = static_cast<double>(r.R) * r.sum_squares;
  r.cauchy_schwarz = lhs <= rhs * (1.0 + 1e-12) + 1e-12;
  r.split_ratio = r.pi_D > 0.0 ? r.sum / r.pi_D : 0.0;
  return r;
}

ProdEquationReport prod_equation_check(std::int64_t D, std::uint64_t X, bool converse) {
  require(D < 0, Errc::domain, "prod_equation_check: D must be negative");
  require(X <= 10'000, Errc::range, "prod_equation_check: X > 1e4");
  const auto table = qforms::enumerate_classes(D);
  const auto primes = classify_window(table, X);
  ProdEquationReport r;
  r.D = D;
  r.X = X;
  r.converse_checked = converse;
  const auto absD = static_cast<i128>(-D);
  const double s_bound = 4.0 * static_cast<double>(X);
  const double v_bound = s_bound / std::sqrt(static_cast<double>(-D));

  // smallest v >= 0 with 4 p1 p2 + D v^2 a square, if any
  auto find = [&](std::uint64_t p1, std::uint64_t p2, Witness& out) {
    const i128 target = static_cast<i128>(4) * p1 * p2;
    for (i128 v = 0; absD * v * v <= target; ++v) {
      std::uint64_t s = 0;
      if (arith::is_square(target - absD * v * v, &s)) {
        out = Witness{p1, p2, static_cast<std::int64_t>(s), static_cast<std::int64_t>(v)};
        return true;
      }
    }
    return false;
  };

  for (std::size_t i = 0; i < primes.size(); ++i) {
    for (std::size_t j = i; j < primes.size(); ++j) {
      const auto& a = primes[i];
      const auto& b = primes[j];
      Witness wit;
      if (!intersects(a.classes, b.classes)) {
        if (converse) {
          ++r.converse_pairs;
          if (find(a.p, b.p, wit)) ++r.converse_unexpected;
        }
        continue;
      }
      ++r.pairs;
      if (find(a.p, b.p, wit) && std::fabs(static_cast<double>(wit.s)) <= s_bound &&
          static_cast<double>(wit.v) <= v_bound) {
        ++r.witnesses;
        if (a.p == b.p && wit.v == 0 && wit.s == static_cast<std::int64_t>(2 * a.p)) ++r.diagonal_ok;
        if (r.sample.size() < 8 && wit.v != 0) r.sample.push_back(wit);
      } else {
        r.missing.emplace_back(a.p, b.p);
      }
    }
  }
  return r;
}

DoubleCountReport double_count_N(std::int64_t D, std::uint64_t X) {
  require(D < 0, Errc::domain, "double_count_N: D must be negative");
  DoubleCountReport r;
  r.D = D;
  r.X = X;
  r.w = dirichlet::unit_count(D);
  if (X < 2) return r;
  for (std::uint64_t p : arith::primes_in_window(X).primes) {
    const int chi = arith::kronecker(D, static_cast<std::int64_t>(p));
    if (chi == 1) ++r.pi_D;
    if (chi == 0) ++r.ramified;
    r.N += dirichlet::r_total(p, D);
  }
  r.bound = 2 * static_cast<std::uint64_t>(r.w) * (r.pi_D + r.ramified);
  r.bound_w2 = 4 * (r.pi_D + r.ramified);
  r.holds = r.N <= r.bound;
  return r;
}

MassReport mass_formula_check(const std::vector<std::int64_t>& D_list) {
  MassReport rep;
  for (std::int64_t D : D_list) {
    require(dirichlet::is_fundamental(D, dirichlet::Convention::standard), Errc::argument,
            "mass_formula_check: D=" + std::to_string(D) + " is not fundamental");
    require(D >= -10'000, Errc::range, "mass_formula_check: |D| > 1e4");
    const auto table = qforms::enumerate_classes(D);
    MassRow row;
    row.D = D;
    row.h = table.h();
    for (const auto& c : table.classes) row.weighted_orbits += 2.0 / c.aut_weight;
    row.volume = std::sqrt(static_cast<double>(-D)) * localdens::global_sigma_product(D, 1, D);
    row.ratio = row.weighted_orbits / row.volume;
    rep.rows.push_back(row);
  }
  double sum = 0.0, sumsq = 0.0;
  for (const auto& row : rep.rows) {
    if (row.D == -3 || row.D == -4) continue;
    ++rep.used;
    sum += row.ratio;
  }
  require(rep.used >= 2, Errc::argument, "mass_formula_check: need at least two D outside {-3, -4}");
  rep.mean = sum / static_cast<double>(rep.used);
  for (const auto& row : rep.rows) {
    if (row.D == -3 || row.D == -4) continue;
    sumsq += (row.ratio - rep.mean) * (row.ratio - rep.mean);
  }
  rep.cv = std::sqrt(sumsq / static_cast<double>(rep.used)) / rep.mean;
  rep.kappa = rep.mean;
  return rep;
}

std::uint64_t theorem_one_X(std::int64_t D, std::size_t h) {
  const double x = std::ceil(static_cast<double>(h) * std::log(static_cast<double>(-D)));
  return std::max<std::uint64_t>(2, static_cast<std::uint64_t>(x));
}

TheoremOneReport theorem_one(std::int64_t D, std::uint64_t fixed_X) {
  require(D < -2, Errc::domain, "theorem_one: need D < -2");
  const auto table = qforms::enumerate_classes(D);
  TheoremOneReport r;
  r.D = D;
  r.h = table.h();
  r.X = fixed_X ? fixed_X : theorem_one_X(D, r.h);
  require(r.X >= 2, Errc::argument, "theorem_one: X must be at least 2");
  r.pi = arith::primes_in_window(r.X).pi();

  std::vector<char> hit(table.h(), 0);
  std::vector<qforms::Form> canonical;
  for (const auto& wp : classify_window(table, r.X)) {
    if (wp.chi == 1) ++r.pi_D;
    for (auto idx : wp.classes) hit[idx] = 1;
    if (auto c = qforms::canonical_prime_class(wp.p, D)) canonical.push_back(c->form);
  }
  std::sort(canonical.begin(), canonical.end());
  canonical.erase(std::unique(canonical.begin(), canonical.end()), canonical.end());
  r.R_set = static_cast<std::size_t>(std::count(hit.begin(), hit.end(), 1));
  r.R_strict = canonical.size();

  const double pi = static_cast<double>(r.pi);
  const double h = static_cast<double>(r.h);
  r.lhs = pi > 0 ? std::pow(static_cast<double>(r.pi_D) / pi, 2) : 0.0;
  r.rhs = pi > 0 ? (static_cast<double>(r.R_set) / h) * (1.0 + h / pi) : 0.0;
  r.ratio = r.rhs > 0.0 ? r.lhs / r.rhs : 0.0;
  return r;
}

std::vector<TheoremOneReport> theorem_one_scan(const std::vector<std::int64_t>& D_list, std::uint64_t fixed_X) {
  std::vector<TheoremOneReport> out;
  out.reserve(D_list.size());
  for (std::int64_t D : D_list) out.push_back(theorem_one(D, fixed_X));
  return out;
}

}  // namespace qflab::correlate
