#pragma once

#include <cstdint>
#include <utility>
#include <vector>

#include "core/archimedean.hpp"
#include "core/qforms.hpp"

namespace qflab::correlate {

// Both signs of z are counted, while I(a) integrates a single sheet z > 0.
inline constexpr double kSheetFactor = 2.0;

struct LatticeCountReport {
  std::int64_t m = 0;
  std::int64_t X = 0;
  std::int64_t d1 = 1;
  std::int64_t d2 = 1;
  std::int64_t D = 0;
  std::int64_t v0 = 1;
  double direct_count = 0.0;   // weighted, both signs of z
  double sigma_inf = 0.0;      // (X / d1 d2) I(m / X^2)
  double sigma_product = 0.0;  // prod_p sigma_p(V_{m, d1 d2})
  double main_term = 0.0;      // kSheetFactor * sigma_inf * sigma_product
  double relative_error = 0.0;
  double single_sheet_ratio = 0.0;  // direct / (sigma_inf * sigma_product)
  std::size_t points = 0;
};

LatticeCountReport count_A(std::int64_t m, std::int64_t X, std::int64_t d1, std::int64_t d2,
                           const archimedean::SmoothWeight& w = archimedean::default_weight());

enum class WeightKind { smooth, sharp };

struct PairCountReport {
  std::int64_t D = 0;
  std::uint64_t X = 0;
  WeightKind kind = WeightKind::smooth;
  std::vector<double> per_class;  // pi(Q, w, X), in class-table order
  double sum = 0.0;               // sum_Q pi(Q, w, X)
  double sum_squares = 0.0;       // sum_Q pi(Q, w, X)^2
  double pi_D = 0.0;              // weighted count of split primes
  std::size_t R = 0;              // classes with pi(Q) > 0
  bool cauchy_schwarz = true;     // sum^2 <= R * sum_squares
  double split_ratio = 0.0;       // sum / pi_D
};

PairCountReport same_class_pair_count(std::int64_t D, std::uint64_t X, WeightKind kind = WeightKind::smooth,
                                      const archimedean::SmoothWeight& w = archimedean::default_weight());

struct Witness {
  std::uint64_t p1 = 0;
  std::uint64_t p2 = 0;
  std::int64_t s = 0;
  std::int64_t v = 0;
};

struct ProdEquationReport {
  std::int64_t D = 0;
  std::uint64_t X = 0;
  std::size_t pairs = 0;  // same-class pairs p1 <= p2
  std::size_t witnesses = 0;
  std::vector<std::pair<std::uint64_t, std::uint64_t>> missing;
  std::size_t diagonal_ok = 0;  // p1 = p2 pairs whose witness is (2p, 0)
  std::vector<Witness> sample;  // first few witnesses
  bool converse_checked = false;
  std::size_t converse_pairs = 0;       // pairs with disjoint class sets
  std::size_t converse_unexpected = 0;  // of those, pairs that still admit (s, v)
};

// 4 p1 p2 = s^2 - D v^2 with |s| <= 4X and |v| <= 4X / sqrt|D|.
ProdEquationReport prod_equation_check(std::int64_t D, std::uint64_t X, bool converse = false);

struct DoubleCountReport {
  std::int64_t D = 0;
  std::uint64_t X = 0;
  std::uint64_t N = 0;              // sum over window primes of r(p, D)
  std::uint64_t bound = 0;          // 2 w_D (pi_D + ramified)
  std::uint64_t bound_w2 = 0;       // 4 (pi_D + ramified)
  std::uint64_t pi_D = 0;
  std::uint64_t ramified = 0;
  int w = 2;
  bool holds = true;  // N <= bound
};

DoubleCountReport double_count_N(std::int64_t D, std::uint64_t X);

struct MassRow {
  std::int64_t D = 0;
  std::size_t h = 0;
  double weighted_orbits = 0.0;  // 2 sum_Q 1 / aut(Q)
  double volume = 0.0;           // sqrt|D| prod_p sigma_p
  double ratio = 0.0;
};

struct MassReport {
  std::vector<MassRow> rows;
  double mean = 0.0;  // over rows with D not in {-3, -4}
  double cv = 0.0;
  double kappa = 0.0;
  std::size_t used = 0;
};

MassReport mass_formula_check(const std::vector<std::int64_t>& D_list);

struct TheoremOneReport {
  std::int64_t D = 0;
  std::uint64_t X = 0;
  std::uint64_t pi = 0;
  std::uint64_t pi_D = 0;
  std::size_t h = 0;
  std::size_t R_set = 0;     // classes met by the class set of a window prime
  std::size_t R_strict = 0;  // distinct canonical classes of window primes
  double lhs = 0.0;
  double rhs = 0.0;
  double ratio = 0.0;
};

// X = ceil(h log|D|) when fixed_X is 0.
std::uint64_t theorem_one_X(std::int64_t D, std::size_t h);
TheoremOneReport theorem_one(std::int64_t D, std::uint64_t fixed_X = 0);
std::vector<TheoremOneReport> theorem_one_scan(const std::vector<std::int64_t>& D_list, std::uint64_t fixed_X = 0);

}  // namespace qflab::correlate
