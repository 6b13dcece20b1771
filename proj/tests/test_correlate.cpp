#include "doctest.h"

#include <cmath>
#include <numbers>

#include "core/correlate.hpp"
#include "core/dirichlet.hpp"
#include "core/lattice.hpp"
#include "core/localdens.hpp"
#include "core/sieve.hpp"
#include "support.hpp"

using namespace qflab;
using namespace qflab::correlate;

TEST_CASE("lattice count and its main term") {
  const auto r = count_A(-23, 10'000, 1, 1);
  CHECK(r.D == -23);
  CHECK(r.v0 == 1);
  CHECK(std::fabs(r.relative_error) <= 0.05);
  CHECK(r.main_term == doctest::Approx(kSheetFactor * r.sigma_inf * r.sigma_product));
  CHECK(r.direct_count == doctest::Approx(lattice::enumerate_solutions(-23, 10'000).weighted_count()));
  CHECK(r.single_sheet_ratio == doctest::Approx(kSheetFactor * (1 + r.relative_error)));

  const auto half = count_A(-23, 5'000, 1, 1);
  CHECK(r.main_term / half.main_term == doctest::Approx(2.0).epsilon(1e-3));

  const auto sols = lattice::enumerate_solutions(-23 * 9, 3000);
  const auto c = count_A(-23 * 9, 3000, 3, 1);
  CHECK(c.direct_count == doctest::Approx(sieve::A_d1d2(sols, 3, 1)));
  CHECK(c.v0 == 3);
  CHECK_THROWS_AS(count_A(-23, 1000, 4, 1), Error);
}

TEST_CASE("same-class pair counts") {
  const auto one = same_class_pair_count(-3, 500);
  REQUIRE(one.per_class.size() == 1);
  CHECK(one.sum_squares == doctest::Approx(one.sum * one.sum));
  const auto empty = same_class_pair_count(-23, 1);
  CHECK(empty.sum == 0.0);
  CHECK(empty.R == 0);

  // classify the window directly with a representation search
  const std::int64_t D = -23;
  const std::uint64_t X = 100;
  const auto table = qforms::enumerate_classes(D);
  std::vector<double> oracle(table.h(), 0.0);
  for (std::uint64_t p : arith::primes_in_window(X).primes) {
    for (std::size_t i = 0; i < table.h(); ++i) {
      if (qforms::representation_count(p, table.classes[i].form) > 0) {
        oracle[i] += archimedean::default_weight().scaled(static_cast<double>(p), static_cast<double>(X));
      }
    }
  }
  const auto r = same_class_pair_count(D, X);
  REQUIRE(r.per_class.size() == oracle.size());
  for (std::size_t i = 0; i < oracle.size(); ++i) CHECK(r.per_class[i] == doctest::Approx(oracle[i]));
  CHECK(r.cauchy_schwarz);

  const auto sharp = same_class_pair_count(D, X, WeightKind::sharp);
  CHECK(sharp.pi_D == static_cast<double>(dirichlet::split_prime_count(D, X).pi_D));
}

TEST_CASE("product equation witnesses") {
  const auto small = prod_equation_check(-23, 2);
  bool found = false;
  for (const auto& w : small.sample) {
    if (w.p1 == 2 && w.p2 == 3 && w.v != 0) {
      found = true;
      CHECK(w.s * w.s + 23 * w.v * w.v == 24);
    }
  }
  CHECK(found);
  CHECK(small.diagonal_ok == 2);

  const auto r = prod_equation_check(-23, 2000, true);
  CHECK(r.missing.empty());
  CHECK(r.witnesses == r.pairs);
  CHECK(r.converse_unexpected == 0);
  CHECK_THROWS_AS(prod_equation_check(-23, 20'000), Error);
}

TEST_CASE("double counting bound") {
  const auto four = double_count_N(-4, 10);
  CHECK(four.pi_D == 2);
  CHECK(four.w == 4);
  CHECK(four.N == 16);  // r(13) = r(17) = 8
  CHECK(four.bound == 16);
  CHECK(four.holds);

  const auto r = double_count_N(-23, 1000);
  CHECK(r.N == 4 * r.pi_D + 2 * r.ramified);
  CHECK(r.holds);
  CHECK(double_count_N(-23, 1).N == 0);
}

TEST_CASE("mass formula constant") {
  const auto ds = dirichlet::fundamental_discriminants(-400, 0, dirichlet::Convention::standard);
  const auto rep = mass_formula_check(ds);
  CHECK(rep.kappa == doctest::Approx(std::numbers::pi / 12).epsilon(1e-12));
  CHECK(rep.cv < 1e-12);
  for (const auto& row : rep.rows) {
    CAPTURE(row.D);
    CHECK(row.ratio == doctest::Approx(rep.kappa).epsilon(1e-10));
  }
  CHECK_THROWS_AS(mass_formula_check({-27, -23, -7}), Error);
}

TEST_CASE("theorem one statistics") {
  CHECK(theorem_one_X(-23, 3) == 10);
  CHECK(theorem_one_X(-3, 1) == 2);
  const auto t = theorem_one(-23);
  CHECK(t.X == 10);
  CHECK(t.R_set <= t.h);
  CHECK(t.R_strict <= t.R_set);
  CHECK(t.pi_D <= t.pi);
  CHECK(t.lhs <= t.rhs * 10);

  const auto scan = theorem_one_scan(dirichlet::fundamental_discriminants(-600, -3, dirichlet::Convention::squarefree_1mod4));
  for (const auto& s : scan) {
    CAPTURE(s.D);
    CHECK(s.R_set <= s.h);
    if (s.pi_D == 0) CHECK(s.lhs == 0.0);
    CHECK(s.ratio < 10.0);
  }
}
