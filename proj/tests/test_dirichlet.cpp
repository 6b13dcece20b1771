#include "doctest.h"

#include <cmath>
#include <numbers>

#include "core/dirichlet.hpp"
#include "core/qforms.hpp"
#include "support.hpp"

using namespace qflab;
using namespace qflab::dirichlet;

TEST_CASE("fundamental discriminant conventions") {
  CHECK(is_fundamental(-3));
  CHECK(is_fundamental(-23));
  CHECK_FALSE(is_fundamental(-4));
  CHECK(is_fundamental(-4, Convention::with_minus4));
  CHECK_FALSE(is_fundamental(-8, Convention::with_minus4));
  CHECK(is_fundamental(-8, Convention::standard));
  CHECK_FALSE(is_fundamental(-27, Convention::standard));
  CHECK_FALSE(is_fundamental(-12, Convention::standard));
  CHECK(unit_count(-3) == 6);
  CHECK(unit_count(-4) == 4);
  CHECK(unit_count(-23) == 2);
  const auto ds = fundamental_discriminants(-30, 0, Convention::squarefree_1mod4);
  CHECK(ds == std::vector<std::int64_t>{-3, -7, -11, -15, -19, -23});
}

TEST_CASE("fundamental parts") {
  const auto a = fundamental_part(-23 * 9);
  CHECK(a.D == -23);
  CHECK(a.v0 == 3);
  const auto b = fundamental_part(-16);
  CHECK(b.D == -4);
  CHECK(b.v0 == 2);
  const auto c = fundamental_part(-12);
  CHECK(c.D == -3);
  CHECK(c.v0 == 2);
  const auto d = fundamental_part(-8);
  CHECK(d.D == -8);
  CHECK(d.v0 == 1);
  qtest::Gen g(31);
  for (int i = 0; i < 200; ++i) {
    const auto D = g.discriminant(-2000);
    const auto v0 = g.range(1, 30);
    const auto fp = fundamental_part(D * v0 * v0);
    CHECK(fp.D == D);
    CHECK(fp.v0 == v0);
  }
}

TEST_CASE("total representation numbers") {
  CHECK(r_total(1, -23) == 2);
  CHECK(r_total(1, -7) == 2);
  CHECK(r_total(2, -23) == 4);
  CHECK(r_total(5, -23) == 0);  // inert
  std::uint64_t via_forms = 0;
  for (const auto& c : qforms::enumerate_classes(-23).classes) via_forms += qforms::representation_count(2, c.form);
  CHECK(via_forms == 4);
}

TEST_CASE("total representation property: sum over classes") {
  qtest::Gen g(32);
  for (int i = 0; i < 150; ++i) {
    const auto D = g.discriminant(-1000);
    const auto n = static_cast<std::uint64_t>(g.range(1, 3000));
    CAPTURE(D);
    CAPTURE(n);
    std::uint64_t s = 0;
    for (const auto& c : qforms::enumerate_classes(D).classes) s += qforms::representation_count(n, c.form);
    CHECK(s == r_total(n, D));
  }
}

TEST_CASE("L(1) values") {
  CHECK(L1_from_class_number(-23) == doctest::Approx(2 * std::numbers::pi * 3 / (2 * std::sqrt(23.0))));
  CHECK(L1_from_class_number(-23) == doctest::Approx(1.9652).epsilon(1e-4));
  CHECK(L1_from_class_number(-7) == doctest::Approx(1.1874).epsilon(1e-4));
  CHECK(L1_from_class_number(-3) == doctest::Approx(0.6046).epsilon(1e-4));
  for (std::int64_t D : {-23, -7, -3, -4}) {
    CAPTURE(D);
    CHECK(std::fabs(L1_from_class_number(D) - L1_from_character_sum(D, 100'000)) < 1e-6);
    CHECK(std::fabs(L1_closed_form(D) - L1_from_class_number(D)) < 1e-12);
  }
}

TEST_CASE("L(1) against plain partial sums") {
  // Leibniz series for -4, averaged partial sums elsewhere
  double leibniz = 0.0;
  for (int k = 0; k < 2'000'000; ++k) leibniz += (k % 2 ? -1.0 : 1.0) / (2.0 * k + 1.0);
  CHECK(std::fabs(L1_from_class_number(-4) - leibniz) < 1e-6);
  CHECK(L1_from_class_number(-4) == doctest::Approx(std::numbers::pi / 4));

  for (std::int64_t D : {-3, -7, -23, -163}) {
    CAPTURE(D);
    double s = 0.0, s_prev = 0.0;
    const int N = 1'000'000;
    for (int n = 1; n <= N; ++n) {
      s_prev = s;
      s += arith::kronecker(D, n) / static_cast<double>(n);
    }
    CHECK(std::fabs(0.5 * (s + s_prev) - L1_from_class_number(D)) < 1e-4);
  }
}

TEST_CASE("make_discriminant") {
  const auto d = make_discriminant(-23);
  CHECK(d.fundamental);
  CHECK(d.h == 3);
  CHECK(d.w == 2);
  const auto e = make_discriminant(-23, L1Method::character_sum);
  CHECK(e.L1 == doctest::Approx(d.L1));
}

TEST_CASE("split prime counts") {
  const auto a = split_prime_count(-4, 10);
  CHECK(a.pi_D == 2);
  CHECK(a.pi == 4);
  const auto b = split_prime_count(-3, 5);
  CHECK(b.pi_D == 1);
  CHECK(b.pi == 2);
  const auto c = split_prime_count(-23, 1);
  CHECK(c.pi_D == 0);
  CHECK(c.pi == 0);
  const auto r = split_prime_count(-23, 12);  // window 13..23 contains 23
  CHECK(r.ramified == 1);
}

TEST_CASE("domain errors") {
  CHECK_THROWS_AS(r_total(0, -23), Error);
  CHECK_THROWS_AS(r_total(3, 5), Error);
  CHECK_THROWS_AS(L1_from_character_sum(-27, 1000), Error);
  CHECK_THROWS_AS(fundamental_part(5), Error);
}
