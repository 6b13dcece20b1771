#include "doctest.h"

#include <algorithm>
#include <numeric>

#include "core/arith.hpp"
#include "core/errors.hpp"
#include "support.hpp"

using namespace qflab;
using namespace qflab::arith;

TEST_CASE("prime window examples") {
  CHECK(primes_in_window(10).primes == std::vector<std::uint64_t>{11, 13, 17, 19});
  CHECK(primes_in_window(2).primes == std::vector<std::uint64_t>{2, 3});
  CHECK_THROWS_AS(primes_in_window(1), Error);
}

TEST_CASE("prime window of 1e6 against a separate sieve") {
  const std::uint64_t X = 1'000'000;
  std::vector<char> composite(2 * X, 0);
  for (std::uint64_t p = 2; p * p < 2 * X; ++p) {
    if (composite[p]) continue;
    for (std::uint64_t q = p * p; q < 2 * X; q += p) composite[q] = 1;
  }
  std::uint64_t count = 0;
  for (std::uint64_t n = X; n < 2 * X; ++n) count += composite[n] ? 0 : 1;
  CHECK(count == 70435);
  CHECK(primes_in_window(X).pi() == count);
}

TEST_CASE("prime window property: complete and increasing") {
  qtest::Gen g(11);
  for (int i = 0; i < 40; ++i) {
    const auto X = static_cast<std::uint64_t>(g.range(2, 5000));
    CAPTURE(X);
    std::vector<std::uint64_t> oracle;
    for (std::uint64_t n = X; n < 2 * X; ++n) {
      if (qtest::trial_prime(n)) oracle.push_back(n);
    }
    CHECK(primes_in_window(X).primes == oracle);
  }
}

TEST_CASE("primality against trial division") {
  for (std::uint64_t n = 0; n < 20000; ++n) REQUIRE(is_prime(n) == qtest::trial_prime(n));
  CHECK(is_prime(18446744073709551557ULL));
  CHECK_FALSE(is_prime(3215031751ULL));  // strong pseudoprime to bases 2, 3, 5, 7
}

TEST_CASE("kronecker examples") {
  CHECK(kronecker(-7, 2) == 1);
  CHECK(kronecker(-4, 3) == -1);
  CHECK(kronecker(-23, 23) == 0);
  CHECK(kronecker(-15, 5) == 0);
}

TEST_CASE("kronecker at odd primes matches a square count") {
  qtest::Gen g(12);
  for (int i = 0; i < 300; ++i) {
    const auto p = static_cast<std::int64_t>(g.odd_prime(400));
    const auto D = g.range(-5000, -1);
    CAPTURE(p);
    CAPTURE(D);
    const auto r = qtest::pmod(D, p);
    int oracle = 0;
    if (r != 0) {
      oracle = -1;
      for (std::int64_t x = 1; x < p; ++x) {
        if (x * x % p == r) {
          oracle = 1;
          break;
        }
      }
    }
    CHECK(kronecker(D, p) == oracle);
  }
}

TEST_CASE("kronecker at 2 matches squares mod 8 for discriminants") {
  for (std::int64_t D = -3; D > -2000; D -= 4) {
    int oracle = -1;
    for (std::int64_t x = 1; x < 8; x += 2) {
      if (x * x % 8 == qtest::pmod(D, 8)) oracle = 1;
    }
    CHECK(kronecker(D, 2) == oracle);
  }
}

TEST_CASE("kronecker property: completely multiplicative and periodic") {
  qtest::Gen g(13);
  for (int i = 0; i < 500; ++i) {
    const auto D = g.discriminant(-3000);
    const auto a = g.range(1, 3000), b = g.range(1, 3000);
    CAPTURE(D);
    CAPTURE(a);
    CAPTURE(b);
    CHECK(kronecker(D, a * b) == kronecker(D, a) * kronecker(D, b));
    CHECK(kronecker(D, a + (-D)) == kronecker(D, a));
  }
}

TEST_CASE("jacobi agrees with kronecker for odd n") {
  qtest::Gen g(14);
  for (int i = 0; i < 500; ++i) {
    auto n = g.range(1, 4000) | 1;
    const auto a = g.range(-4000, 4000);
    CHECK(jacobi(a, n) == kronecker(a, n));
  }
}

TEST_CASE("modular square roots") {
  CHECK(sqrt_mod(2, 7) == std::optional<std::int64_t>{3});
  CHECK(sqrt_mod(0, 5) == std::optional<std::int64_t>{0});
  CHECK_FALSE(sqrt_mod(3, 5).has_value());

  qtest::Gen g(15);
  for (int i = 0; i < 300; ++i) {
    const auto p = static_cast<std::int64_t>(g.odd_prime(100'000));
    const auto a = g.range(0, p - 1);
    CAPTURE(p);
    CAPTURE(a);
    const auto r = sqrt_mod(a, p);
    if (r) {
      CHECK(*r <= p / 2);
      CHECK(static_cast<i128>(*r) * *r % p == a);
    } else {
      CHECK(kronecker(a, p) == -1);
    }
  }
}

TEST_CASE("factorization, mobius, phi and divisors") {
  CHECK(euler_phi(12) == 4);
  CHECK(mobius(1) == 1);
  CHECK(divisors(6) == std::vector<std::uint64_t>{1, 2, 3, 6});

  qtest::Gen g(16);
  for (int i = 0; i < 300; ++i) {
    const auto n = static_cast<std::uint64_t>(g.range(1, 20000));
    CAPTURE(n);
    const auto f = factorize(n);
    std::uint64_t prod = 1;
    for (auto [p, e] : f.factors) {
      CHECK(qtest::trial_prime(p));
      for (int k = 0; k < e; ++k) prod *= p;
    }
    CHECK(prod == n);

    std::vector<std::uint64_t> divs;
    std::uint64_t phi = 0;
    for (std::uint64_t d = 1; d <= n; ++d) {
      if (n % d == 0) divs.push_back(d);
      if (std::gcd(d, n) == 1) ++phi;
    }
    CHECK(divisors(n) == divs);
    CHECK(euler_phi(n) == phi);

    // sum of mu over the divisors vanishes except at 1
    int s = 0;
    for (auto d : divs) s += mobius(d);
    CHECK(s == (n == 1 ? 1 : 0));
    bool sqf = true;
    for (std::uint64_t d = 2; d * d <= n; ++d) {
      if (n % (d * d) == 0) sqf = false;
    }
    CHECK(is_squarefree(n) == sqf);
  }
}

TEST_CASE("integer square roots") {
  qtest::Gen g(17);
  for (int i = 0; i < 1000; ++i) {
    const auto n = static_cast<std::uint64_t>(g.range(0, INT64_MAX));
    const auto r = isqrt(n);
    CHECK(static_cast<i128>(r) * r <= n);
    CHECK(static_cast<i128>(r + 1) * (r + 1) > n);
    std::uint64_t root = 0;
    CHECK(is_square(static_cast<i128>(r) * r, &root));
    CHECK(root == r);
  }
  CHECK_FALSE(is_square(-4));
  CHECK(valuation(-72, 2) == 3);
  CHECK(valuation(-72, 3) == 2);
  CHECK(floor_div(-7, 2) == -4);
  CHECK(mod_floor(-7, 4) == 1);
}
