#pragma once

#include <cstdint>
#include <random>
#include <vector>

#include "core/arith.hpp"
#include "core/dirichlet.hpp"

namespace qtest {

// Seeded generator for the property suites; failures print the seed via CAPTURE.
class Gen {
 public:
  explicit Gen(std::uint64_t seed) : rng_(seed) {}

  std::int64_t range(std::int64_t lo, std::int64_t hi) {
    return std::uniform_int_distribution<std::int64_t>(lo, hi)(rng_);
  }
  double real(double lo, double hi) { return std::uniform_real_distribution<double>(lo, hi)(rng_); }

  template <class T>
  const T& pick(const std::vector<T>& xs) {
    return xs[static_cast<std::size_t>(range(0, static_cast<std::int64_t>(xs.size()) - 1))];
  }

  std::uint64_t odd_prime(std::uint64_t max) {
    for (;;) {
      const auto p = static_cast<std::uint64_t>(range(3, static_cast<std::int64_t>(max)));
      if (qflab::arith::is_prime(p)) return p;
    }
  }

  // fundamental discriminant in (lo, 0) under the squarefree, 1 mod 4 rule
  std::int64_t discriminant(std::int64_t lo) {
    for (;;) {
      const auto D = range(lo + 1, -3);
      if (qflab::dirichlet::is_fundamental(D)) return D;
    }
  }

  std::mt19937_64& engine() { return rng_; }

 private:
  std::mt19937_64 rng_;
};

inline bool trial_prime(std::uint64_t n) {
  if (n < 2) return false;
  for (std::uint64_t d = 2; d * d <= n; ++d) {
    if (n % d == 0) return false;
  }
  return true;
}

inline std::int64_t pmod(std::int64_t a, std::int64_t m) { return ((a % m) + m) % m; }

}  // namespace qtest
