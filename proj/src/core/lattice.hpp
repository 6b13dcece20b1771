#pragma once

#include <cstdint>
#include <vector>

#include "core/archimedean.hpp"

namespace qflab::lattice {

// A point (x, y, z) with z >= 0 on z^2 - 4xy = m and X <= x, y <= 2X.
// mult is 2 for z > 0 (both signs of z) and 1 for z = 0.
struct Solution {
  std::int64_t x = 0;
  std::int64_t y = 0;
  std::int64_t z = 0;
  int mult = 1;
  double weight = 0.0;  // w_X(x) w_X(y)
};

struct SolutionSet {
  std::int64_t m = 0;
  std::int64_t X = 0;
  std::vector<Solution> points;  // sorted by (x, y, z)

  // sum of mult * weight over points accepted by pred
  template <class Pred>
  double weighted_count(Pred pred) const {
    long double sum = 0.0L;
    for (const auto& s : points) {
      if (pred(s)) sum += static_cast<long double>(s.mult) * s.weight;
    }
    return static_cast<double>(sum);
  }
  double weighted_count() const {
    return weighted_count([](const Solution&) { return true; });
  }
};

enum class Enumeration {
  factor,     // walk z and split (z^2 - m)/4 into x y using sieved factorizations
  pair_scan,  // walk (x, y) and test m + 4xy for squares
};

inline constexpr std::int64_t kMaxScanX = 100'000;

SolutionSet enumerate_solutions(std::int64_t m, std::int64_t X,
                                const archimedean::SmoothWeight& w = archimedean::default_weight(),
                                Enumeration method = Enumeration::factor);

}  // namespace qflab::lattice
