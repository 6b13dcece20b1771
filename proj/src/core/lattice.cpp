#include "core/lattice.hpp"

#include <algorithm>
#include <string>
#include <tuple>
#include <utility>

#include "core/arith.hpp"

namespace qflab::lattice {

namespace {

using Factors = std::vector<std::pair<std::uint64_t, int>>;

void push_factor(Factors& f, std::uint64_t p) {
  if (!f.empty() && f.back().first == p) {
    ++f.back().second;
  } else {
    f.emplace_back(p, 1);
  }
}

void collect_divisors(const Factors& f, std::size_t i, std::uint64_t acc, std::uint64_t limit,
                      std::vector<std::uint64_t>& out) {
  if (i == f.size()) {
    out.push_back(acc);
    return;
  }
  std::uint64_t cur = acc;
  for (int e = 0; e <= f[i].second; ++e) {
    if (cur > limit) break;
    collect_divisors(f, i + 1, cur, limit, out);
    cur *= f[i].first;
  }
}

Solution make_point(std::int64_t x, std::int64_t y, std::int64_t z, std::int64_t X,
                    const archimedean::SmoothWeight& w) {
  const double dX = static_cast<double>(X);
  Solution s;
  s.x = x;
  s.y = y;
  s.z = z;
  s.mult = z > 0 ? 2 : 1;
  s.weight = w.scaled(static_cast<double>(x), dX) * w.scaled(static_cast<double>(y), dX);
  return s;
}

void by_pairs(SolutionSet& out, const archimedean::SmoothWeight& w) {
  const std::int64_t X = out.X;
  const i128 m = out.m;
  for (std::int64_t x = X; x <= 2 * X; ++x) {
    i128 v = m + static_cast<i128>(4) * x * X;
    std::uint64_t s = v > 0 ? arith::isqrt128(v) : 0;
    for (std::int64_t y = X; y <= 2 * X; ++y, v += 4 * x) {
      if (v < 0) continue;
      while (static_cast<i128>(s + 1) * (s + 1) <= v) ++s;
      if (static_cast<i128>(s) * s == v) out.points.push_back(make_point(x, y, static_cast<std::int64_t>(s), X, w));
    }
  }
}

void by_factoring(SolutionSet& out, const archimedean::SmoothWeight& w) {
  const std::int64_t X = out.X;
  const i128 m = out.m;
  const i128 lo = m + static_cast<i128>(4) * X * X;
  const i128 hi = m + static_cast<i128>(16) * X * X;
  if (hi < 0) return;
  std::uint64_t z_lo = lo > 0 ? arith::isqrt128(lo) : 0;
  if (static_cast<i128>(z_lo) * z_lo < lo) ++z_lo;
  const std::uint64_t z_hi = arith::isqrt128(hi);
  if (z_lo > z_hi) return;

  // N(z) = (z^2 - m) / 4 for the z with z^2 = m mod 4
  const std::size_t count = z_hi - z_lo + 1;
  std::vector<std::uint64_t> rest(count, 0);
  std::vector<Factors> factors(count);
  for (std::size_t i = 0; i < count; ++i) {
    const i128 z = static_cast<i128>(z_lo + i);
    const i128 v = z * z - m;
    if (v % 4 != 0) continue;
    rest[i] = static_cast<std::uint64_t>(v / 4);
    while (rest[i] != 0 && (rest[i] & 1) == 0) {
      rest[i] >>= 1;
      push_factor(factors[i], 2);
    }
  }

  const auto primes = arith::primes_up_to(static_cast<std::uint64_t>(2 * X));
  for (std::uint64_t p : primes) {
    if (p == 2) continue;
    const auto sp = static_cast<std::int64_t>(p);
    const std::int64_t mp = arith::mod_floor(static_cast<std::int64_t>(m % sp), sp);
    std::int64_t roots[2];
    int nroots = 0;
    if (mp == 0) {
      roots[nroots++] = 0;
    } else {
      const auto r = arith::sqrt_mod(mp, sp);
      if (!r) continue;
      roots[nroots++] = *r;
      if (*r != sp - *r) roots[nroots++] = sp - *r;
    }
    for (int k = 0; k < nroots; ++k) {
      const std::int64_t offset = arith::mod_floor(roots[k] - static_cast<std::int64_t>(z_lo % p), sp);
      for (std::size_t i = static_cast<std::size_t>(offset); i < count; i += p) {
        if (rest[i] == 0) continue;
        while (rest[i] % p == 0) {
          rest[i] /= p;
          push_factor(factors[i], p);
        }
      }
    }
  }

  std::vector<std::uint64_t> divs;
  const auto uX = static_cast<std::uint64_t>(X);
  for (std::size_t i = 0; i < count; ++i) {
    if (rest[i] == 0) continue;  // wrong residue class mod 4, or N = 0
    const i128 z = static_cast<i128>(z_lo + i);
    const auto N = static_cast<std::uint64_t>((z * z - m) / 4);
    if (rest[i] > 1) push_factor(factors[i], rest[i]);  // one prime above 2X
    std::sort(factors[i].begin(), factors[i].end());
    divs.clear();
    collect_divisors(factors[i], 0, 1, 2 * uX, divs);
    for (std::uint64_t x : divs) {
      if (x < uX || x > 2 * uX) continue;
      const std::uint64_t y = N / x;
      if (y < uX || y > 2 * uX) continue;
      out.points.push_back(make_point(static_cast<std::int64_t>(x), static_cast<std::int64_t>(y),
                                      static_cast<std::int64_t>(z), X, w));
    }
  }
}

}  // namespace

SolutionSet enumerate_solutions(std::int64_t m, std::int64_t X, const archimedean::SmoothWeight& w,
                                Enumeration method) {
  require(X >= 1 && X <= kMaxScanX, Errc::range,
          "enumerate_solutions: X=" + std::to_string(X) + " outside [1, 1e5]");
  SolutionSet out;
  out.m = m;
  out.X = X;
  if (method == Enumeration::pair_scan) {
    by_pairs(out, w);
  } else {
    by_factoring(out, w);
  }
  std::sort(out.points.begin(), out.points.end(), [](const Solution& a, const Solution& b) {
    return std::tie(a.x, a.y, a.z) < std::tie(b.x, b.y, b.z);
  });
  return out;
}

}  // namespace qflab::lattice
