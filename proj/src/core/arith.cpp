#include "core/arith.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace qflab {

const char* errc_name(Errc code) noexcept {
  switch (code) {
    case Errc::argument: return "argument";
    case Errc::range: return "range";
    case Errc::domain: return "domain";
    case Errc::consistency: return "consistency";
    case Errc::numeric: return "numeric";
    case Errc::unsupported: return "unsupported";
    case Errc::degenerate: return "degenerate";
    case Errc::io: return "io";
  }
  return "unknown";
}

double to_double(const Rational& q) { return q.convert_to<double>(); }

namespace arith {

std::vector<std::uint64_t> primes_up_to(std::uint64_t n) {
  std::vector<std::uint64_t> out;
  if (n < 2) return out;
  std::vector<bool> composite(n + 1, false);
  for (std::uint64_t i = 2; i <= n; ++i) {
    if (composite[i]) continue;
    out.push_back(i);
    for (std::uint64_t j = i * i; j <= n; j += i) composite[j] = true;
  }
  return out;
}

PrimeWindow primes_in_window(std::uint64_t X) {
  require(X >= 2 && X <= kMaxWindowX, Errc::range,
          "primes_in_window: X=" + std::to_string(X) + " outside [2, 1e9]");
  PrimeWindow window;
  window.X = X;
  const std::uint64_t lo = X;
  const std::uint64_t hi = 2 * X;  // exclusive
  const auto base = primes_up_to(isqrt(hi - 1));

  constexpr std::uint64_t kSegment = 1ULL << 18;
  std::vector<std::uint8_t> composite;
  for (std::uint64_t start = lo; start < hi; start += kSegment) {
    const std::uint64_t end = std::min(hi, start + kSegment);
    composite.assign(end - start, 0);
    for (std::uint64_t p : base) {
      if (p * p >= end) break;
      std::uint64_t first = std::max(p * p, ((start + p - 1) / p) * p);
      for (std::uint64_t m = first; m < end; m += p) composite[m - start] = 1;
    }
    for (std::uint64_t n = start; n < end; ++n) {
      if (n >= 2 && !composite[n - start]) window.primes.push_back(n);
    }
  }
  return window;
}

std::uint64_t mulmod(std::uint64_t a, std::uint64_t b, std::uint64_t m) {
  return static_cast<std::uint64_t>((static_cast<unsigned __int128>(a) * b) % m);
}

std::uint64_t powmod(std::uint64_t base, std::uint64_t exp, std::uint64_t m) {
  std::uint64_t result = 1 % m;
  base %= m;
  while (exp) {
    if (exp & 1) result = mulmod(result, base, m);
    base = mulmod(base, base, m);
    exp >>= 1;
  }
  return result;
}

bool is_prime(std::uint64_t n) {
  if (n < 2) return false;
  static constexpr std::uint64_t kSmall[] = {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37};
  for (std::uint64_t p : kSmall) {
    if (n % p == 0) return n == p;
  }
  std::uint64_t d = n - 1;
  int s = 0;
  while ((d & 1) == 0) {
    d >>= 1;
    ++s;
  }
  for (std::uint64_t a : kSmall) {
    std::uint64_t x = powmod(a, d, n);
    if (x == 1 || x == n - 1) continue;
    bool witness = true;
    for (int r = 1; r < s; ++r) {
      x = mulmod(x, x, n);
      if (x == n - 1) {
        witness = false;
        break;
      }
    }
    if (witness) return false;
  }
  return true;
}

int jacobi(std::int64_t a, std::int64_t n) {
  require(n > 0 && (n & 1), Errc::argument, "jacobi: modulus must be odd and positive");
  a = mod_floor(a, n);
  int result = 1;
  while (a != 0) {
    while ((a & 1) == 0) {
      a >>= 1;
      const std::int64_t r = n & 7;
      if (r == 3 || r == 5) result = -result;
    }
    std::swap(a, n);
    if ((a & 3) == 3 && (n & 3) == 3) result = -result;
    a %= n;
  }
  return n == 1 ? result : 0;
}

int kronecker(std::int64_t D, std::int64_t n) {
  if (n == 0) return (D == 1 || D == -1) ? 1 : 0;
  int result = 1;
  if (n < 0) {
    n = -n;
    if (D < 0) result = -result;
  }
  int twos = 0;
  while ((n & 1) == 0) {
    n >>= 1;
    ++twos;
  }
  if (twos > 0) {
    if ((D & 1) == 0) return 0;
    const std::int64_t r = mod_floor(D, 8);
    if ((twos & 1) && (r == 3 || r == 5)) result = -result;
  }
  return result * jacobi(D, n);
}

std::optional<std::int64_t> sqrt_mod(std::int64_t a, std::int64_t p) {
  require(p > 2 && is_prime(static_cast<std::uint64_t>(p)), Errc::argument,
          "sqrt_mod: modulus " + std::to_string(p) + " is not an odd prime");
  const auto up = static_cast<std::uint64_t>(p);
  const auto ua = static_cast<std::uint64_t>(mod_floor(a, p));
  if (ua == 0) return 0;
  if (powmod(ua, (up - 1) / 2, up) != 1) return std::nullopt;

  // Tonelli-Shanks with the least quadratic non-residue.
  std::uint64_t q = up - 1;
  int s = 0;
  while ((q & 1) == 0) {
    q >>= 1;
    ++s;
  }
  std::uint64_t z = 2;
  while (powmod(z, (up - 1) / 2, up) != up - 1) ++z;

  std::uint64_t m = static_cast<std::uint64_t>(s);
  std::uint64_t c = powmod(z, q, up);
  std::uint64_t t = powmod(ua, q, up);
  std::uint64_t r = powmod(ua, (q + 1) / 2, up);
  while (t != 1) {
    std::uint64_t i = 0;
    std::uint64_t t2 = t;
    while (t2 != 1) {
      t2 = mulmod(t2, t2, up);
      ++i;
    }
    std::uint64_t b = c;
    for (std::uint64_t j = 0; j + 1 < m - i; ++j) b = mulmod(b, b, up);
    m = i;
    c = mulmod(b, b, up);
    t = mulmod(t, c, up);
    r = mulmod(r, b, up);
  }
  const std::uint64_t other = up - r;
  return static_cast<std::int64_t>(std::min(r, other));
}

Factorization factorize(std::uint64_t n) {
  require(n >= 1 && n <= kMaxFactorN, Errc::range,
          "factorize: n=" + std::to_string(n) + " outside [1, 1e12]");
  Factorization f;
  f.n = n;
  for (std::uint64_t p = 2; p * p <= n; p += (p == 2 ? 1 : 2)) {
    if (n % p) continue;
    int e = 0;
    while (n % p == 0) {
      n /= p;
      ++e;
    }
    f.factors.emplace_back(p, e);
  }
  if (n > 1) f.factors.emplace_back(n, 1);
  return f;
}

int mobius(std::uint64_t n) {
  const auto f = factorize(n);
  int sign = 1;
  for (const auto& [p, e] : f.factors) {
    if (e > 1) return 0;
    sign = -sign;
  }
  return sign;
}

std::uint64_t euler_phi(std::uint64_t n) {
  const auto f = factorize(n);
  std::uint64_t phi = n;
  for (const auto& [p, e] : f.factors) phi = phi / p * (p - 1);
  return phi;
}

std::vector<std::uint64_t> divisors(std::uint64_t n) {
  const auto f = factorize(n);
  std::vector<std::uint64_t> out{1};
  for (const auto& [p, e] : f.factors) {
    const std::size_t count = out.size();
    std::uint64_t pk = 1;
    for (int k = 1; k <= e; ++k) {
      pk *= p;
      for (std::size_t i = 0; i < count; ++i) out.push_back(out[i] * pk);
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

bool is_squarefree(std::uint64_t n) { return mobius(n) != 0; }

int valuation(i128 n, std::uint64_t p) {
  require(n != 0, Errc::argument, "valuation of zero");
  require(p >= 2, Errc::argument, "valuation: p < 2");
  if (n < 0) n = -n;
  int v = 0;
  const i128 pp = static_cast<i128>(p);
  while (n % pp == 0) {
    n /= pp;
    ++v;
  }
  return v;
}

std::uint64_t isqrt(std::uint64_t n) {
  auto r = static_cast<std::uint64_t>(std::sqrt(static_cast<long double>(n)));
  while (r > 0 && static_cast<unsigned __int128>(r) * r > n) --r;
  while (static_cast<unsigned __int128>(r + 1) * (r + 1) <= n) ++r;
  return r;
}

std::uint64_t isqrt128(i128 n) {
  require(n >= 0, Errc::domain, "isqrt of a negative number");
  auto r = static_cast<std::uint64_t>(std::sqrt(static_cast<long double>(n)));
  while (r > 0 && static_cast<i128>(r) * r > n) --r;
  while (static_cast<i128>(r + 1) * (r + 1) <= n) ++r;
  return r;
}

bool is_square(i128 n, std::uint64_t* root) {
  if (n < 0) return false;
  const std::uint64_t r = isqrt128(n);
  if (static_cast<i128>(r) * r != n) return false;
  if (root) *root = r;
  return true;
}

std::int64_t gcd(std::int64_t a, std::int64_t b) {
  a = a < 0 ? -a : a;
  b = b < 0 ? -b : b;
  while (b) {
    a %= b;
    std::swap(a, b);
  }
  return a;
}

}  // namespace arith
}  // namespace qflab
