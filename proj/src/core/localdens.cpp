#include "core/localdens.hpp"

#include <atomic>
#include <cmath>
#include <map>
#include <mutex>
#include <numbers>
#include <string>

#include "core/dirichlet.hpp"

namespace qflab::localdens {

namespace {

std::atomic<std::uint64_t> g_even_branch_uses{0};

// p^e for any integer e.
Rational rpow(std::uint64_t p, int e) {
  BigInt num = 1;
  for (int i = 0; i < (e < 0 ? -e : e); ++i) num *= p;
  return e >= 0 ? Rational(num) : Rational(BigInt(1), num);
}

std::uint64_t ipow(std::uint64_t p, int e) {
  std::uint64_t r = 1;
  for (int i = 0; i < e; ++i) r *= p;
  return r;
}

void check_odd_prime(std::uint64_t p, const char* where) {
  if (p == 2) fail(Errc::unsupported, std::string(where) + ": p = 2 has no closed form here");
  require(p > 2 && arith::is_prime(p), Errc::argument, std::string(where) + ": p must be an odd prime");
}

void check_alpha(int alpha, const char* where) {
  require(alpha >= 0 && alpha <= 2, Errc::domain, std::string(where) + ": alpha must be 0, 1 or 2");
}

}  // namespace

std::complex<double> gauss_sum_direct(std::int64_t h, std::int64_t m) {
  require(m >= 1 && m <= 100'000, Errc::range, "gauss_sum_direct: modulus outside [1, 1e5]");
  double re = 0.0, im = 0.0;
  const double two_pi_over_m = 2.0 * std::numbers::pi / static_cast<double>(m);
  const i128 hm = arith::mod_floor(h, m);
  for (std::int64_t x = 0; x < m; ++x) {
    // reduce h x^2 mod m exactly before taking the angle
    const auto r = static_cast<std::int64_t>(hm * x % m * x % m);
    re += std::cos(two_pi_over_m * static_cast<double>(r));
    im += std::sin(two_pi_over_m * static_cast<double>(r));
  }
  return {re, im};
}

GaussBranch gauss_branch(std::int64_t m) {
  require(m >= 1, Errc::argument, "gauss_branch: modulus must be positive");
  if (m & 1) return GaussBranch::odd;
  int e = 0;
  std::int64_t r = m;
  while ((r & 1) == 0) {
    r >>= 1;
    ++e;
  }
  require(r == 1, Errc::domain, "gauss_sum_closed: even modulus must be a power of two");
  if (e % 2 == 0) return GaussBranch::power_of_four;
  require(e >= 3, Errc::domain, "gauss_sum_closed: modulus 2 is not covered");
  return GaussBranch::twice_power_of_four;
}

std::complex<double> gauss_sum_closed(std::int64_t h, std::int64_t m) {
  require(m >= 1, Errc::argument, "gauss_sum_closed: modulus must be positive");
  require(arith::gcd(h, m) == 1, Errc::domain, "gauss_sum_closed: gcd(h, m) != 1");
  const double root = std::sqrt(static_cast<double>(m));
  switch (gauss_branch(m)) {
    case GaussBranch::odd: {
      const int sym = arith::jacobi(h, m);
      return m % 4 == 1 ? std::complex<double>(sym * root, 0.0) : std::complex<double>(0.0, sym * root);
    }
    case GaussBranch::power_of_four:
      ++g_even_branch_uses;
      return {(1.0 + arith::kronecker(-4, h)) * root, 0.0};
    case GaussBranch::twice_power_of_four:
      ++g_even_branch_uses;
      return {arith::kronecker(8, h) * root, arith::kronecker(-8, h) * root};
  }
  return {};
}

std::uint64_t gauss_even_branch_uses() { return g_even_branch_uses.load(); }

Rational S_pt(std::uint64_t p, int t, int alpha, int beta, int unit_class) {
  check_odd_prime(p, "S_pt");
  check_alpha(alpha, "S_pt");
  require(t >= 1, Errc::argument, "S_pt: t must be positive");
  require(beta >= 0, Errc::argument, "S_pt: beta must be nonnegative");
  require(unit_class == 1 || unit_class == -1, Errc::argument, "S_pt: unit class must be +1 or -1");

  const int lead = std::min(alpha + t, 2 * t);
  if (t % 2 == 1) {
    if (beta != t - 1) return Rational(0);
    return Rational(unit_class) * rpow(p, lead + (3 * t - 1) / 2 - 3 * t);
  }
  // even t: Ramanujan sum c_{p^t}(n)
  const int e = lead + t / 2 - 3 * t;
  if (beta < t - 1) return Rational(0);
  if (beta == t - 1) return -rpow(p, e + t - 1);
  return rpow(p, e) * (rpow(p, t) - rpow(p, t - 1));
}

Rational sigma_p_series(std::uint64_t p, int alpha, int beta, int unit_class) {
  Rational sum = 1;
  for (int t = 1; t <= beta + 1; ++t) sum += S_pt(p, t, alpha, beta, unit_class);
  return sum;
}

Rational sigma_p_closed(std::uint64_t p, int alpha, int beta, int chi) {
  check_odd_prime(p, "sigma_p_closed");
  check_alpha(alpha, "sigma_p_closed");
  require(beta >= 0, Errc::argument, "sigma_p_closed: beta must be nonnegative");
  require(chi >= -1 && chi <= 1, Errc::argument, "sigma_p_closed: chi must be -1, 0 or 1");
  const int k = beta / 2;
  const Rational P(p);
  const Rational c(chi);
  if (beta % 2 == 0) {
    switch (alpha) {
      case 0: return 1 + rpow(p, -1) + (c - 1) * rpow(p, -(k + 1));
      case 1: return 2 + (c - 1) * rpow(p, -k);
      default: return k == 0 ? 1 + c : P + 1 + (c - 1) * rpow(p, -(k - 1));
    }
  }
  switch (alpha) {
    case 0: return 1 + rpow(p, -1) - rpow(p, -(k + 1)) - rpow(p, -(k + 2));
    case 1: return 2 - rpow(p, -k) - rpow(p, -(k + 1));
    default: return P + 1 - rpow(p, 1 - k) - rpow(p, -k);
  }
}

LocalDensity local_density(std::uint64_t p, int alpha, int beta, int chi) {
  LocalDensity d;
  d.p = p;
  d.alpha = alpha;
  d.beta = beta;
  d.chi = chi;
  d.value = sigma_p_closed(p, alpha, beta, chi);
  require(d.value >= 0, Errc::consistency, "local_density: negative density");
  return d;
}

Rational sigma_p_bruteforce(std::uint64_t p, int t, std::int64_t m, std::int64_t k) {
  require(arith::is_prime(p), Errc::argument, "sigma_p_bruteforce: p must be prime");
  require(t >= 1, Errc::argument, "sigma_p_bruteforce: t must be positive");
  require(k != 0, Errc::argument, "sigma_p_bruteforce: k must be nonzero");
  require(2.0 * t * std::log(static_cast<double>(p)) <= std::log(1e8) + 1e-12, Errc::range,
          "sigma_p_bruteforce: p^(2t) > 1e8");
  const std::uint64_t q = ipow(p, t);
  require(q * q <= 100'000'000ULL, Errc::range, "sigma_p_bruteforce: p^(2t) > 1e8");

  // roots[r] = #{z mod q : z^2 = r}
  std::vector<std::uint32_t> roots(q, 0);
  for (std::uint64_t z = 0; z < q; ++z) ++roots[z * z % q];

  const auto sq = static_cast<std::int64_t>(q);
  const auto m_mod = static_cast<std::uint64_t>(arith::mod_floor(m, sq));
  const auto fourk = static_cast<std::uint64_t>(arith::mod_floor(arith::mod_floor(k, sq) * 4, sq));
  std::uint64_t count = 0;
  for (std::uint64_t x = 0; x < q; ++x) {
    const std::uint64_t step = fourk * x % q;  // m + 4kxy advances by 4kx per y
    std::uint64_t r = m_mod;
    for (std::uint64_t y = 0; y < q; ++y) {
      count += roots[r];
      r += step;
      if (r >= q) r -= q;
    }
  }
  return Rational(BigInt(count), BigInt(q) * q);
}

Rational dyadic_density(int alpha, std::int64_t m) {
  require(alpha >= 0, Errc::argument, "dyadic_density: alpha must be nonnegative");
  require(m != 0, Errc::argument, "dyadic_density: m must be nonzero");
  static std::mutex mu;
  static std::map<std::pair<int, std::int64_t>, Rational> cache;
  const int beta = arith::valuation(m, 2);
  // the value depends on m only through m mod 2^13
  const std::pair<int, std::int64_t> key{alpha, arith::mod_floor(m, 1 << 13)};
  {
    std::lock_guard<std::mutex> lock(mu);
    if (auto it = cache.find(key); it != cache.end()) return it->second;
  }
  const std::int64_t k = std::int64_t{1} << alpha;
  int t = std::max(1, beta + alpha + 2);
  require(t + 2 <= 13, Errc::range, "dyadic_density: 2-adic valuation too large for brute force");
  Rational a = sigma_p_bruteforce(2, t, m, k);
  Rational b = sigma_p_bruteforce(2, t + 1, m, k);
  for (;;) {
    if (t + 2 > 13) fail(Errc::numeric, "dyadic_density: no stabilization up to 2^13 for m=" + std::to_string(m));
    Rational c = sigma_p_bruteforce(2, t + 2, m, k);
    if (a == b && b == c) break;
    a = std::move(b);
    b = std::move(c);
    ++t;
  }
  std::lock_guard<std::mutex> lock(mu);
  cache.emplace(key, a);
  return a;
}

GlobalSigmaProduct global_sigma_product_detail(std::int64_t m, std::int64_t k, std::int64_t D) {
  require(dirichlet::is_fundamental(D, dirichlet::Convention::standard), Errc::domain,
          "global_sigma_product: D=" + std::to_string(D) + " is not fundamental");
  require(k >= 1, Errc::argument, "global_sigma_product: k must be positive");
  require(m != 0 && m % D == 0, Errc::argument, "global_sigma_product: m must equal D v0^2");
  const std::int64_t ratio = m / D;
  std::uint64_t v0 = 0;
  require(ratio > 0 && arith::is_square(ratio, &v0), Errc::argument, "global_sigma_product: m must equal D v0^2");

  std::vector<std::uint64_t> primes{2};
  for (auto n : {static_cast<std::uint64_t>(k), v0}) {
    for (auto [p, e] : arith::factorize(n).factors) {
      (void)e;
      if (p != 2) primes.push_back(p);
    }
  }
  std::sort(primes.begin(), primes.end());
  primes.erase(std::unique(primes.begin(), primes.end()), primes.end());

  GlobalSigmaProduct out;
  out.L1 = dirichlet::L1_closed_form(D);
  out.euler_part = out.L1 * 6.0 / (std::numbers::pi * std::numbers::pi);
  double product = out.euler_part;
  bool zero = false;
  for (std::uint64_t p : primes) {
    const int alpha = arith::valuation(k, p);
    require(alpha <= 2, Errc::domain,
            "global_sigma_product: ord_" + std::to_string(p) + "(k) > 2");
    const int beta = arith::valuation(m, p);
    const int chi = arith::kronecker(D, static_cast<std::int64_t>(p));
    Rational sigma;
    if (p == 2) {
      sigma = dyadic_density(alpha, m);
    } else {
      int unit = 0;
      if (beta % 2 == 0) {
        std::int64_t unit_part = m;
        for (int i = 0; i < beta; ++i) unit_part /= static_cast<std::int64_t>(p);
        unit = arith::kronecker(unit_part, static_cast<std::int64_t>(p));
      }
      sigma = sigma_p_closed(p, alpha, beta, unit);
    }
    const Rational pr(p);
    const Rational factor = sigma * (1 - Rational(chi) / pr) / (1 - 1 / (pr * pr));
    LocalCorrection corr;
    corr.p = p;
    corr.alpha = alpha;
    corr.beta = beta;
    corr.sigma = to_double(sigma);
    corr.factor = to_double(factor);
    out.corrections.push_back(corr);
    if (sigma == 0) zero = true;
    product *= corr.factor;
  }
  out.value = zero ? 0.0 : product;
  return out;
}

double global_sigma_product(std::int64_t m, std::int64_t k, std::int64_t D) {
  return global_sigma_product_detail(m, k, D).value;
}

}  // namespace qflab::localdens
