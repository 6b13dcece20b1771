#include "core/sieve.hpp"

#include <cmath>
#include <functional>
#include <string>

#include "core/dirichlet.hpp"
#include "core/localdens.hpp"

namespace qflab::sieve {

namespace {

Rational inv_pow(std::uint64_t p, int e) {
  BigInt den = 1;
  for (int i = 0; i < e; ++i) den *= p;
  return Rational(BigInt(1), den);
}

void check_table_args(std::uint64_t p, int beta, int chi, const char* where) {
  require(p > 2 && arith::is_prime(p), Errc::argument, std::string(where) + ": p must be an odd prime");
  require(beta >= 0, Errc::argument, std::string(where) + ": beta must be nonnegative");
  require(chi >= -1 && chi <= 1, Errc::argument, std::string(where) + ": chi must be -1, 0 or 1");
}

Rational omega_even_or_low(std::uint64_t p, int beta, int chi) {
  const Rational c(chi);
  const Rational ip = inv_pow(p, 1);
  if (beta == 0) return (2 + 2 * c - ip - c * ip) / (1 + c * ip);
  if (beta == 1) return Rational(2) / (1 + ip);
  const int k = beta / 2;
  return (3 - ip + (c - 1) * inv_pow(p, k)) / (1 + ip + (c - 1) * inv_pow(p, k + 1));
}

Rational odd_denominator(std::uint64_t p, int k) {
  return 1 + inv_pow(p, 1) - inv_pow(p, k + 1) - inv_pow(p, k + 2);
}

}  // namespace

Rational omega_table(std::uint64_t p, int beta, int chi) {
  check_table_args(p, beta, chi, "omega_table");
  if (beta <= 1 || beta % 2 == 0) return omega_even_or_low(p, beta, chi);
  const int k = beta / 2;
  return (3 - inv_pow(p, 1) - inv_pow(p, k) - inv_pow(p, k + 1)) / odd_denominator(p, k);
}

Rational omega_table_printed(std::uint64_t p, int beta, int chi) {
  check_table_args(p, beta, chi, "omega_table_printed");
  if (beta <= 1 || beta % 2 == 0) return omega_even_or_low(p, beta, chi);
  const int k = beta / 2;
  return (3 - inv_pow(p, 1) - 3 * inv_pow(p, k) + 2 * inv_pow(p, k + 1)) / odd_denominator(p, k);
}

Rational omega_ratio(std::uint64_t p, int beta, int chi) {
  check_table_args(p, beta, chi, "omega_ratio");
  const Rational s0 = localdens::sigma_p_closed(p, 0, beta, chi);
  require(s0 != 0, Errc::degenerate, "omega_ratio: sigma_p(0, beta) = 0");
  const Rational s1 = localdens::sigma_p_closed(p, 1, beta, chi);
  const Rational s2 = localdens::sigma_p_closed(p, 2, beta, chi);
  return (2 * s1 - s2 / Rational(p)) / s0;
}

Rational omega_p(std::uint64_t p, std::int64_t D, std::int64_t v0) {
  require(arith::is_prime(p), Errc::argument, "omega_p: p must be prime");
  require(D < 0, Errc::domain, "omega_p: D must be negative");
  require(v0 >= 1, Errc::argument, "omega_p: v0 must be positive");
  const std::int64_t m = D * v0 * v0;
  if (p == 2) {
    const Rational s0 = localdens::dyadic_density(0, m);
    require(s0 != 0, Errc::degenerate,
            "omega_p: singular density sigma_2(0) = 0 for m=" + std::to_string(m));
    const Rational s1 = localdens::dyadic_density(1, m);
    const Rational s2 = localdens::dyadic_density(2, m);
    return (2 * s1 - s2 / 2) / s0;
  }
  const int beta = arith::valuation(m, p);
  const int chi = arith::kronecker(D, static_cast<std::int64_t>(p));
  return omega_table(p, beta, beta % 2 == 0 ? chi : 0);
}

SieveContext::SieveContext(std::int64_t D, std::int64_t v0) : D_(D), v0_(v0), m_(0) {
  require(D < 0, Errc::domain, "SieveContext: D must be negative");
  require(v0 >= 1 && v0 <= 1'000'000, Errc::argument, "SieveContext: v0 outside [1, 1e6]");
  m_ = D * v0 * v0;
}

const Rational& SieveContext::omega(std::uint64_t p) {
  auto it = omega_.find(p);
  if (it == omega_.end()) it = omega_.emplace(p, omega_p(p, D_, v0_)).first;
  return it->second;
}

Rational SieveContext::omega_of(std::uint64_t d) {
  require(d >= 1 && arith::is_squarefree(d), Errc::argument, "omega_of: d must be squarefree");
  Rational r = 1;
  for (auto [p, e] : arith::factorize(d).factors) {
    (void)e;
    r *= omega(p);
  }
  return r;
}

Rational SieveContext::g_of(std::uint64_t l) {
  require(l >= 1 && arith::is_squarefree(l), Errc::argument, "g_of: l must be squarefree");
  Rational r = 1;
  for (auto [p, e] : arith::factorize(l).factors) {
    (void)e;
    const Rational& w = omega(p);
    require(w < Rational(p), Errc::degenerate,
            "g_of: omega(" + std::to_string(p) + ") >= " + std::to_string(p) + " for D=" + std::to_string(D_));
    r *= w / (Rational(p) - w);
  }
  return r;
}

Rational SieveContext::G_of_Y(std::uint64_t Y) {
  require(Y >= 1 && Y <= 100'000, Errc::range, "G_of_Y: Y outside [1, 1e5]");
  Rational sum = 0;
  for (std::uint64_t l = 1; l <= Y; ++l) {
    if (!arith::is_squarefree(l)) continue;
    bool skip = false;
    for (auto [p, e] : arith::factorize(l).factors) {
      (void)e;
      if (degenerate(p)) skip = true;
    }
    if (!skip) sum += g_of(l);
  }
  return sum;
}

double SieveTable::omega_of(std::uint64_t d) const {
  double r = 1.0;
  for (auto [p, e] : arith::factorize(d).factors) {
    (void)e;
    auto it = omega.find(p);
    if (it == omega.end()) return 0.0;
    r *= to_double(it->second);
  }
  return r;
}

std::vector<std::uint64_t> primes_below(std::uint64_t Y) {
  if (Y <= 2) return {};
  return arith::primes_up_to(Y - 1);
}

SieveTable selberg_table(SieveContext& ctx, std::uint64_t Y) {
  require(Y >= 2 && Y <= 100'000, Errc::range, "selberg_table: Y outside [2, 1e5]");
  SieveTable t;
  t.D = ctx.D();
  t.v0 = ctx.v0();
  t.m = ctx.m();
  t.Y = Y;
  t.level = std::sqrt(static_cast<double>(Y));
  for (std::uint64_t p : primes_below(Y)) {
    const Rational& w = ctx.omega(p);
    if (w >= Rational(p)) {
      t.degenerate_primes.push_back(p);
    } else if (w == 0) {
      t.empty_primes.push_back(p);
    } else {
      t.support_primes.push_back(p);
      t.omega.emplace(p, w);
    }
  }

  // squarefree d <= sqrt(Y) over the support, with g(d) and the prime list of d
  struct Entry {
    std::uint64_t d;
    Rational g;
    Rational lift;  // prod p / (p - omega(p))
    int sign;
  };
  std::vector<Entry> entries;
  const auto& sp = t.support_primes;
  std::function<void(std::size_t, std::uint64_t, Rational, Rational, int)> build =
      [&](std::size_t i, std::uint64_t d, Rational g, Rational lift, int sign) {
        entries.push_back({d, g, lift, sign});
        for (std::size_t j = i; j < sp.size(); ++j) {
          const std::uint64_t nd = d * sp[j];
          if (nd * nd > Y) break;
          const Rational& w = t.omega.at(sp[j]);
          const Rational P(sp[j]);
          build(j + 1, nd, g * w / (P - w), lift * P / (P - w), -sign);
        }
      };
  build(0, 1, Rational(1), Rational(1), 1);
  std::sort(entries.begin(), entries.end(), [](const Entry& a, const Entry& b) { return a.d < b.d; });

  t.G_level = 0;
  for (const auto& e : entries) t.G_level += e.g;

  for (const auto& e : entries) {
    Rational Gd = 0;
    for (const auto& l : entries) {
      if (l.d * e.d * l.d * e.d > Y) break;
      if (arith::gcd(static_cast<std::int64_t>(l.d), static_cast<std::int64_t>(e.d)) == 1) Gd += l.g;
    }
    const Rational lam = Rational(e.sign) * e.lift * Gd / t.G_level;
    if (lam != 0) t.lambda.emplace(e.d, to_double(lam));
  }
  require(t.lambda.count(1) && t.lambda.at(1) == 1.0, Errc::consistency, "selberg_table: lambda_1 != 1");

  for (auto [d1, l1] : t.lambda) {
    for (auto [d2, l2] : t.lambda) {
      const auto g = static_cast<std::uint64_t>(arith::gcd(static_cast<std::int64_t>(d1), static_cast<std::int64_t>(d2)));
      t.mu_plus[d1 / g * d2] += l1 * l2;
    }
  }
  return t;
}

double mu_plus_of(const SieveTable& table, std::uint64_t d) {
  auto it = table.mu_plus.find(d);
  return it == table.mu_plus.end() ? 0.0 : it->second;
}

SiftedCount sifted_count(const lattice::SolutionSet& sols, std::uint64_t Y) {
  const auto primes = primes_below(Y);
  auto rough = [&](std::int64_t v) {
    for (std::uint64_t p : primes) {
      if (static_cast<std::uint64_t>(v) % p == 0) return false;
    }
    return true;
  };
  SiftedCount out;
  out.joint = sols.weighted_count([&](const lattice::Solution& s) {
    for (std::uint64_t p : primes) {
      const auto x = static_cast<std::uint64_t>(s.x) % p, y = static_cast<std::uint64_t>(s.y) % p;
      if (x * y % p == 0) return false;
    }
    return true;
  });
  out.separate = sols.weighted_count([&](const lattice::Solution& s) { return rough(s.x) && rough(s.y); });
  return out;
}

double sifted_count_direct(std::int64_t m, std::uint64_t Y, std::int64_t X) {
  return sifted_count(lattice::enumerate_solutions(m, X), Y).joint;
}

double A_d(const lattice::SolutionSet& sols, std::uint64_t d) {
  require(d >= 1, Errc::argument, "A_d: d must be positive");
  return sols.weighted_count([d](const lattice::Solution& s) {
    return (static_cast<std::uint64_t>(s.x) % d) * (static_cast<std::uint64_t>(s.y) % d) % d == 0;
  });
}

double A_d1d2(const lattice::SolutionSet& sols, std::uint64_t d1, std::uint64_t d2) {
  require(d1 >= 1 && d2 >= 1, Errc::argument, "A_d1d2: d1, d2 must be positive");
  return sols.weighted_count([d1, d2](const lattice::Solution& s) {
    return static_cast<std::uint64_t>(s.x) % d1 == 0 && static_cast<std::uint64_t>(s.y) % d2 == 0;
  });
}

SieveBoundReport sieve_upper_bound(const SieveTable& table, const lattice::SolutionSet& sols) {
  require(table.m == sols.m, Errc::argument, "sieve_upper_bound: table and points belong to different m");
  SieveBoundReport r;
  r.m = sols.m;
  r.X = sols.X;
  r.Y = table.Y;
  const auto sifted = sifted_count(sols, table.Y);
  r.sifted = sifted.joint;
  r.sifted_separate = sifted.separate;
  r.A1 = sols.weighted_count();

  long double direct = 0.0L, incex = 0.0L;
  for (auto [d, mp] : table.mu_plus) {
    if (mp == 0.0) continue;
    ++r.terms;
    direct += static_cast<long double>(mp) * A_d(sols, d);
    // mu(d) sum_{lcm(d1,d2)=d} mu(d1) mu(d2) A_{d1,d2}
    const auto divs = arith::divisors(d);
    long double acc = 0.0L;
    for (std::uint64_t d1 : divs) {
      for (std::uint64_t d2 : divs) {
        const auto g = static_cast<std::uint64_t>(arith::gcd(static_cast<std::int64_t>(d1), static_cast<std::int64_t>(d2)));
        if (d1 / g * d2 != d) continue;
        acc += arith::mobius(d1) * arith::mobius(d2) * static_cast<long double>(A_d1d2(sols, d1, d2));
      }
    }
    incex += static_cast<long double>(mp) * arith::mobius(d) * acc;
  }
  r.bound = static_cast<double>(direct);
  r.bound_incex = static_cast<double>(incex);

  long double squares = 0.0L;
  for (const auto& s : sols.points) {
    long double inner = 0.0L;
    for (auto [d, lam] : table.lambda) {
      if ((static_cast<std::uint64_t>(s.x) % d) * (static_cast<std::uint64_t>(s.y) % d) % d == 0) inner += lam;
    }
    squares += static_cast<long double>(s.mult) * s.weight * inner * inner;
  }
  r.bound_squares = static_cast<double>(squares);
  return r;
}

SieveBoundReport sieve_upper_bound(std::int64_t D, std::int64_t v0, std::uint64_t Y, std::int64_t X) {
  SieveContext ctx(D, v0);
  const auto table = selberg_table(ctx, Y);
  return sieve_upper_bound(table, lattice::enumerate_solutions(ctx.m(), X));
}

GLowerReport G_lower_check(std::int64_t D, std::int64_t v0, std::uint64_t Y) {
  require(D < -1, Errc::domain, "G_lower_check: need D < -1");
  SieveContext ctx(D, v0);
  GLowerReport r;
  r.D = D;
  r.v0 = v0;
  r.Y = Y;
  r.G = to_double(ctx.G_of_Y(Y));
  r.L1 = dirichlet::L1_closed_form(D);
  const double lg = std::log(static_cast<double>(-D));
  const double phi_ratio =
      static_cast<double>(arith::euler_phi(static_cast<std::uint64_t>(v0))) / static_cast<double>(v0);
  r.scale = r.L1 * r.L1 * lg * lg * phi_ratio;
  r.ratio = r.G / r.scale;
  return r;
}

std::uint64_t level_from_delta(std::int64_t D, double delta) {
  require(D < 0, Errc::domain, "level_from_delta: D must be negative");
  require(delta > 0.0 && delta < 1.0, Errc::argument, "level_from_delta: delta must lie in (0, 1)");
  const auto Y = static_cast<std::uint64_t>(std::llround(std::pow(static_cast<double>(-D), delta)));
  return std::max<std::uint64_t>(Y, 2);
}

}  // namespace qflab::sieve
