#include "core/dirichlet.hpp"

#include <cmath>
#include <numbers>
#include <string>

#include "core/qforms.hpp"

namespace qflab::dirichlet {

bool is_fundamental(std::int64_t D, Convention convention) {
  if (D >= 0) return false;
  const auto absD = static_cast<std::uint64_t>(-D);
  const bool sqfree_1mod4 = arith::mod_floor(D, 4) == 1 && arith::is_squarefree(absD);
  switch (convention) {
    case Convention::squarefree_1mod4:
      return sqfree_1mod4;
    case Convention::with_minus4:
      return sqfree_1mod4 || D == -4;
    case Convention::standard: {
      if (sqfree_1mod4) return true;
      if (arith::mod_floor(D, 4) != 0) return false;
      const std::int64_t m = D / 4;
      const std::int64_t r = arith::mod_floor(m, 4);
      return (r == 2 || r == 3) && arith::is_squarefree(static_cast<std::uint64_t>(-m));
    }
  }
  return false;
}

std::vector<std::int64_t> fundamental_discriminants(std::int64_t lo, std::int64_t hi, Convention convention) {
  require(lo < hi, Errc::argument, "fundamental_discriminants: empty range");
  std::vector<std::int64_t> out;
  for (std::int64_t D = std::min<std::int64_t>(hi - 1, -1); D > lo; --D) {
    if (is_fundamental(D, convention)) out.push_back(D);
  }
  return out;
}

int unit_count(std::int64_t D) {
  if (D == -3) return 6;
  if (D == -4) return 4;
  return 2;
}

Discriminant make_discriminant(std::int64_t D, L1Method method) {
  Discriminant d;
  d.D = D;
  d.fundamental = is_fundamental(D, Convention::squarefree_1mod4);
  d.w = unit_count(D);
  d.h = qforms::enumerate_classes(D).h();
  d.method = method;
  d.L1 = method == L1Method::class_number
             ? 2.0 * std::numbers::pi * static_cast<double>(d.h) / (d.w * std::sqrt(static_cast<double>(-D)))
             : L1_from_character_sum(D, static_cast<std::uint64_t>(std::max<std::int64_t>(-D, 100'000)));
  require(d.L1 > 0.0, Errc::consistency, "L(1, chi_D) must be positive");
  return d;
}

std::uint64_t r_total(std::uint64_t n, std::int64_t D) {
  require(n >= 1, Errc::argument, "r_total: n must be positive");
  require(D < 0, Errc::domain, "r_total: D must be negative");
  std::int64_t sum = 0;
  for (std::uint64_t d : arith::divisors(n)) sum += arith::kronecker(D, static_cast<std::int64_t>(d));
  require(sum >= 0, Errc::consistency, "r_total: negative divisor sum");
  return static_cast<std::uint64_t>(unit_count(D)) * static_cast<std::uint64_t>(sum);
}

double L1_from_class_number(std::int64_t D) {
  require(D < 0, Errc::domain, "L1_from_class_number: D must be negative");
  const auto h = qforms::enumerate_classes(D).h();
  return 2.0 * std::numbers::pi * static_cast<double>(h) / (unit_count(D) * std::sqrt(static_cast<double>(-D)));
}

double L1_closed_form(std::int64_t D) {
  require(is_fundamental(D, Convention::standard), Errc::domain,
          "L1_closed_form: D=" + std::to_string(D) + " is not a fundamental discriminant");
  const auto q = static_cast<std::uint64_t>(-D);
  std::int64_t weighted = 0;
  for (std::uint64_t a = 1; a < q; ++a) {
    weighted += arith::kronecker(D, static_cast<std::int64_t>(a)) * static_cast<std::int64_t>(a);
  }
  const double qd = static_cast<double>(q);
  return -std::numbers::pi * static_cast<double>(weighted) / (qd * std::sqrt(qd));
}

double L1_from_character_sum(std::int64_t D, std::uint64_t terms) {
  require(is_fundamental(D, Convention::standard), Errc::domain,
          "L1_from_character_sum: D=" + std::to_string(D) + " is not a fundamental discriminant");
  const auto q = static_cast<std::uint64_t>(-D);
  require(terms >= q, Errc::argument, "L1_from_character_sum: need terms >= |D|");

  std::vector<int> chi(q);
  for (std::uint64_t a = 0; a < q; ++a) chi[a] = arith::kronecker(D, static_cast<std::int64_t>(a));

  // Exact finite evaluation for an odd primitive character.
  std::int64_t weighted = 0;
  std::int64_t partial = 0;
  std::int64_t max_partial = 0;
  for (std::uint64_t a = 1; a < q; ++a) {
    weighted += chi[a] * static_cast<std::int64_t>(a);
    partial += chi[a];
    max_partial = std::max<std::int64_t>(max_partial, partial < 0 ? -partial : partial);
  }
  const double qd = static_cast<double>(q);
  const double closed = -std::numbers::pi * static_cast<double>(weighted) / (qd * std::sqrt(qd));

  // Direct partial summation with Kahan compensation.
  double sum = 0.0, comp = 0.0;
  for (std::uint64_t n = 1; n <= terms; ++n) {
    const int c = chi[n % q];
    if (c == 0) continue;
    const double term = c / static_cast<double>(n) - comp;
    const double next = sum + term;
    comp = (next - sum) - term;
    sum = next;
  }
  const double tail_bound = 2.0 * static_cast<double>(max_partial) / static_cast<double>(terms + 1);
  const double gap = std::fabs(closed - sum);
  require(gap <= tail_bound + 1e-12 * static_cast<double>(terms), Errc::consistency,
          "L1_from_character_sum: closed form and partial sum disagree for D=" + std::to_string(D));
  return closed;
}

SplitCount split_prime_count(std::int64_t D, std::uint64_t X) {
  require(D < 0, Errc::domain, "split_prime_count: D must be negative");
  SplitCount out;
  if (X < 2) return out;
  const auto window = arith::primes_in_window(X);
  out.pi = window.pi();
  for (std::uint64_t p : window.primes) {
    const int c = arith::kronecker(D, static_cast<std::int64_t>(p));
    if (c == 1) ++out.pi_D;
    if (c == 0) ++out.ramified;
  }
  return out;
}

FundamentalPart fundamental_part(std::int64_t m) {
  require(m < 0, Errc::domain, "fundamental_part: m must be negative");
  std::int64_t kernel = 1, root = 1;
  for (auto [p, e] : arith::factorize(static_cast<std::uint64_t>(-m)).factors) {
    const auto sp = static_cast<std::int64_t>(p);
    if (e % 2) kernel *= sp;
    for (int i = 0; i < e / 2; ++i) root *= sp;
  }
  FundamentalPart out;
  if (arith::mod_floor(-kernel, 4) == 1) {
    out.D = -kernel;
    out.v0 = root;
  } else {
    require(root % 2 == 0, Errc::domain,
            "fundamental_part: m=" + std::to_string(m) + " is not D v0^2 for a fundamental D");
    out.D = -4 * kernel;
    out.v0 = root / 2;
  }
  return out;
}

}  // namespace qflab::dirichlet
