#pragma once

#include <cstdint>
#include <map>
#include <vector>

#include "core/arith.hpp"
#include "core/lattice.hpp"

namespace qflab::sieve {

// Sieve density at an odd prime from the beta-case table, beta = ord_p(D v0^2).
Rational omega_table(std::uint64_t p, int beta, int chi);

// Variant whose beta = 2k+1 (k >= 1) numerator is 3 - 1/p - 3/p^k + 2/p^(k+1).
// It disagrees with omega_ratio; kept only so the mismatch stays visible.
Rational omega_table_printed(std::uint64_t p, int beta, int chi);

// (2 sigma_p(1, beta) - sigma_p(2, beta)/p) / sigma_p(0, beta) from local densities.
Rational omega_ratio(std::uint64_t p, int beta, int chi);

// omega(p) for m = D v0^2. Odd p use the table, p = 2 the dyadic ratio.
Rational omega_p(std::uint64_t p, std::int64_t D, std::int64_t v0);

// Densities for one (D, v0); omega values are cached per prime.
class SieveContext {
 public:
  SieveContext(std::int64_t D, std::int64_t v0);

  std::int64_t D() const { return D_; }
  std::int64_t v0() const { return v0_; }
  std::int64_t m() const { return m_; }

  const Rational& omega(std::uint64_t p);
  bool degenerate(std::uint64_t p) { return omega(p) >= Rational(p); }

  Rational omega_of(std::uint64_t d);  // multiplicative over squarefree d
  Rational g_of(std::uint64_t l);      // omega(l)/l prod (1 - omega(p)/p)^-1

  // sum of g(l) over squarefree l <= Y; l with a degenerate prime factor are skipped
  Rational G_of_Y(std::uint64_t Y);

 private:
  std::int64_t D_;
  std::int64_t v0_;
  std::int64_t m_;
  std::map<std::uint64_t, Rational> omega_;
};

struct SieveTable {
  std::int64_t D = 0;
  std::int64_t v0 = 1;
  std::int64_t m = 0;
  std::uint64_t Y = 2;
  double level = 1.0;  // sqrt(Y)
  std::vector<std::uint64_t> support_primes;     // p < Y with 0 < omega(p) < p
  std::vector<std::uint64_t> empty_primes;       // p < Y with omega(p) = 0
  std::vector<std::uint64_t> degenerate_primes;  // p < Y with omega(p) >= p
  Rational G_level;                              // G(sqrt Y) over the support
  std::map<std::uint64_t, double> lambda;        // d -> lambda_d, lambda_1 = 1
  std::map<std::uint64_t, double> mu_plus;       // d -> sum_{lcm(d1,d2)=d} lambda_d1 lambda_d2
  std::map<std::uint64_t, Rational> omega;       // support primes only

  double omega_of(std::uint64_t d) const;
};

// Selberg weights
//   lambda_d = mu(d) prod_{p|d} p/(p - omega(p)) G_d(xi/d) / G(xi),  xi = sqrt(Y),
// with G_d the sum of g(l) over squarefree l <= xi/d coprime to d, all over the
// primes p < Y with 0 < omega(p) < p.
SieveTable selberg_table(SieveContext& ctx, std::uint64_t Y);

double mu_plus_of(const SieveTable& table, std::uint64_t d);

// Primes p < Y.
std::vector<std::uint64_t> primes_below(std::uint64_t Y);

struct SiftedCount {
  double joint = 0.0;     // gcd(xy, P(Y)) = 1
  double separate = 0.0;  // gcd(x, P(Y)) = gcd(y, P(Y)) = 1
};

SiftedCount sifted_count(const lattice::SolutionSet& sols, std::uint64_t Y);
double sifted_count_direct(std::int64_t m, std::uint64_t Y, std::int64_t X);

struct SieveBoundReport {
  std::int64_t m = 0;
  std::int64_t X = 0;
  std::uint64_t Y = 0;
  double sifted = 0.0;           // joint condition
  double sifted_separate = 0.0;  // x, y separately
  double bound = 0.0;            // sum mu+(d) A_d, A_d by direct scan
  double bound_incex = 0.0;      // A_d from A_{d1,d2} by inclusion-exclusion
  double bound_squares = 0.0;    // sum over points of w (sum_{d | xy} lambda_d)^2
  double A1 = 0.0;
  std::size_t terms = 0;         // d with mu+(d) != 0
};

SieveBoundReport sieve_upper_bound(const SieveTable& table, const lattice::SolutionSet& sols);
SieveBoundReport sieve_upper_bound(std::int64_t D, std::int64_t v0, std::uint64_t Y, std::int64_t X);

// Weighted count of points with d | xy, and with d1 | x, d2 | y.
double A_d(const lattice::SolutionSet& sols, std::uint64_t d);
double A_d1d2(const lattice::SolutionSet& sols, std::uint64_t d1, std::uint64_t d2);

struct GLowerReport {
  std::int64_t D = 0;
  std::int64_t v0 = 1;
  std::uint64_t Y = 0;
  double G = 0.0;
  double L1 = 0.0;
  double scale = 0.0;  // L(1)^2 log^2|D| phi(v0)/v0
  double ratio = 0.0;
};

GLowerReport G_lower_check(std::int64_t D, std::int64_t v0, std::uint64_t Y);

// Y = |D|^delta, rounded, at least 2.
std::uint64_t level_from_delta(std::int64_t D, double delta);

}  // namespace qflab::sieve
