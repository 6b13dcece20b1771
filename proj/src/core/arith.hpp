#pragma once

#include <cstdint>
#include <optional>
#include <utility>
#include <vector>

#include <boost/multiprecision/gmp.hpp>

#include "core/errors.hpp"

namespace qflab {

using i128 = __int128;
using Rational = boost::multiprecision::mpq_rational;
using BigInt = boost::multiprecision::mpz_int;

double to_double(const Rational& q);

namespace arith {

inline constexpr std::uint64_t kMaxWindowX = 1'000'000'000ULL;
inline constexpr std::uint64_t kMaxFactorN = 1'000'000'000'000ULL;

// Complete, increasing list of the primes in [X, 2X).
struct PrimeWindow {
  std::uint64_t X = 0;
  std::vector<std::uint64_t> primes;

  std::size_t pi() const { return primes.size(); }
};

PrimeWindow primes_in_window(std::uint64_t X);

// Primes p <= n by a plain Eratosthenes sieve.
std::vector<std::uint64_t> primes_up_to(std::uint64_t n);

// Deterministic Miller-Rabin, exact for all 64-bit inputs.
bool is_prime(std::uint64_t n);

std::uint64_t mulmod(std::uint64_t a, std::uint64_t b, std::uint64_t m);
std::uint64_t powmod(std::uint64_t base, std::uint64_t exp, std::uint64_t m);

// Jacobi symbol (a/n) for odd n > 0.
int jacobi(std::int64_t a, std::int64_t n);

// General Kronecker symbol (D/n), any D and n.
int kronecker(std::int64_t D, std::int64_t n);

// Square root of a modulo an odd prime p; the returned root lies in [0, p/2].
std::optional<std::int64_t> sqrt_mod(std::int64_t a, std::int64_t p);

struct Factorization {
  std::uint64_t n = 1;
  std::vector<std::pair<std::uint64_t, int>> factors;  // (prime, exponent), primes increasing
};

Factorization factorize(std::uint64_t n);
int mobius(std::uint64_t n);
std::uint64_t euler_phi(std::uint64_t n);
std::vector<std::uint64_t> divisors(std::uint64_t n);  // increasing

bool is_squarefree(std::uint64_t n);

// p-adic valuation of a nonzero integer.
int valuation(i128 n, std::uint64_t p);

std::uint64_t isqrt(std::uint64_t n);
std::uint64_t isqrt128(i128 n);

// True iff n >= 0 is a perfect square; the root is stored when requested.
bool is_square(i128 n, std::uint64_t* root = nullptr);

std::int64_t gcd(std::int64_t a, std::int64_t b);

// Floor of the integer division, correct for negative numerators.
inline std::int64_t floor_div(std::int64_t a, std::int64_t b) {
  std::int64_t q = a / b;
  if ((a % b != 0) && ((a < 0) != (b < 0))) --q;
  return q;
}

inline std::int64_t mod_floor(std::int64_t a, std::int64_t m) {
  std::int64_t r = a % m;
  return r < 0 ? r + m : r;
}

}  // namespace arith
}  // namespace qflab
