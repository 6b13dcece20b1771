#pragma once

#include <complex>
#include <cstdint>
#include <vector>

#include "core/arith.hpp"

namespace qflab::localdens {

// Local densities of the ternary quadric z^2 - 4kxy = m.
//
// At an odd prime p the quadric is p-adically equivalent to
// x1^2 + p^alpha (x2^2 - x3^2), so its density depends only on
// alpha = ord_p(k), beta = ord_p(m) and the Legendre class of the unit part of m.

// Sum over x mod m of e(h x^2 / m).
std::complex<double> gauss_sum_direct(std::int64_t h, std::int64_t m);

enum class GaussBranch { odd, power_of_four, twice_power_of_four };

GaussBranch gauss_branch(std::int64_t m);

// Closed-form evaluation for gcd(h, m) = 1 and m odd, 4^a or 2*4^a (a >= 1).
std::complex<double> gauss_sum_closed(std::int64_t h, std::int64_t m);

// Number of gauss_sum_closed calls that took an even-modulus branch.
std::uint64_t gauss_even_branch_uses();

// Term S(p^t) of the local singular series. unit_class is the Legendre symbol of m / p^beta.
Rational S_pt(std::uint64_t p, int t, int alpha, int beta, int unit_class);

// 1 + sum_{t <= beta + 1} S(p^t); all later terms vanish.
Rational sigma_p_series(std::uint64_t p, int alpha, int beta, int unit_class);

struct LocalDensity {
  std::uint64_t p = 0;
  int alpha = 0;
  int beta = 0;
  int chi = 0;
  Rational value;
};

// Case table of sigma_p(alpha, beta) at an odd prime; chi is ignored for odd beta.
Rational sigma_p_closed(std::uint64_t p, int alpha, int beta, int chi);
LocalDensity local_density(std::uint64_t p, int alpha, int beta, int chi);

// #{(x, y, z) mod p^t : z^2 - 4kxy = m} / p^(2t); requires p^(2t) <= 1e8.
Rational sigma_p_bruteforce(std::uint64_t p, int t, std::int64_t m, std::int64_t k);

// Dyadic density of z^2 - 2^(alpha+2) xy = m: brute force until three consecutive
// moduli agree.
Rational dyadic_density(int alpha, std::int64_t m);

struct LocalCorrection {
  std::uint64_t p = 0;
  int alpha = 0;
  int beta = 0;
  double sigma = 0.0;   // sigma_p
  double factor = 0.0;  // sigma_p (1 - chi(p)/p) / (1 - 1/p^2)
};

struct GlobalSigmaProduct {
  double value = 0.0;
  double L1 = 0.0;
  double euler_part = 0.0;  // L(1, chi_D) * 6 / pi^2
  std::vector<LocalCorrection> corrections;
};

// prod_p sigma_p(V_{m,k}) for m = D v0^2, rearranged as
// L(1, chi_D) (6/pi^2) prod_{p | 2 k v0} sigma_p (1 - chi(p)/p) / (1 - 1/p^2).
GlobalSigmaProduct global_sigma_product_detail(std::int64_t m, std::int64_t k, std::int64_t D);
double global_sigma_product(std::int64_t m, std::int64_t k, std::int64_t D);

}  // namespace qflab::localdens
