#pragma once

#include <cstdint>
#include <vector>

#include "core/arith.hpp"

namespace qflab::dirichlet {

// Which negative discriminants count as "fundamental" for a scan.
enum class Convention {
  squarefree_1mod4,  // D squarefree and D = 1 mod 4
  with_minus4,       // the above together with D = -4
  standard,          // discriminants of imaginary quadratic fields
};

bool is_fundamental(std::int64_t D, Convention convention = Convention::squarefree_1mod4);

// Discriminants with lo < D < hi, ordered by increasing |D|.
std::vector<std::int64_t> fundamental_discriminants(std::int64_t lo, std::int64_t hi, Convention convention);

// Unit count w_D: 6 for D = -3, 4 for D = -4, 2 otherwise.
int unit_count(std::int64_t D);

enum class L1Method { class_number, character_sum };

struct Discriminant {
  std::int64_t D = 0;
  bool fundamental = false;  // squarefree and 1 mod 4
  int w = 2;
  std::size_t h = 0;
  double L1 = 0.0;
  L1Method method = L1Method::class_number;
};

Discriminant make_discriminant(std::int64_t D, L1Method method = L1Method::class_number);

// w_D * sum_{d | n} chi_D(d).
std::uint64_t r_total(std::uint64_t n, std::int64_t D);

// 2 pi h(D) / (w_D sqrt|D|).
double L1_from_class_number(std::int64_t D);

// -(pi / |D|^{3/2}) sum_{a < |D|} chi_D(a) a for a fundamental discriminant D.
double L1_closed_form(std::int64_t D);

// L1_closed_form, checked against sum_{n <= terms} chi_D(n)/n
// with the Abel-summation tail bound; a disagreement throws a consistency error.
double L1_from_character_sum(std::int64_t D, std::uint64_t terms);

struct SplitCount {
  std::uint64_t pi_D = 0;      // chi_D(p) = +1
  std::uint64_t pi = 0;        // all primes in [X, 2X)
  std::uint64_t ramified = 0;  // chi_D(p) = 0
};

SplitCount split_prime_count(std::int64_t D, std::uint64_t X);

struct FundamentalPart {
  std::int64_t D = 0;   // fundamental discriminant (standard convention)
  std::int64_t v0 = 1;  // m = D v0^2
};

// Writes a negative m as D v0^2; throws a domain error when no such D exists.
FundamentalPart fundamental_part(std::int64_t m);

}  // namespace qflab::dirichlet
