#pragma once

#include <compare>
#include <cstdint>
#include <optional>
#include <vector>

#include "core/arith.hpp"

namespace qflab::qforms {

inline constexpr std::int64_t kMaxAbsDiscriminant = 100'000'000;

// Ax^2 + Bxy + Cy^2 with negative discriminant.
struct Form {
  std::int64_t A = 0;
  std::int64_t B = 0;
  std::int64_t C = 0;

  std::int64_t discriminant() const { return B * B - 4 * A * C; }
  i128 eval(std::int64_t x, std::int64_t y) const {
    return static_cast<i128>(A) * x * x + static_cast<i128>(B) * x * y +
           static_cast<i128>(C) * y * y;
  }

  auto operator<=>(const Form&) const = default;
};

// Reduced positive definite representative of a proper equivalence class.
struct FormClass {
  Form form;
  std::int64_t D = 0;
  int aut_weight = 2;  // number of proper automorphisms
  bool primitive = true;

  std::int64_t A() const { return form.A; }
  std::int64_t B() const { return form.B; }
  std::int64_t C() const { return form.C; }

  bool operator==(const FormClass& other) const { return form == other.form; }
  auto operator<=>(const FormClass& other) const { return form <=> other.form; }
};

struct ClassGroupTable {
  std::int64_t D = 0;
  std::vector<FormClass> classes;  // sorted by (A, B, C)

  std::size_t h() const { return classes.size(); }
  std::size_t primitive_count() const;

  // Index of the class of a reduced form, or -1.
  std::ptrdiff_t index_of(const Form& reduced) const;
};

bool is_reduced(const Form& f);
FormClass reduce(const Form& f);

// Proper automorphism count of a reduced form: 6, 4 or 2.
int automorphism_weight(const Form& reduced);

ClassGroupTable enumerate_classes(std::int64_t D);

// Reduced classes representing the prime p: {C, C^-1} (size 1 or 2), empty when p is inert.
std::vector<FormClass> prime_to_classes(std::uint64_t p, std::int64_t D);

// The class of (p, z, (z^2-D)/4p) for the canonical root z; absent when p is inert.
std::optional<FormClass> canonical_prime_class(std::uint64_t p, std::int64_t D);

struct LeastPrime {
  std::uint64_t prime = 0;
  std::int64_t x = 0;
  std::int64_t y = 0;
};

// Smallest prime value Q(x, y) <= bound, by ascending-value lattice enumeration.
std::optional<LeastPrime> least_prime_represented(const FormClass& Q, std::uint64_t bound);

// #{(x, y) in Z^2 : Q(x, y) = n}.
std::uint64_t representation_count(std::uint64_t n, const Form& Q);

struct HeegnerPoint {
  std::int64_t re_num = 0;  // real part re_num / re_den, in lowest terms
  std::int64_t re_den = 1;
  double re = 0.0;
  double im = 0.0;
};

HeegnerPoint heegner_point(const FormClass& Q);

// Share of classes whose reduced coefficients satisfy max(|A|,|B|,|C|) < sqrt|D| * psi.
double coefficient_bound_fraction(std::int64_t D, double psi);
double coefficient_bound_fraction(const ClassGroupTable& table, double psi);

}  // namespace qflab::qforms
