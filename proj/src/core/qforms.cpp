#include "core/qforms.hpp"

#include <algorithm>
#include <cmath>
#include <queue>
#include <string>
#include <tuple>

namespace qflab::qforms {

namespace {

void check_discriminant(std::int64_t D, const char* where) {
  require(D < 0, Errc::domain, std::string(where) + ": discriminant must be negative");
  const std::int64_t r = arith::mod_floor(D, 4);
  require(r == 0 || r == 1, Errc::domain,
          std::string(where) + ": D=" + std::to_string(D) + " is not 0 or 1 mod 4");
}

FormClass make_class(const Form& reduced) {
  FormClass fc;
  fc.form = reduced;
  fc.D = reduced.discriminant();
  fc.aut_weight = automorphism_weight(reduced);
  fc.primitive = arith::gcd(arith::gcd(reduced.A, reduced.B), reduced.C) == 1;
  return fc;
}

}  // namespace

std::size_t ClassGroupTable::primitive_count() const {
  return static_cast<std::size_t>(
      std::count_if(classes.begin(), classes.end(), [](const FormClass& c) { return c.primitive; }));
}

std::ptrdiff_t ClassGroupTable::index_of(const Form& reduced) const {
  auto it = std::lower_bound(classes.begin(), classes.end(), reduced,
                             [](const FormClass& c, const Form& f) { return c.form < f; });
  if (it == classes.end() || it->form != reduced) return -1;
  return it - classes.begin();
}

bool is_reduced(const Form& f) {
  if (f.A <= 0) return false;
  const std::int64_t absB = f.B < 0 ? -f.B : f.B;
  if (absB > f.A || f.A > f.C) return false;
  if ((absB == f.A || f.A == f.C) && f.B < 0) return false;
  return true;
}

int automorphism_weight(const Form& r) {
  if (r.A == r.B && r.B == r.C) return 6;
  if (r.B == 0 && r.A == r.C) return 4;
  return 2;
}

FormClass reduce(const Form& input) {
  const i128 disc = static_cast<i128>(input.B) * input.B - static_cast<i128>(4) * input.A * input.C;
  require(disc < 0, Errc::domain, "reduce: discriminant must be negative");
  require(input.A > 0, Errc::domain, "reduce: form must be positive definite (A > 0)");

  i128 A = input.A, B = input.B, C = input.C;
  for (;;) {
    if (B > A || B <= -A) {
      // x -> x + k y moves B into (-A, A].
      i128 k = (A - B) / (2 * A);
      if ((A - B) % (2 * A) != 0 && (A - B) < 0) --k;
      const i128 newB = B + 2 * k * A;
      C = A * k * k + B * k + C;
      B = newB;
    }
    if (A > C) {
      std::swap(A, C);
      B = -B;
      continue;
    }
    break;
  }
  if (A == C && B < 0) B = -B;
  const Form f{static_cast<std::int64_t>(A), static_cast<std::int64_t>(B), static_cast<std::int64_t>(C)};
  return make_class(f);
}

ClassGroupTable enumerate_classes(std::int64_t D) {
  check_discriminant(D, "enumerate_classes");
  require(-D <= kMaxAbsDiscriminant, Errc::range, "enumerate_classes: |D| > 1e8");
  ClassGroupTable table;
  table.D = D;
  const std::int64_t absD = -D;
  const std::int64_t parity = absD & 1;
  for (std::int64_t a = 1; 3 * a * a <= absD; ++a) {
    std::int64_t b = -a + 1;
    if (((b % 2) + 2) % 2 != parity) ++b;
    for (; b <= a; b += 2) {
      const std::int64_t num = b * b - D;
      if (num % (4 * a) != 0) continue;
      const std::int64_t c = num / (4 * a);
      if (c < a) continue;
      if (b < 0 && a == c) continue;
      table.classes.push_back(make_class(Form{a, b, c}));
    }
  }
  std::sort(table.classes.begin(), table.classes.end());
  return table;
}

namespace {

std::optional<std::int64_t> canonical_root(std::uint64_t p, std::int64_t D) {
  const auto sp = static_cast<std::int64_t>(p);
  if (p == 2) {
    for (std::int64_t z = 0; z < 8; ++z) {
      if (arith::mod_floor(z * z - D, 8) == 0) return z;
    }
    return std::nullopt;
  }
  const auto r = arith::sqrt_mod(D, sp);
  require(r.has_value(), Errc::consistency,
          "prime_to_classes: no square root of D mod p although chi_D(p) != -1");
  std::int64_t z = *r;
  if ((z & 1) != (D & 1)) z = sp - z;
  return z;
}

}  // namespace

std::optional<FormClass> canonical_prime_class(std::uint64_t p, std::int64_t D) {
  check_discriminant(D, "canonical_prime_class");
  require(arith::is_prime(p), Errc::argument, "prime_to_classes: " + std::to_string(p) + " is not prime");
  if (arith::kronecker(D, static_cast<std::int64_t>(p)) == -1) return std::nullopt;
  const auto z = canonical_root(p, D);
  if (!z) return std::nullopt;
  const auto sp = static_cast<std::int64_t>(p);
  const i128 num = static_cast<i128>(*z) * *z - D;
  require(num % (4 * sp) == 0, Errc::consistency, "prime_to_classes: z^2 != D mod 4p");
  return reduce(Form{sp, *z, static_cast<std::int64_t>(num / (4 * sp))});
}

std::vector<FormClass> prime_to_classes(std::uint64_t p, std::int64_t D) {
  check_discriminant(D, "prime_to_classes");
  require(arith::is_prime(p), Errc::argument, "prime_to_classes: " + std::to_string(p) + " is not prime");
  std::vector<FormClass> out;
  if (arith::kronecker(D, static_cast<std::int64_t>(p)) == -1) return out;
  const auto sp = static_cast<std::int64_t>(p);

  std::vector<std::int64_t> roots;
  if (p == 2) {
    for (std::int64_t z = 0; z < 8; ++z) {
      if (arith::mod_floor(z * z - D, 8) == 0) roots.push_back(z);
    }
  } else {
    const auto z = canonical_root(p, D);
    roots = {*z, -*z};
  }
  for (std::int64_t z : roots) {
    const i128 num = static_cast<i128>(z) * z - D;
    require(num % (4 * sp) == 0, Errc::consistency, "prime_to_classes: z^2 != D mod 4p");
    out.push_back(reduce(Form{sp, z, static_cast<std::int64_t>(num / (4 * sp))}));
  }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

std::optional<LeastPrime> least_prime_represented(const FormClass& Q, std::uint64_t bound) {
  require(bound <= 100'000'000ULL, Errc::range, "least_prime_represented: bound > 1e8");
  const Form& f = Q.form;
  const std::int64_t D = f.discriminant();
  require(D < 0 && f.A > 0, Errc::domain, "least_prime_represented: form must be positive definite");

  // (value, y, x, direction); rows y >= 0 cover every value up to (x, y) -> (-x, -y).
  using Entry = std::tuple<i128, std::int64_t, std::int64_t, int>;
  std::priority_queue<Entry, std::vector<Entry>, std::greater<>> heap;
  heap.emplace(static_cast<i128>(f.A), 0, 1, 0);
  const std::uint64_t ymax =
      arith::isqrt128(static_cast<i128>(4) * f.A * static_cast<i128>(bound) / (-D));
  for (std::int64_t y = 1; y <= static_cast<std::int64_t>(ymax); ++y) {
    const std::int64_t x0 = arith::floor_div(-f.B * y, 2 * f.A);
    heap.emplace(f.eval(x0, y), y, x0, -1);
    heap.emplace(f.eval(x0 + 1, y), y, x0 + 1, +1);
  }
  while (!heap.empty()) {
    auto [value, y, x, dir] = heap.top();
    heap.pop();
    if (value > static_cast<i128>(bound)) break;
    if (value >= 2 && arith::is_prime(static_cast<std::uint64_t>(value))) {
      return LeastPrime{static_cast<std::uint64_t>(value), x, y};
    }
    if (dir != 0) heap.emplace(f.eval(x + dir, y), y, x + dir, dir);
  }
  return std::nullopt;
}

std::uint64_t representation_count(std::uint64_t n, const Form& Q) {
  require(n >= 1, Errc::argument, "representation_count: n must be positive");
  const std::int64_t D = Q.discriminant();
  require(D < 0 && Q.A > 0, Errc::domain, "representation_count: form must be positive definite");
  const i128 N = static_cast<i128>(n);
  const auto ymax = static_cast<std::int64_t>(arith::isqrt128(4 * static_cast<i128>(Q.A) * N / (-D)));
  std::uint64_t count = 0;
  for (std::int64_t y = -ymax; y <= ymax; ++y) {
    const i128 disc = static_cast<i128>(D) * y * y + 4 * static_cast<i128>(Q.A) * N;
    std::uint64_t s = 0;
    if (!arith::is_square(disc, &s)) continue;
    const i128 base = -static_cast<i128>(Q.B) * y;
    const i128 twoA = 2 * static_cast<i128>(Q.A);
    const i128 si = static_cast<i128>(s);
    if ((base + si) % twoA == 0) ++count;
    if (s != 0 && (base - si) % twoA == 0) ++count;
  }
  return count;
}

HeegnerPoint heegner_point(const FormClass& Q) {
  const Form& f = Q.form;
  const std::int64_t D = f.discriminant();
  HeegnerPoint z;
  std::int64_t num = -f.B;
  std::int64_t den = 2 * f.A;
  const std::int64_t g = arith::gcd(num, den);
  if (g > 1) {
    num /= g;
    den /= g;
  }
  z.re_num = num;
  z.re_den = den;
  z.re = static_cast<double>(-f.B) / static_cast<double>(2 * f.A);
  z.im = std::sqrt(static_cast<double>(-D)) / static_cast<double>(2 * f.A);
  return z;
}

double coefficient_bound_fraction(const ClassGroupTable& table, double psi) {
  require(psi > 0.0, Errc::argument, "coefficient_bound_fraction: psi must be positive");
  if (table.classes.empty()) return 0.0;
  const double limit = std::sqrt(static_cast<double>(-table.D)) * psi;
  std::size_t inside = 0;
  for (const auto& c : table.classes) {
    const std::int64_t m = std::max({c.A(), c.B() < 0 ? -c.B() : c.B(), c.C()});
    if (static_cast<double>(m) < limit) ++inside;
  }
  return static_cast<double>(inside) / static_cast<double>(table.classes.size());
}

double coefficient_bound_fraction(std::int64_t D, double psi) {
  return coefficient_bound_fraction(enumerate_classes(D), psi);
}

}  // namespace qflab::qforms
