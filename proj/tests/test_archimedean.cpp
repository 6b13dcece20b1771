#include "doctest.h"

#include <cmath>
#include <functional>
#include <numbers>
#include <random>

#include "core/archimedean.hpp"
#include "support.hpp"

using namespace qflab;
using namespace qflab::archimedean;

namespace {

struct Estimate {
  double mean = 0.0;
  double stderr_ = 0.0;
};

// plain Monte-Carlo over the unit square [1, 2]^2
Estimate monte_carlo_I(double a, std::size_t n, std::uint64_t seed) {
  const auto& w = default_weight();
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> u(1.0, 2.0);
  double s = 0.0, s2 = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const double x1 = u(rng), x2 = u(rng);
    const double q = 4.0 * x1 * x2 + a;
    const double f = q > 0 ? w(x1) * w(x2) / (2.0 * std::sqrt(q)) : 0.0;
    s += f;
    s2 += f * f;
  }
  const double mean = s / static_cast<double>(n);
  const double var = s2 / static_cast<double>(n) - mean * mean;
  return {mean, std::sqrt(var / static_cast<double>(n))};
}

double simpson(const std::function<double(double)>& f, double lo, double hi, int n) {
  const double h = (hi - lo) / n;
  double s = f(lo) + f(hi);
  for (int i = 1; i < n; ++i) s += (i % 2 ? 4.0 : 2.0) * f(lo + i * h);
  return s * h / 3.0;
}

}  // namespace

TEST_CASE("smooth weight") {
  const auto& w = default_weight();
  CHECK(w(0.5) == 0.0);
  CHECK(w(1.0) == 0.0);
  CHECK(w(2.5) == 0.0);
  CHECK(w(1.5) == doctest::Approx(w.normalization() * std::exp(-4.0)));
  CHECK(w(1.25) == doctest::Approx(w(1.75)));
  CHECK(w.normalization() == doctest::Approx(142.2504).epsilon(1e-6));
  CHECK(simpson([&](double u) { return w(u); }, 1.0, 2.0, 20000) == doctest::Approx(1.0).epsilon(1e-10));
  CHECK(w.scaled(1500.0, 1000.0) == doctest::Approx(w(1.5)));

  const SmoothWeight sharp(2.0);
  CHECK(simpson([&](double u) { return sharp(u); }, 1.0, 2.0, 20000) == doctest::Approx(1.0).epsilon(1e-10));
}

TEST_CASE("weight derivatives match finite differences") {
  const auto& w = default_weight();
  const double h = 1e-5;
  for (double u = 1.05; u < 1.96; u += 0.07) {
    CAPTURE(u);
    const double d1 = (w(u + h) - w(u - h)) / (2 * h);
    const double d2 = (w(u + h) - 2 * w(u) + w(u - h)) / (h * h);
    CHECK(w.derivative(u, 0) == doctest::Approx(w(u)));
    CHECK(w.derivative(u, 1) == doctest::Approx(d1).epsilon(1e-5));
    CHECK(w.derivative(u, 2) == doctest::Approx(d2).epsilon(1e-4));
  }
  CHECK(w.derivative(0.5, 1) == 0.0);
}

TEST_CASE("I(a) edge values") {
  CHECK(I(-16.0) == 0.0);
  CHECK(I(-20.0) == 0.0);
  const double i0 = I(0.0);
  CHECK(i0 >= 0.125);
  CHECK(i0 <= 0.25);
  CHECK(I(0.0) >= I(10.0));
  CHECK(I_of(0.0).error_estimate < 1e-8);
}

TEST_CASE("I(a) is non-increasing once the radicand stays positive") {
  double prev = I(-4.0);
  for (double a = -3.5; a <= 40.0; a += 0.5) {
    CAPTURE(a);
    const double v = I(a);
    CHECK(v <= prev + 1e-12);
    prev = v;
  }
  CHECK(I(-4.0) >= I(0.0));
}

TEST_CASE("I(a) rises from zero below a = -4") {
  // the cut-off 4 x1 x2 + a > 0 removes mass faster than the integrand grows
  CHECK(I(-12.0) < I(-8.0));
  CHECK(I(-8.0) > I(-4.0));
  CHECK(I(-15.9) > 0.0);
}

TEST_CASE("I(a) against a seeded Monte-Carlo oracle") {
  std::uint64_t seed = 20260101;
  for (double a : {-0.01, 2.0, -3.0, 7.5}) {
    CAPTURE(a);
    const auto mc = monte_carlo_I(a, 2'000'000, seed++);
    CHECK(std::fabs(I(a) - mc.mean) < 3.0 * mc.stderr_);
  }
}

TEST_CASE("weighted archimedean density") {
  const auto r = sigma_inf_weighted(1000.0, 1, 1, -10'000);
  CHECK(r.sigma_inf == doctest::Approx(1000.0 * I(-0.01)));
  const auto mc = monte_carlo_I(-0.01, 2'000'000, 7);
  CHECK(std::fabs(r.sigma_inf - 1000.0 * mc.mean) < 3.0 * 1000.0 * mc.stderr_);

  CHECK(sigma_inf_weighted(1000.0, 1, 1, -17'000'000).sigma_inf == 0.0);
  // doubling d1 halves the value at fixed m / X^2
  const auto a = sigma_inf_weighted(2000.0, 1, 1, -40'000);
  const auto b = sigma_inf_weighted(2000.0, 2, 1, -40'000);
  CHECK(b.sigma_inf == doctest::Approx(a.sigma_inf / 2));
  // linear in X at fixed a
  const auto c = sigma_inf_weighted(4000.0, 1, 1, -160'000);
  CHECK(c.sigma_inf == doctest::Approx(2 * a.sigma_inf));
}

TEST_CASE("total archimedean volume") {
  const double kappa = std::numbers::pi / 12;
  CHECK(sigma_inf_total(-23, 1, kappa) == doctest::Approx(kappa * std::sqrt(23.0)));
  CHECK(sigma_inf_total(-92, 1, kappa) == doctest::Approx(2 * sigma_inf_total(-23, 1, kappa)));
  CHECK_THROWS_AS(sigma_inf_total(-23, 2, kappa), Error);
  CHECK_THROWS_AS(sigma_inf_total(5, 1, kappa), Error);
}
