#include "core/archimedean.hpp"

#include <algorithm>
#include <cmath>
#include <string>
#include <vector>

#include <boost/math/quadrature/gauss_kronrod.hpp>

#include "core/errors.hpp"

namespace qflab::archimedean {

namespace {

using boost::math::quadrature::gauss_kronrod;

constexpr unsigned kMaxDepth = 12;
constexpr double kTolerance = 1e-8;

double bump(double u, double s) {
  if (u <= 1.0 || u >= 2.0) return 0.0;
  const double q = (u - 1.0) * (2.0 - u);
  return std::exp(-s / q);
}

}  // namespace

SmoothWeight::SmoothWeight(double sharpness) : sharpness_(sharpness), c_(1.0) {
  require(sharpness > 0.0 && std::isfinite(sharpness), Errc::argument, "SmoothWeight: sharpness must be positive");
  double err = 0.0;
  const double mass = gauss_kronrod<double, 61>::integrate(
      [this](double u) { return bump(u, sharpness_); }, 1.0, 2.0, kMaxDepth, 1e-14, &err);
  require(mass > 0.0 && std::isfinite(mass), Errc::numeric, "SmoothWeight: weight has no mass");
  c_ = 1.0 / mass;
}

double SmoothWeight::eval(double u) const { return c_ * bump(u, sharpness_); }

double SmoothWeight::derivative(double u, int order) const {
  require(order >= 0 && order <= 2, Errc::argument, "SmoothWeight: derivative order must be 0, 1 or 2");
  if (order == 0) return eval(u);
  if (u <= 1.0 || u >= 2.0) return 0.0;
  const double s = sharpness_;
  const double q = (u - 1.0) * (2.0 - u);
  const double dq = 3.0 - 2.0 * u;
  const double f = eval(u);
  const double g = s * dq / (q * q);  // f' = f g
  if (order == 1) return f * g;
  const double dg = s * (-2.0 * q - 2.0 * dq * dq) / (q * q * q);
  return f * (g * g + dg);
}

const SmoothWeight& default_weight() {
  static const SmoothWeight w(1.0);
  return w;
}

IntegralResult I_of(double a, const SmoothWeight& w) {
  require(std::isfinite(a), Errc::argument, "I: argument must be finite");
  IntegralResult out;
  if (a <= -16.0) return out;

  double inner_error = 0.0;
  auto inner = [&](double x1) {
    const double star = -a / (4.0 * x1);  // 4 x1 x2 + a = 0
    if (star >= 2.0) return 0.0;
    double err = 0.0;
    double v = 0.0;
    if (star <= 1.0) {
      v = gauss_kronrod<double, 31>::integrate(
          [&](double x2) { return w(x2) / (2.0 * std::sqrt(4.0 * x1 * x2 + a)); }, 1.0, 2.0, kMaxDepth, 1e-13,
          &err);
    } else {
      // x2 = star + s^2 removes the inverse square root
      const double top = std::sqrt(2.0 - star);
      v = gauss_kronrod<double, 31>::integrate(
          [&](double s) { return w(star + s * s) / (2.0 * std::sqrt(x1)); }, 0.0, top, kMaxDepth, 1e-13, &err);
    }
    inner_error = std::max(inner_error, err);
    return v;
  };

  std::vector<double> cuts{1.0};
  for (double c : {-a / 8.0, -a / 4.0}) {
    if (c > 1.0 && c < 2.0) cuts.push_back(c);
  }
  cuts.push_back(2.0);
  std::sort(cuts.begin(), cuts.end());

  for (std::size_t i = 0; i + 1 < cuts.size(); ++i) {
    double err = 0.0;
    const double part = gauss_kronrod<double, 31>::integrate(
        [&](double x1) { return w(x1) * inner(x1); }, cuts[i], cuts[i + 1], kMaxDepth, 1e-10, &err);
    out.value += part;
    out.error_estimate += err;
  }
  out.error_estimate += inner_error;
  require(std::isfinite(out.value) && out.error_estimate <= kTolerance, Errc::numeric,
          "I: quadrature did not converge for a=" + std::to_string(a) +
              " (error estimate " + std::to_string(out.error_estimate) + ")");
  return out;
}

DensityReport sigma_inf_weighted(double X, std::int64_t d1, std::int64_t d2, std::int64_t m, const SmoothWeight& w) {
  require(X > 0.0, Errc::argument, "sigma_inf_weighted: X must be positive");
  require(d1 >= 1 && d2 >= 1, Errc::argument, "sigma_inf_weighted: d1, d2 must be positive");
  const auto r = I_of(static_cast<double>(m) / (X * X), w);
  DensityReport rep;
  rep.m = m;
  rep.X = X;
  rep.d1 = d1;
  rep.d2 = d2;
  const double scale = X / static_cast<double>(d1 * d2);
  rep.sigma_inf = scale * r.value;
  rep.quadrature_error_estimate = scale * r.error_estimate;
  return rep;
}

double sigma_inf_total(std::int64_t m, std::int64_t k, double kappa) {
  if (k != 1) fail(Errc::unsupported, "sigma_inf_total: only k = 1 is supported");
  require(m < 0, Errc::domain, "sigma_inf_total: m must be negative");
  require(kappa > 0.0, Errc::argument, "sigma_inf_total: kappa must be positive");
  return kappa * std::sqrt(static_cast<double>(-m));
}

}  // namespace qflab::archimedean
