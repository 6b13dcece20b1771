#pragma once

#include <cstdint>

namespace qflab::archimedean {

// Normalized bump c exp(-s / ((u-1)(2-u))) on (1, 2), zero elsewhere.
// s is the sharpness; s = 1 gives c exp(-1/(u-1) - 1/(2-u)).
class SmoothWeight {
 public:
  explicit SmoothWeight(double sharpness = 1.0);

  double operator()(double u) const { return eval(u); }
  double eval(double u) const;
  double derivative(double u, int order) const;  // order 0, 1 or 2

  double sharpness() const { return sharpness_; }
  double normalization() const { return c_; }

  // w_X(u) = w(u / X)
  double scaled(double u, double X) const { return eval(u / X); }

 private:
  double sharpness_;
  double c_;
};

const SmoothWeight& default_weight();

struct IntegralResult {
  double value = 0.0;
  double error_estimate = 0.0;
};

// I(a) = int_1^2 int_1^2 w(x1) w(x2) / (2 sqrt(4 x1 x2 + a)^+) dx1 dx2.
IntegralResult I_of(double a, const SmoothWeight& w = default_weight());
inline double I(double a) { return I_of(a).value; }

struct DensityReport {
  std::int64_t m = 0;
  double X = 0.0;
  std::int64_t d1 = 1;
  std::int64_t d2 = 1;
  double sigma_inf = 0.0;
  double quadrature_error_estimate = 0.0;
};

// (X / (d1 d2)) I(m / X^2).
DensityReport sigma_inf_weighted(double X, std::int64_t d1, std::int64_t d2, std::int64_t m,
                                 const SmoothWeight& w = default_weight());

// Calibrated total volume kappa sqrt|m|, k = 1 only.
double sigma_inf_total(std::int64_t m, std::int64_t k, double kappa);

}  // namespace qflab::archimedean
