#pragma once

#include <cstddef>
#include <functional>
#include <span>
#include <vector>

#include "lovespec/error.hpp"

namespace lovespec {

/// Spacing of an ascending, uniformly spaced sample set. Throws a resolution
/// error when the set has fewer than `min_points` points or is not uniform to
/// a relative tolerance of 1e-9.
double uniform_spacing(std::span<const double> x, std::size_t min_points = 5);

/// First derivative on a uniform grid: 4th-order central differences in the
/// interior, 2nd-order central one point in from each end, 2nd-order
/// one-sided at the ends. Needs at least 5 samples.
std::vector<double> derivative(std::span<const double> f, double dx);

/// Second derivative with the same stencil orders as `derivative`.
std::vector<double> second_derivative(std::span<const double> f, double dx);

double trapezoid(std::span<const double> f, double dx);

/// Running trapezoid integral, out[i] = integral from x_0 to x_i.
std::vector<double> cumulative_trapezoid(std::span<const double> f, double dx);

/// Si(x) and Ci(x) (x > 0 for Ci).
double sine_integral(double x);
double cosine_integral(double x);

/// Neumaier compensated accumulator.
class CompensatedSum {
 public:
  void add(double v) noexcept;
  double value() const noexcept { return sum_ + carry_; }

 private:
  double sum_ = 0.0;
  double carry_ = 0.0;
};

struct QuadratureResult {
  cplx value;
  double error;
  std::size_t evaluations;
};

/// Adaptive Gauss-Kronrod (7/15) integration of a complex-valued integrand.
/// Subdivides until the summed error estimate is below
/// max(abs_tol, rel_tol * |value|) or `max_intervals` is reached.
QuadratureResult integrate_adaptive(const std::function<cplx(double)>& f,
                                    double a, double b, double rel_tol,
                                    double abs_tol,
                                    std::size_t max_intervals = 2000);

}  // namespace lovespec
