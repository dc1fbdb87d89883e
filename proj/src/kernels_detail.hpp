#pragma once

#include <cmath>
#include <complex>
#include <span>

namespace lovespec::kernels::detail {

// E0 = int_0^1 e^{i theta u} du and E1 = int_0^1 u e^{i theta u} du.
inline void filon_moments(double theta, std::complex<double>& e0, std::complex<double>& e1) {
  const std::complex<double> I{0.0, 1.0};
  if (std::abs(theta) < 1e-2) {
    const double t2 = theta * theta;
    e0 = {1.0 - t2 / 6.0 + t2 * t2 / 120.0, theta / 2.0 - theta * t2 / 24.0};
    e1 = {0.5 - t2 / 8.0 + t2 * t2 / 144.0, theta / 3.0 - theta * t2 / 30.0};
    return;
  }
  const std::complex<double> z = std::polar(1.0, theta);
  e0 = (z - 1.0) / (I * theta);
  e1 = z / (I * theta) + (z - 1.0) / (theta * theta);
}

// Filon integral of the piecewise-linear interpolant of a on k_i = i dk
// against cos(k s). Both sums are Horner evaluations in z = e^{i s dk}.
inline double filon_value(std::span<const double> a, double dk, double s) {
  const std::size_t n = a.size() - 1;
  const double theta = s * dk;
  const std::complex<double> z = std::polar(1.0, theta);
  std::complex<double> p = a[n];
  for (std::size_t i = n; i-- > 0;) p = p * z + a[i];
  const std::complex<double> s0 = p - a[n] * std::polar(1.0, theta * static_cast<double>(n));
  const std::complex<double> s1 = (p - a[0]) * std::conj(z);
  std::complex<double> e0, e1;
  filon_moments(theta, e0, e1);
  return dk * ((e0 - e1) * s0 + e1 * s1).real();
}

}  // namespace lovespec::kernels::detail
