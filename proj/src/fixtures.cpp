#include "lovespec/fixtures.hpp"

#include <cmath>

namespace lovespec::fixtures {

std::vector<double> uniform_grid(double x_max, std::size_t n) {
  std::vector<double> x(n);
  const double dx = x_max / static_cast<double>(n - 1);
  for (std::size_t i = 0; i < n; ++i) x[i] = dx * static_cast<double>(i);
  x.back() = x_max;
  return x;
}

RobinProblem free_problem(double h, std::size_t n, double x_max) {
  RobinProblem p;
  p.potential.grid_x = uniform_grid(x_max, n);
  p.potential.v.assign(n, 0.0);
  p.potential.v_prime.assign(n, 0.0);
  p.potential.x_support = x_max;
  p.h = h;
  return p;
}

RobinProblem square_well(double depth, double width, double h, std::size_t n) {
  RobinProblem p;
  p.potential.grid_x = uniform_grid(width, n);
  p.potential.v.assign(n, depth);
  p.potential.v_prime.assign(n, 0.0);
  p.potential.x_support = width;
  p.h = h;
  return p;
}

double bump_potential_value(double amplitude, double width, double x) {
  if (x < 0.0 || x > width) return 0.0;
  const double u = x / width;
  return amplitude * 16.0 * u * u * (1.0 - u) * (1.0 - u);
}

RobinProblem bump_potential(double amplitude, double h, double width, std::size_t n) {
  RobinProblem p;
  p.potential.grid_x = uniform_grid(width, n);
  p.potential.x_support = width;
  p.potential.v.resize(n);
  p.potential.v_prime.resize(n);
  for (std::size_t i = 0; i < n; ++i) {
    const double u = p.potential.grid_x[i] / width;
    p.potential.v[i] = bump_potential_value(amplitude, width, p.potential.grid_x[i]);
    p.potential.v_prime[i] = amplitude * 32.0 * u * (1.0 - u) * (1.0 - 2.0 * u) / width;
  }
  p.h = h;
  return p;
}

namespace {

struct Bump {
  double s, s1, s2;
};

// s = a w^4 with w = 4u(1 - u).
Bump bump_s(double amplitude, double width, double x) {
  if (x <= 0.0 || x >= width) return {0.0, 0.0, 0.0};
  const double u = x / width;
  const double w = 4.0 * u * (1.0 - u);
  const double w1 = 4.0 * (1.0 - 2.0 * u) / width;
  const double w2 = -8.0 / (width * width);
  return {amplitude * std::pow(w, 4),
          amplitude * 4.0 * std::pow(w, 3) * w1,
          amplitude * (12.0 * w * w * w1 * w1 + 4.0 * std::pow(w, 3) * w2)};
}

}  // namespace

ShearProfile bump_profile(double amplitude, double mu_tail, double width, std::size_t n) {
  ShearProfile p;
  p.grid_x = uniform_grid(width, n);
  p.mu_hat_tail = mu_tail;
  p.x_support = width;
  p.mu_hat.resize(n);
  for (std::size_t i = 0; i < n; ++i) {
    p.mu_hat[i] = mu_tail * std::exp(2.0 * bump_s(amplitude, width, p.grid_x[i]).s);
  }
  return p;
}

double bump_profile_potential(double amplitude, double mu_tail, double width,
                              double omega, double x) {
  const Bump b = bump_s(amplitude, width, x);
  const double w2 = omega * omega / mu_tail;
  return b.s2 + b.s1 * b.s1 - w2 * std::exp(-2.0 * b.s) + w2;
}

}  // namespace lovespec::fixtures
