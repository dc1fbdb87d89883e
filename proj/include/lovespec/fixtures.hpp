#pragma once

#include <cstddef>

#include "lovespec/forward.hpp"
#include "lovespec/medium.hpp"

namespace lovespec::fixtures {

/// Uniform grid of n points on [0, x_max].
std::vector<double> uniform_grid(double x_max, std::size_t n);

/// V = 0 on [0, x_max] with support bound x_max.
RobinProblem free_problem(double h, std::size_t n = 201, double x_max = 1.0);

/// V = depth on [0, width], zero beyond; the grid covers [0, width].
RobinProblem square_well(double depth = -4.0, double width = 1.0, double h = 0.0,
                         std::size_t n = 2001);

/// C^1 bump V = amplitude * 16 u^2 (1 - u)^2, u = x / width.
RobinProblem bump_potential(double amplitude = -4.0, double h = 0.5,
                            double width = 1.0, std::size_t n = 2001);
double bump_potential_value(double amplitude, double width, double x);

/// Shear profile mu_tail * exp(2 s) with s = amplitude * (4u(1 - u))^4.
ShearProfile bump_profile(double amplitude = 0.2, double mu_tail = 1.0,
                          double width = 1.0, std::size_t n = 2001);
/// Exact potential of bump_profile at frequency omega, from the closed-form
/// derivatives of s.
double bump_profile_potential(double amplitude, double mu_tail, double width,
                              double omega, double x);

}  // namespace lovespec::fixtures
