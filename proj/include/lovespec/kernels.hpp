#pragma once

#include <cstddef>
#include <span>
#include <vector>

namespace lovespec::kernels {

/// Caps the OpenMP team size used by the parallel kernels at
/// min(threads, runtime default); 0 restores the default. Returns the
/// effective thread count.
int set_thread_limit(int threads);
/// Applies LOVESPEC_THREADS when set.
int apply_thread_environment();
int thread_count();

/// Filon cosine transform of the piecewise-linear interpolant of samples
/// a_i at k_i = i dk, i = 0..n: out_j = int_0^{n dk} a(k) cos(k s_j) dk for
/// s_j = j ds, j = 0..count-1.
std::vector<double> filon_cosine(std::span<const double> a, double dk, std::size_t count,
                                 double ds);
std::vector<double> filon_cosine_serial(std::span<const double> a, double dk,
                                        std::size_t count, double ds);
/// Single value, for reference checks.
double filon_cosine_at(std::span<const double> a, double dk, double s);

/// Rows of the trapezoid Nystrom discretization of
/// K(x_n, y_m) - g(x_n, y_m) + int_0^{x_n} K(x_n, s) g(s, y_m) ds = 0
/// for a symmetric kernel g given as a dense row-major n x n matrix.
struct GLRows {
  /// Packed lower triangle: row n holds K(x_n, y_0..y_n) at offset n(n+1)/2.
  std::vector<double> values;
  std::vector<double> residuals;
  /// min |u_ii| / max |u_ii| of the factorization (1 for the reference).
  double pivot_ratio = 1.0;
};

/// One unpivoted blocked LU of the weighted system, whose leading blocks are
/// the per-row systems up to a rank-one end-weight correction
/// (Sherman-Morrison); rows are then solved in parallel.
GLRows solve_gl_rows(std::span<const double> g, std::size_t n, double dx);
/// Reference: an independent partially pivoted dense solve for every row.
GLRows solve_gl_rows_serial(std::span<const double> g, std::size_t n, double dx);

}  // namespace lovespec::kernels
