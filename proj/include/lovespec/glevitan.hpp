#pragma once

#include <cstddef>
#include <functional>
#include <memory>
#include <span>
#include <vector>

#include "lovespec/forward.hpp"
#include "lovespec/spectrum.hpp"

namespace lovespec {

/// Spectral input of the Gelfand-Levitan construction.
struct WeylData {
  /// Jump function, interpolated in q(t) = 2 t T(t^2) - 2/pi.
  std::shared_ptr<const JumpTable> jump;
  std::vector<cplx> pole_k;
  std::vector<double> alphas;
  /// K_max of the oscillatory integral.
  double k_cutoff = 200.0;
  /// Support bound, used by the tail model.
  double x_support = 1.0;

  void validate() const;
  static WeylData from_spectrum(const SpectrumData& s, double k_cutoff, double x_support);
};

/// j(k) = M(k^2) - 1/(ik) for Im k >= 0 (real k < 0 gives the lower edge).
cplx j_function(const WeylEvaluator& m, cplx k);

/// Model of A(k) = k T(k^2) - 1/pi beyond the cutoff:
/// k^2 A ~ c0 + c3 / k^2 + (c1 + c4 / k^2) cos(2 k x_I) + (c2 + c5 / k^2) sin(2 k x_I),
/// fitted on [K/2, K].
struct TailModel {
  double c0 = 0.0;
  double c1 = 0.0;
  double c2 = 0.0;
  double c3 = 0.0;
  double c4 = 0.0;
  double c5 = 0.0;
  double x_support = 1.0;
  double k_cut = 0.0;
  /// RMS misfit of k^2 A on the fit window.
  double residual = 0.0;

  /// int_K^inf A(k) cos(k s) dk under the model.
  double cosine_tail(double s) const;
  /// The fitted coefficient of A ~ c0 / k^2.
  double tail_coefficient() const noexcept { return c0; }
};

/// Fits the tail model; throws a quadrature-resolution error when the
/// neglected part residual / K exceeds `tol`.
TailModel fit_tail(const WeylData& w, double tol = 1e-3);

/// Triangular table k(x_i, y_j), j <= i, packed row by row.
struct Kernel2D {
  enum class Kind { g, K };

  Kind kind = Kind::g;
  /// For kind g: whether g(x, y) for x < y is g(y, x) (true) or zero.
  bool symmetric = true;
  std::vector<double> grid_x;
  std::vector<double> values;

  Kernel2D() = default;
  Kernel2D(Kind kind, std::vector<double> grid);

  std::size_t size() const noexcept { return grid_x.size(); }
  double dx() const;
  double operator()(std::size_t i, std::size_t j) const { return values[i * (i + 1) / 2 + j]; }
  double& at(std::size_t i, std::size_t j) { return values[i * (i + 1) / 2 + j]; }
  /// g(x_i, y_j) for any i, j under the kernel's extension rule.
  double full(std::size_t i, std::size_t j) const;
  std::vector<double> diagonal() const;
  std::vector<double> row(std::size_t i) const;
};

struct GKernel {
  Kernel2D g;
  TailModel tail;
};

/// g(x, y) = int_0^inf 2 A(k) cos(kx) cos(ky) dk + sum_j alpha_j cos(k_j x) cos(k_j y)
/// on the uniform grid, via a shared Filon table of H(s) = int A cos(ks) dk
/// (g_cont = H(x - y) + H(x + y)).
GKernel build_g(const WeylData& w, std::span<const double> grid, bool parallel = true);
/// Pair-by-pair reference of build_g (small grids only).
GKernel build_g_reference(const WeylData& w, std::span<const double> grid);

/// int_0^x sup_{0 <= s <= t} |g(t, s)| dt on the grid nodes up to x.
double check_solvability(const Kernel2D& g, double x);

struct GLSolution {
  Kernel2D kernel;
  std::vector<double> residuals;
  double max_residual = 0.0;
  /// Smallest over largest pivot of the factorization; a conditioning proxy.
  double pivot_ratio = 1.0;
};

/// All rows K(x_n, .) for a symmetric g (trapezoid Nystrom).
GLSolution solve_gl(const Kernel2D& g, bool parallel = true);
/// One row by an independent dense solve.
std::vector<double> solve_gl_row(const Kernel2D& g, std::size_t n, double* residual = nullptr);

/// Rows for a kernel that vanishes for s < y (integral over [y, x]), by
/// back substitution.
GLSolution solve_gl_lower(const Kernel2D& g);
/// Lower-kernel solve for a callable g on n nodes over [0, x_max], refined
/// on `levels` halvings and combined by Richardson extrapolation in dx^2.
GLSolution solve_gl_lower_extrapolated(const std::function<double(double, double)>& g,
                                       double x_max, std::size_t n, int levels = 3);

/// K(x, y) from the direct formula
/// int_0^inf 2 A(k) phi(x,k) cos(ky) dk + sum_j alpha_j phi(x, k_j) cos(k_j y).
double kernel_direct(const WeylData& w, const RobinSystem& sys, double x, double y);

struct Extraction {
  PotentialGrid potential;
  double h = 0.0;
  /// max_x |int_0^x V - 2h + 2K(x,x)|.
  double consistency = 0.0;
};

/// V = -2 d/dx K(x,x), h = K(0,0); throws an extraction error when the
/// integrated identity misses by more than tol * max(1, max |K(x,x)|).
Extraction extract_potential(std::span<const double> k_diag, std::span<const double> grid,
                             double x_support, double tol = 5e-3);

/// cos(kx) - int_0^x K(x, t) cos(kt) dt at the grid node nearest to x.
cplx regular_solution_from_kernel(const Kernel2D& kernel, cplx k, double x);

}  // namespace lovespec
