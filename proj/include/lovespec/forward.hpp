#pragma once

#include <memory>
#include <span>
#include <vector>

#include "lovespec/error.hpp"
#include "lovespec/medium.hpp"

namespace lovespec {

/// -u'' + V u = k^2 u on the half-line with u'(0) + h u(0) = 0.
struct RobinProblem {
  PotentialGrid potential;
  double h = 0.0;

  void validate() const { potential.validate(); }
};

/// A solution of the Schrodinger equation sampled on (part of) the grid.
struct WaveSolution {
  cplx k;
  std::vector<double> grid_x;
  std::vector<cplx> f;
  std::vector<cplx> f_prime;
};

struct BoundaryValue {
  cplx f;
  cplx f_prime;
};

/// Precomputed cell data of a RobinProblem, shareable across threads.
///
/// The potential is taken constant on each grid cell (mean of the two node
/// values) and the equation is propagated exactly across every cell. This is
/// the exact solution of the Volterra equations for the cellwise potential,
/// so Wronskians are preserved to rounding and the free case is exact.
/// Cells whose left node lies beyond x_support carry V = 0.
class RobinSystem {
 public:
  explicit RobinSystem(RobinProblem problem);

  const RobinProblem& problem() const noexcept { return problem_; }
  double h() const noexcept { return problem_.h; }
  double dx() const noexcept { return dx_; }
  /// Abscissa after which the cellwise potential vanishes.
  double support_end() const noexcept;
  std::span<const double> cell_potential() const noexcept { return cell_v_; }

  /// f(x, k), f'(x, k) of the Jost solution at an arbitrary x >= 0.
  BoundaryValue jost_at(cplx k, double x) const;
  /// h f(0,k) + f'(0,k).
  cplx jost_function(cplx k) const;
  /// d f_h / dk by 4th-order complex central differences,
  /// step 1e-4 * max(1, |k|).
  cplx jost_function_derivative(cplx k) const;

  /// Jost solution on every grid node.
  WaveSolution jost_solution(cplx k) const;

  /// Solution with the given Cauchy data at x = 0, on all nodes up to upto_x
  /// plus upto_x itself when it is not a node. Beyond the grid the potential
  /// is zero.
  WaveSolution propagate_from_origin(cplx k, cplx f0, cplx fp0, double upto_x) const;

  /// Value of the solution with Cauchy data (f0, fp0) at a single x.
  BoundaryValue solution_at(cplx k, cplx f0, cplx fp0, double x) const;

  /// Integral of e^{2ikt} V(t) over the support, for the cellwise potential.
  cplx potential_fourier(cplx k) const;
  /// Integral of |V| for the cellwise potential.
  double potential_l1() const;

 private:
  RobinProblem problem_;
  double dx_ = 0.0;
  std::vector<double> cell_v_;
  std::size_t support_cells_ = 0;
};

WaveSolution jost_solution(const RobinProblem& prob, cplx k);
cplx jost_function(const RobinProblem& prob, cplx k);
cplx jost_function_derivative(const RobinProblem& prob, cplx k);

/// phi(0) = 1, phi'(0) = -h.
WaveSolution regular_solution(const RobinProblem& prob, cplx k, double upto_x);
WaveSolution regular_solution(const RobinSystem& sys, cplx k, double upto_x);
/// theta(0) = 0, theta'(0) = 1.
WaveSolution theta_solution(const RobinProblem& prob, cplx k, double upto_x);
WaveSolution theta_solution(const RobinSystem& sys, cplx k, double upto_x);

/// f(x,k)/f_h(k). Throws a pole error (carrying the nearby zero) when f_h(k)
/// vanishes.
cplx weyl_solution(const RobinSystem& sys, cplx k, double x);
cplx weyl_solution(const RobinProblem& prob, cplx k, double x);
/// Derivative in x of the Weyl solution.
cplx weyl_solution_derivative(const RobinSystem& sys, cplx k, double x);

/// M(lambda) = f(0,k)/f_h(k) with lambda = k^2, Im k >= 0.
cplx weyl_function_forward(const RobinSystem& sys, cplx k);
cplx weyl_function_forward(const RobinProblem& prob, cplx k);

/// The sectionally analytic function psi(x, k) built from Weyl solutions;
/// k must be off the real axis.
cplx psi_function(const RobinSystem& sys, cplx k, double x);
cplx psi_function(const RobinProblem& prob, cplx k, double x);

/// Newton polish of a zero of f_h starting at k0.
cplx polish_jost_zero(const RobinSystem& sys, cplx k0, double tol = 1e-13,
                      int max_iter = 60);

}  // namespace lovespec
