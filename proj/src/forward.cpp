#include "lovespec/forward.hpp"

#include <cmath>

#include "lovespec/numerics.hpp"

namespace lovespec {

namespace {

constexpr cplx kI{0.0, 1.0};

// Transfer coefficients of one cell of width d where u'' = -q2 u:
// cos(qd), sin(qd)/q and q sin(qd), all even in q.
struct Cell {
  cplx c;
  cplx s_over_q;
  cplx q_s;
};

Cell cell_complex(cplx q2, double d) {
  const cplx z = q2 * d * d;
  if (std::abs(z) < 1e-3) {
    const cplx c = 1.0 - z / 2.0 + z * z / 24.0 - z * z * z / 720.0;
    const cplx s = d * (1.0 - z / 6.0 + z * z / 120.0 - z * z * z / 5040.0);
    return {c, s, q2 * s};
  }
  const cplx q = std::sqrt(q2);
  const cplx sn = std::sin(q * d);
  return {std::cos(q * d), sn / q, q * sn};
}

Cell cell_real(double q2, double d) {
  const double z = q2 * d * d;
  if (std::abs(z) < 1e-3) {
    const double c = 1.0 - z / 2.0 + z * z / 24.0 - z * z * z / 720.0;
    const double s = d * (1.0 - z / 6.0 + z * z / 120.0 - z * z * z / 5040.0);
    return {c, s, q2 * s};
  }
  if (q2 > 0.0) {
    const double q = std::sqrt(q2);
    const double sn = std::sin(q * d);
    return {std::cos(q * d), sn / q, q * sn};
  }
  const double kappa = std::sqrt(-q2);
  const double sh = std::sinh(kappa * d);
  return {std::cosh(kappa * d), sh / kappa, -kappa * sh};
}

Cell make_cell(cplx k, double v, double d) {
  if (k.imag() == 0.0) return cell_real(k.real() * k.real() - v, d);
  return cell_complex(k * k - v, d);
}

void step_forward(const Cell& m, cplx& f, cplx& fp) {
  const cplx nf = m.c * f + m.s_over_q * fp;
  const cplx nfp = -m.q_s * f + m.c * fp;
  f = nf;
  fp = nfp;
}

void step_backward(const Cell& m, cplx& f, cplx& fp) {
  const cplx nf = m.c * f - m.s_over_q * fp;
  const cplx nfp = m.q_s * f + m.c * fp;
  f = nf;
  fp = nfp;
}

[[noreturn]] void throw_pole(const RobinSystem& sys, cplx k) {
  cplx zero = k;
  try {
    zero = polish_jost_zero(sys, k);
  } catch (const Error&) {
  }
  throw Error(ErrorKind::pole, "k is a zero of the Jost function", zero);
}

cplx checked_jost_function(const RobinSystem& sys, cplx k) {
  const cplx fh = sys.jost_function(k);
  if (std::abs(fh) < 1e-12 * std::max(1.0, std::abs(k))) throw_pole(sys, k);
  return fh;
}

}  // namespace

RobinSystem::RobinSystem(RobinProblem problem) : problem_(std::move(problem)) {
  problem_.validate();
  const auto& p = problem_.potential;
  dx_ = p.dx();
  const std::size_t cells = p.grid_x.size() - 1;
  cell_v_.assign(cells, 0.0);
  const double slack = 1e-12 * std::max(1.0, p.x_support);
  support_cells_ = 0;
  for (std::size_t j = 0; j < cells; ++j) {
    if (p.grid_x[j] >= p.x_support - slack) break;
    cell_v_[j] = 0.5 * (p.v[j] + p.v[j + 1]);
    support_cells_ = j + 1;
  }
  cell_v_.resize(support_cells_);
}

double RobinSystem::support_end() const noexcept {
  return dx_ * static_cast<double>(support_cells_);
}

BoundaryValue RobinSystem::jost_at(cplx k, double x) const {
  const double xs = support_end();
  if (x >= xs) {
    const cplx e = std::exp(kI * k * x);
    return {e, kI * k * e};
  }
  cplx f = std::exp(kI * k * xs);
  cplx fp = kI * k * f;
  const std::size_t target = std::min(static_cast<std::size_t>(std::max(0.0, x / dx_)),
                                      support_cells_ - 1);
  for (std::size_t j = support_cells_; j-- > target + 1;) {
    step_backward(make_cell(k, cell_v_[j], dx_), f, fp);
  }
  const double partial = dx_ * static_cast<double>(target + 1) - x;
  if (partial > 0.0) step_backward(make_cell(k, cell_v_[target], partial), f, fp);
  return {f, fp};
}

cplx RobinSystem::jost_function(cplx k) const {
  const auto b = jost_at(k, 0.0);
  return problem_.h * b.f + b.f_prime;
}

cplx RobinSystem::jost_function_derivative(cplx k) const {
  const double d = 1e-4 * std::max(1.0, std::abs(k));
  return (-jost_function(k + 2.0 * d) + 8.0 * jost_function(k + d) -
          8.0 * jost_function(k - d) + jost_function(k - 2.0 * d)) /
         (12.0 * d);
}

WaveSolution RobinSystem::jost_solution(cplx k) const {
  const auto& grid = problem_.potential.grid_x;
  const std::size_t n = grid.size();
  WaveSolution w{k, grid, std::vector<cplx>(n), std::vector<cplx>(n)};
  for (std::size_t i = support_cells_; i < n; ++i) {
    const cplx e = std::exp(kI * k * grid[i]);
    w.f[i] = e;
    w.f_prime[i] = kI * k * e;
  }
  cplx f = std::exp(kI * k * support_end());
  cplx fp = kI * k * f;
  for (std::size_t j = support_cells_; j-- > 0;) {
    step_backward(make_cell(k, cell_v_[j], dx_), f, fp);
    w.f[j] = f;
    w.f_prime[j] = fp;
  }
  return w;
}

WaveSolution RobinSystem::propagate_from_origin(cplx k, cplx f0, cplx fp0,
                                                double upto_x) const {
  if (upto_x < 0.0) throw Error(ErrorKind::precondition, "upto_x must be non-negative");
  WaveSolution w;
  w.k = k;
  cplx f = f0;
  cplx fp = fp0;
  w.grid_x.push_back(0.0);
  w.f.push_back(f);
  w.f_prime.push_back(fp);
  std::size_t j = 0;
  const double tol = 1e-12 * std::max(1.0, upto_x);
  while (dx_ * static_cast<double>(j + 1) <= upto_x + tol) {
    const double v = j < support_cells_ ? cell_v_[j] : 0.0;
    step_forward(make_cell(k, v, dx_), f, fp);
    ++j;
    w.grid_x.push_back(dx_ * static_cast<double>(j));
    w.f.push_back(f);
    w.f_prime.push_back(fp);
  }
  const double rest = upto_x - w.grid_x.back();
  if (rest > tol) {
    const double v = j < support_cells_ ? cell_v_[j] : 0.0;
    step_forward(make_cell(k, v, rest), f, fp);
    w.grid_x.push_back(upto_x);
    w.f.push_back(f);
    w.f_prime.push_back(fp);
  }
  return w;
}

BoundaryValue RobinSystem::solution_at(cplx k, cplx f0, cplx fp0, double x) const {
  cplx f = f0;
  cplx fp = fp0;
  std::size_t j = 0;
  const double tol = 1e-12 * std::max(1.0, x);
  while (dx_ * static_cast<double>(j + 1) <= x + tol) {
    const double v = j < support_cells_ ? cell_v_[j] : 0.0;
    step_forward(make_cell(k, v, dx_), f, fp);
    ++j;
  }
  const double rest = x - dx_ * static_cast<double>(j);
  if (rest > tol) {
    const double v = j < support_cells_ ? cell_v_[j] : 0.0;
    step_forward(make_cell(k, v, rest), f, fp);
  }
  return {f, fp};
}

cplx RobinSystem::potential_fourier(cplx k) const {
  const cplx a = 2.0 * kI * k;
  cplx cell_integral;
  const cplx z = a * dx_;
  if (std::abs(z) < 1e-4) {
    cell_integral = dx_ * (1.0 + z / 2.0 + z * z / 6.0);
  } else {
    cell_integral = (std::exp(z) - 1.0) / a;
  }
  cplx sum = 0.0;
  for (std::size_t j = 0; j < support_cells_; ++j) {
    sum += cell_v_[j] * std::exp(a * (dx_ * static_cast<double>(j)));
  }
  return sum * cell_integral;
}

double RobinSystem::potential_l1() const {
  double s = 0.0;
  for (double v : cell_v_) s += std::abs(v);
  return s * dx_;
}

WaveSolution jost_solution(const RobinProblem& prob, cplx k) {
  return RobinSystem(prob).jost_solution(k);
}

cplx jost_function(const RobinProblem& prob, cplx k) {
  return RobinSystem(prob).jost_function(k);
}

cplx jost_function_derivative(const RobinProblem& prob, cplx k) {
  return RobinSystem(prob).jost_function_derivative(k);
}

WaveSolution regular_solution(const RobinSystem& sys, cplx k, double upto_x) {
  return sys.propagate_from_origin(k, 1.0, -sys.h(), upto_x);
}

WaveSolution regular_solution(const RobinProblem& prob, cplx k, double upto_x) {
  return regular_solution(RobinSystem(prob), k, upto_x);
}

WaveSolution theta_solution(const RobinSystem& sys, cplx k, double upto_x) {
  return sys.propagate_from_origin(k, 0.0, 1.0, upto_x);
}

WaveSolution theta_solution(const RobinProblem& prob, cplx k, double upto_x) {
  return theta_solution(RobinSystem(prob), k, upto_x);
}

cplx weyl_solution(const RobinSystem& sys, cplx k, double x) {
  const cplx fh = checked_jost_function(sys, k);
  return sys.jost_at(k, x).f / fh;
}

cplx weyl_solution(const RobinProblem& prob, cplx k, double x) {
  return weyl_solution(RobinSystem(prob), k, x);
}

cplx weyl_solution_derivative(const RobinSystem& sys, cplx k, double x) {
  const cplx fh = checked_jost_function(sys, k);
  return sys.jost_at(k, x).f_prime / fh;
}

cplx weyl_function_forward(const RobinSystem& sys, cplx k) {
  const auto b = sys.jost_at(k, 0.0);
  const cplx fh = sys.h() * b.f + b.f_prime;
  if (std::abs(fh) < 1e-12 * std::max(1.0, std::abs(k))) throw_pole(sys, k);
  return b.f / fh;
}

cplx weyl_function_forward(const RobinProblem& prob, cplx k) {
  return weyl_function_forward(RobinSystem(prob), k);
}

cplx psi_function(const RobinSystem& sys, cplx k, double x) {
  if (k.imag() == 0.0) {
    throw Error(ErrorKind::precondition, "psi is discontinuous across the real axis");
  }
  const cplx phase = -kI * k * std::exp(kI * k * x);
  if (k.imag() > 0.0) {
    const cplx weyl_plus = weyl_solution(sys, k, x);
    const cplx reg = sys.solution_at(k, 1.0, -sys.h(), x).f;
    return phase * (weyl_plus + (2.0 * kI / k) * reg);
  }
  return phase * weyl_solution(sys, -k, x);
}

cplx psi_function(const RobinProblem& prob, cplx k, double x) {
  return psi_function(RobinSystem(prob), k, x);
}

cplx polish_jost_zero(const RobinSystem& sys, cplx k0, double tol, int max_iter) {
  cplx k = k0;
  for (int it = 0; it < max_iter; ++it) {
    const cplx f = sys.jost_function(k);
    const cplx df = sys.jost_function_derivative(k);
    if (df == 0.0) break;
    const cplx step = f / df;
    k -= step;
    if (std::abs(step) <= tol * std::max(1.0, std::abs(k))) return k;
  }
  throw Error(ErrorKind::convergence, "Newton polish of a Jost zero did not converge", k);
}

}  // namespace lovespec
