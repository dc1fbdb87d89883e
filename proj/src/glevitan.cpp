#include "lovespec/glevitan.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

#include "lovespec/kernels.hpp"
#include "lovespec/numerics.hpp"

namespace lovespec {

namespace {

constexpr cplx kI{0.0, 1.0};
constexpr double kPi = std::numbers::pi;

// Number of table intervals inside [0, min(k_cutoff, t_max)].
std::size_t cutoff_intervals(const WeylData& w) {
  const double k = std::min(w.k_cutoff, w.jump->t_max());
  return static_cast<std::size_t>(std::floor(k / w.jump->dt() + 1e-9));
}

// A(k) = k T(k^2) - 1/pi on the table nodes up to the cutoff.
std::vector<double> a_samples(const WeylData& w, std::size_t intervals) {
  const auto& q = w.jump->values();
  std::vector<double> a(intervals + 1);
  for (std::size_t i = 0; i <= intervals; ++i) a[i] = 0.5 * q[i];
  return a;
}

double pole_term(const WeylData& w, double x, double y) {
  double s = 0.0;
  for (std::size_t j = 0; j < w.pole_k.size(); ++j) {
    s += w.alphas[j] * (std::cos(w.pole_k[j] * x) * std::cos(w.pole_k[j] * y)).real();
  }
  return s;
}

void check_grid(std::span<const double> grid) {
  uniform_spacing(grid);
  if (std::abs(grid.front()) > 1e-12) {
    throw Error(ErrorKind::precondition, "kernel grid must start at x = 0");
  }
}

}  // namespace

void WeylData::validate() const {
  if (!jump) throw Error(ErrorKind::precondition, "Weyl data has no jump table");
  if (pole_k.size() != alphas.size()) {
    throw Error(ErrorKind::data_inconsistency, "poles and alphas differ in length");
  }
  for (std::size_t j = 0; j < alphas.size(); ++j) {
    if (!(alphas[j] > 0.0)) {
      throw Error(ErrorKind::data_inconsistency, "non-positive norming constant", pole_k[j]);
    }
  }
  if (!(k_cutoff > 0.0)) throw Error(ErrorKind::configuration, "k_cutoff must be positive");
  if (k_cutoff > jump->t_max() * (1.0 + 1e-9)) {
    throw Error(ErrorKind::configuration, "k_cutoff exceeds the sampled jump function");
  }
  if (!(x_support > 0.0)) throw Error(ErrorKind::configuration, "x_support must be positive");
}

WeylData WeylData::from_spectrum(const SpectrumData& s, double k_cutoff, double x_support) {
  WeylData w;
  w.jump = std::make_shared<const JumpTable>(JumpTable::from_samples(s.jump_samples));
  w.pole_k = s.eigen_k;
  w.alphas = s.alphas;
  w.k_cutoff = std::min(k_cutoff, w.jump->t_max());
  w.x_support = x_support;
  return w;
}

cplx j_function(const WeylEvaluator& m, cplx k) {
  if (k.imag() < 0.0) throw Error(ErrorKind::precondition, "j is evaluated for Im k >= 0", k);
  if (k == 0.0) throw Error(ErrorKind::precondition, "j is singular at k = 0");
  return m.m(k) - 1.0 / (kI * k);
}

namespace {

// int_K^inf cos(a k) / k^2 dk and int_K^inf sin(a k) / k^2 dk.
double tail_cos(double a, double k) {
  const double b = std::abs(a);
  if (b == 0.0) return 1.0 / k;
  return std::cos(b * k) / k - b * (0.5 * kPi - sine_integral(b * k));
}

// int_K^inf cos(a k) / k^4 dk.
double tail_cos4(double a, double k) {
  return std::cos(a * k) / (3.0 * k * k * k) - a * std::sin(a * k) / (6.0 * k * k) -
         a * a * tail_cos(a, k) / 6.0;
}

double tail_sin(double a, double k) {
  if (a == 0.0) return 0.0;
  return std::sin(a * k) / k - a * cosine_integral(std::abs(a) * k);
}

// int_K^inf sin(a k) / k^4 dk.
double tail_sin4(double a, double k) {
  return std::sin(a * k) / (3.0 * k * k * k) + a * std::cos(a * k) / (6.0 * k * k) -
         a * a * tail_sin(a, k) / 6.0;
}

}  // namespace

double TailModel::cosine_tail(double s) const {
  const double k = k_cut;
  const double two_x = 2.0 * x_support;
  return c0 * tail_cos(s, k) + c3 * tail_cos4(s, k) + 0.5 * c1 * (tail_cos(s + two_x, k) + tail_cos(s - two_x, k)) +
         0.5 * c2 * (tail_sin(two_x + s, k) + tail_sin(two_x - s, k)) +
         0.5 * c4 * (tail_cos4(s + two_x, k) + tail_cos4(s - two_x, k)) +
         0.5 * c5 * (tail_sin4(two_x + s, k) + tail_sin4(two_x - s, k));
}

TailModel fit_tail(const WeylData& w, double tol) {
  w.validate();
  const std::size_t n = cutoff_intervals(w);
  const double dt = w.jump->dt();
  TailModel t;
  t.x_support = w.x_support;
  t.k_cut = dt * static_cast<double>(n);
  const std::size_t first = n / 2;
  const auto rows = static_cast<Eigen::Index>(n - first + 1);
  if (rows < 8) throw Error(ErrorKind::quadrature_resolution, "too few samples for the tail fit");
  Eigen::MatrixXd a(rows, 6);
  Eigen::VectorXd y(rows);
  const auto& q = w.jump->values();
  for (std::size_t i = first; i <= n; ++i) {
    const auto r = static_cast<Eigen::Index>(i - first);
    const double k = dt * static_cast<double>(i);
    a(r, 0) = 1.0;
    a(r, 1) = std::cos(2.0 * k * w.x_support);
    a(r, 2) = std::sin(2.0 * k * w.x_support);
    a(r, 3) = 1.0 / (k * k);
    a(r, 4) = a(r, 1) / (k * k);
    a(r, 5) = a(r, 2) / (k * k);
    y(r) = 0.5 * k * k * q[i];
  }
  const Eigen::VectorXd c = a.colPivHouseholderQr().solve(y);
  t.c0 = c(0);
  t.c1 = c(1);
  t.c2 = c(2);
  t.c3 = c(3);
  t.c4 = c(4);
  t.c5 = c(5);
  t.residual = std::sqrt((a * c - y).squaredNorm() / static_cast<double>(rows));
  if (!std::isfinite(t.residual) || t.residual / t.k_cut > tol) {
    std::ostringstream msg;
    msg << "oscillation of k^2 A(k) is unresolved at K_max = " << t.k_cut
        << " (tail misfit " << t.residual / t.k_cut << ")";
    throw Error(ErrorKind::quadrature_resolution, msg.str());
  }
  return t;
}

Kernel2D::Kernel2D(Kind k, std::vector<double> grid) : kind(k), grid_x(std::move(grid)) {
  const std::size_t n = grid_x.size();
  values.assign(n * (n + 1) / 2, 0.0);
}

double Kernel2D::dx() const {
  return (grid_x.back() - grid_x.front()) / static_cast<double>(grid_x.size() - 1);
}

double Kernel2D::full(std::size_t i, std::size_t j) const {
  if (j <= i) return (*this)(i, j);
  return symmetric ? (*this)(j, i) : 0.0;
}

std::vector<double> Kernel2D::diagonal() const {
  std::vector<double> d(size());
  for (std::size_t i = 0; i < size(); ++i) d[i] = (*this)(i, i);
  return d;
}

std::vector<double> Kernel2D::row(std::size_t i) const {
  const auto begin = values.begin() + static_cast<long>(i * (i + 1) / 2);
  return {begin, begin + static_cast<long>(i + 1)};
}

GKernel build_g(const WeylData& w, std::span<const double> grid, bool parallel) {
  check_grid(grid);
  GKernel out;
  out.tail = fit_tail(w);
  const std::size_t intervals = cutoff_intervals(w);
  const auto a = a_samples(w, intervals);
  const std::size_t n = grid.size();
  const double dx = (grid.back() - grid.front()) / static_cast<double>(n - 1);
  auto h = parallel ? kernels::filon_cosine(a, w.jump->dt(), 2 * n - 1, dx)
                    : kernels::filon_cosine_serial(a, w.jump->dt(), 2 * n - 1, dx);
  for (std::size_t j = 0; j < h.size(); ++j) {
    h[j] += out.tail.cosine_tail(dx * static_cast<double>(j));
  }
  out.g = Kernel2D(Kernel2D::Kind::g, {grid.begin(), grid.end()});
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j <= i; ++j) {
      out.g.at(i, j) = h[i - j] + h[i + j] + pole_term(w, grid[i], grid[j]);
    }
  }
  return out;
}

GKernel build_g_reference(const WeylData& w, std::span<const double> grid) {
  check_grid(grid);
  GKernel out;
  out.tail = fit_tail(w);
  const auto a = a_samples(w, cutoff_intervals(w));
  const double dk = w.jump->dt();
  out.g = Kernel2D(Kernel2D::Kind::g, {grid.begin(), grid.end()});
  for (std::size_t i = 0; i < grid.size(); ++i) {
    for (std::size_t j = 0; j <= i; ++j) {
      const double d = grid[i] - grid[j];
      const double s = grid[i] + grid[j];
      out.g.at(i, j) = kernels::filon_cosine_at(a, dk, d) + out.tail.cosine_tail(d) +
                       kernels::filon_cosine_at(a, dk, s) + out.tail.cosine_tail(s) +
                       pole_term(w, grid[i], grid[j]);
    }
  }
  return out;
}

double check_solvability(const Kernel2D& g, double x) {
  const double dx = g.dx();
  const auto last = std::min(g.size() - 1, static_cast<std::size_t>(std::floor(x / dx + 1e-9)));
  std::vector<double> sup(last + 1);
  for (std::size_t t = 0; t <= last; ++t) {
    double m = 0.0;
    for (std::size_t s = 0; s <= t; ++s) m = std::max(m, std::abs(g(t, s)));
    sup[t] = m;
  }
  return trapezoid(sup, dx);
}

namespace {

std::vector<double> dense(const Kernel2D& g) {
  const std::size_t n = g.size();
  std::vector<double> m(n * n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) m[i * n + j] = g.full(i, j);
  }
  return m;
}

}  // namespace

GLSolution solve_gl(const Kernel2D& g, bool parallel) {
  if (g.kind != Kernel2D::Kind::g || !g.symmetric) {
    throw Error(ErrorKind::precondition, "solve_gl needs a symmetric g kernel");
  }
  const auto m = dense(g);
  auto rows = parallel ? kernels::solve_gl_rows(m, g.size(), g.dx())
                       : kernels::solve_gl_rows_serial(m, g.size(), g.dx());
  GLSolution out;
  out.kernel = Kernel2D(Kernel2D::Kind::K, g.grid_x);
  out.kernel.values = std::move(rows.values);
  out.residuals = std::move(rows.residuals);
  out.max_residual = *std::max_element(out.residuals.begin(), out.residuals.end());
  out.pivot_ratio = rows.pivot_ratio;
  return out;
}

std::vector<double> solve_gl_row(const Kernel2D& g, std::size_t n, double* residual) {
  if (n >= g.size()) throw Error(ErrorKind::precondition, "row index beyond the grid");
  const auto m = static_cast<Eigen::Index>(n + 1);
  const double dx = g.dx();
  Eigen::MatrixXd a(m, m);
  Eigen::VectorXd b(m);
  for (Eigen::Index r = 0; r < m; ++r) {
    b(r) = g.full(n, static_cast<std::size_t>(r));
    for (Eigen::Index j = 0; j < m; ++j) {
      double w = (j == 0 || j == m - 1) ? 0.5 * dx : dx;
      if (m == 1) w = 0.0;
      a(r, j) = (r == j ? 1.0 : 0.0) +
                w * g.full(static_cast<std::size_t>(j), static_cast<std::size_t>(r));
    }
  }
  const Eigen::VectorXd k = a.partialPivLu().solve(b);
  if (!k.allFinite()) {
    throw Error(ErrorKind::solvability, "singular Gelfand-Levitan row system",
                cplx(g.grid_x[n], 0.0));
  }
  if (residual) *residual = (a * k - b).lpNorm<Eigen::Infinity>();
  return {k.data(), k.data() + m};
}

GLSolution solve_gl_lower(const Kernel2D& g) {
  if (g.kind != Kernel2D::Kind::g) throw Error(ErrorKind::precondition, "expected a g kernel");
  const std::size_t n = g.size();
  const double dx = g.dx();
  GLSolution out;
  out.kernel = Kernel2D(Kernel2D::Kind::K, g.grid_x);
  out.residuals.assign(n, 0.0);
  const auto rows = static_cast<long>(n);
#pragma omp parallel for schedule(dynamic, 16)
  for (long rl = 0; rl < rows; ++rl) {
    const auto r = static_cast<std::size_t>(rl);
    // Row j of g is contiguous, so each solved K_j is scattered into the
    // partial sums of all m < j.
    std::vector<double> k(r + 1);
    std::vector<double> acc(r + 1, 0.0);
    for (std::size_t j = r + 1; j-- > 0;) {
      if (j == r) {
        k[j] = g(r, r);
      } else {
        k[j] = (g(r, j) - acc[j]) / (1.0 + 0.5 * dx * g(j, j));
      }
      const double c = (j == r ? 0.5 * dx : dx) * k[j];
      const double* gj = &g.values[j * (j + 1) / 2];
      for (std::size_t m = 0; m < j; ++m) acc[m] += c * gj[m];
    }
    // Residual by an ascending pass.
    std::fill(acc.begin(), acc.end(), 0.0);
    for (std::size_t j = 0; j <= r; ++j) {
      const double* gj = &g.values[j * (j + 1) / 2];
      const double kj = k[j];
      for (std::size_t m = 0; m <= j; ++m) {
        const double w = (m == j || j == r) ? 0.5 * dx : dx;
        acc[m] += w * kj * gj[m];
      }
    }
    double worst = std::abs(k[r] - g(r, r));
    for (std::size_t m = 0; m < r; ++m) {
      worst = std::max(worst, std::abs(k[m] - g(r, m) + acc[m]));
    }
    out.residuals[r] = worst;
    std::copy(k.begin(), k.end(), out.kernel.values.begin() + static_cast<long>(r * (r + 1) / 2));
  }
  out.max_residual = *std::max_element(out.residuals.begin(), out.residuals.end());
  return out;
}

GLSolution solve_gl_lower_extrapolated(const std::function<double(double, double)>& g,
                                       double x_max, std::size_t n, int levels) {
  if (levels < 1 || n < 2) throw Error(ErrorKind::precondition, "need n >= 2 and levels >= 1");
  std::vector<std::vector<double>> table;  // coarse-node values per level
  GLSolution finest;
  const std::size_t packed = n * (n + 1) / 2;
  for (int l = 0; l < levels; ++l) {
    const std::size_t stride = std::size_t{1} << l;
    const std::size_t nl = (n - 1) * stride + 1;
    Kernel2D gk(Kernel2D::Kind::g, std::vector<double>(nl));
    gk.symmetric = false;
    for (std::size_t i = 0; i < nl; ++i) gk.grid_x[i] = x_max * static_cast<double>(i) / static_cast<double>(nl - 1);
    for (std::size_t i = 0; i < nl; ++i) {
      for (std::size_t j = 0; j <= i; ++j) gk.at(i, j) = g(gk.grid_x[i], gk.grid_x[j]);
    }
    auto sol = solve_gl_lower(gk);
    std::vector<double> coarse(packed);
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = 0; j <= i; ++j) coarse[i * (i + 1) / 2 + j] = sol.kernel(i * stride, j * stride);
    }
    table.push_back(std::move(coarse));
    if (l + 1 == levels) finest = std::move(sol);
  }
  // Romberg in dx^2.
  for (int m = 1; m < levels; ++m) {
    const double f = std::pow(4.0, m);
    for (int l = levels - 1; l >= m; --l) {
      for (std::size_t p = 0; p < packed; ++p) {
        table[l][p] = table[l][p] + (table[l][p] - table[l - 1][p]) / (f - 1.0);
      }
    }
  }
  GLSolution out;
  out.kernel = Kernel2D(Kernel2D::Kind::K, std::vector<double>(n));
  for (std::size_t i = 0; i < n; ++i) out.kernel.grid_x[i] = x_max * static_cast<double>(i) / static_cast<double>(n - 1);
  out.kernel.values = std::move(table.back());
  const std::size_t stride = std::size_t{1} << (levels - 1);
  out.residuals.resize(n);
  for (std::size_t i = 0; i < n; ++i) out.residuals[i] = finest.residuals[i * stride];
  out.max_residual = finest.max_residual;
  return out;
}

double kernel_direct(const WeylData& w, const RobinSystem& sys, double x, double y) {
  const TailModel tail = fit_tail(w);
  std::size_t n = cutoff_intervals(w);
  n -= n % 2;
  const double dk = w.jump->dt();
  const auto& q = w.jump->values();
  // Simpson on the table nodes.
  CompensatedSum s;
  for (std::size_t i = 0; i <= n; ++i) {
    const double k = dk * static_cast<double>(i);
    const double phi = sys.solution_at(k, 1.0, -sys.h(), x).f.real();
    const double weight = (i == 0 || i == n) ? 1.0 : (i % 2 == 1 ? 4.0 : 2.0);
    s.add(weight * q[i] * phi * std::cos(k * y));
  }
  double value = s.value() * dk / 3.0;
  // Beyond the cutoff phi(x, k) ~ cos(kx).
  value += tail.cosine_tail(x - y) + tail.cosine_tail(x + y);
  for (std::size_t j = 0; j < w.pole_k.size(); ++j) {
    const cplx phi = sys.solution_at(w.pole_k[j], 1.0, -sys.h(), x).f;
    value += w.alphas[j] * (phi * std::cos(w.pole_k[j] * y)).real();
  }
  return value;
}

Extraction extract_potential(std::span<const double> k_diag, std::span<const double> grid,
                             double x_support, double tol) {
  if (k_diag.size() != grid.size()) {
    throw Error(ErrorKind::precondition, "diagonal and grid differ in length");
  }
  const double dx = uniform_spacing(grid);
  Extraction out;
  out.h = k_diag[0];
  auto v = derivative(k_diag, dx);
  for (double& e : v) e *= -2.0;
  const auto integral = cumulative_trapezoid(v, dx);
  double scale = 1.0;
  for (std::size_t i = 0; i < grid.size(); ++i) {
    scale = std::max(scale, std::abs(k_diag[i]));
    out.consistency =
        std::max(out.consistency, std::abs(integral[i] - 2.0 * out.h + 2.0 * k_diag[i]));
  }
  if (out.consistency > tol * scale) {
    std::ostringstream msg;
    msg << "differentiated and integrated potential disagree by " << out.consistency;
    throw Error(ErrorKind::extraction, msg.str());
  }
  out.potential.grid_x.assign(grid.begin(), grid.end());
  out.potential.v = std::move(v);
  out.potential.x_support = x_support;
  finalize_potential(out.potential);
  return out;
}

cplx regular_solution_from_kernel(const Kernel2D& kernel, cplx k, double x) {
  const double dx = kernel.dx();
  const auto i = static_cast<std::size_t>(std::llround(x / dx));
  if (i >= kernel.size() || std::abs(x - dx * static_cast<double>(i)) > 1e-9 * std::max(1.0, x)) {
    throw Error(ErrorKind::precondition, "x is not a node of the kernel grid");
  }
  cplx s = 0.0;
  for (std::size_t j = 0; j <= i; ++j) {
    const double w = (j == 0 || j == i) ? 0.5 * dx : dx;
    s += w * kernel(i, j) * std::cos(k * kernel.grid_x[j]);
  }
  if (i == 0) s = 0.0;
  return std::cos(k * kernel.grid_x[i]) - s;
}

}  // namespace lovespec
