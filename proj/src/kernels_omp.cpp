#include <Eigen/Dense>
#include <omp.h>

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdlib>
#include <limits>
#include <stdexcept>
#include <string>

#include "kernels_detail.hpp"
#include "lovespec/error.hpp"
#include "lovespec/kernels.hpp"

namespace lovespec::kernels {

namespace {

int default_threads() {
  static const int n = omp_get_max_threads();
  return n;
}

}  // namespace

int set_thread_limit(int threads) {
  const int n = threads > 0 ? std::min(threads, default_threads()) : default_threads();
  omp_set_num_threads(n);
  Eigen::setNbThreads(n);
  return thread_count();
}

int apply_thread_environment() {
  if (const char* env = std::getenv("LOVESPEC_THREADS")) {
    try {
      std::size_t used = 0;
      const int n = std::stoi(env, &used);
      if (n < 1 || env[used] != '\0') throw std::invalid_argument("not a positive integer");
      return set_thread_limit(n);
    } catch (const std::exception&) {
      throw Error(ErrorKind::configuration,
                  std::string("LOVESPEC_THREADS must be a positive integer, got '") + env + "'");
    }
  }
  return thread_count();
}

int thread_count() { return omp_get_max_threads(); }

std::vector<double> filon_cosine(std::span<const double> a, double dk, std::size_t count,
                                 double ds) {
  if (a.size() < 2) throw Error(ErrorKind::resolution, "Filon transform needs two samples");
  std::vector<double> out(count);
  const auto n = static_cast<long>(count);
#pragma omp parallel for schedule(static)
  for (long j = 0; j < n; ++j) {
    out[static_cast<std::size_t>(j)] = detail::filon_value(a, dk, ds * static_cast<double>(j));
  }
  return out;
}

GLRows solve_gl_rows(std::span<const double> g, std::size_t n, double dx) {
  if (g.size() != n * n) throw Error(ErrorKind::precondition, "kernel matrix size mismatch");
  using Eigen::Index;
  using Mat = Eigen::MatrixXd;
  const Index nn = static_cast<Index>(n);
  const Eigen::Map<const Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>>
      gm(g.data(), nn, nn);

  // B(m, j) = delta_mj + wbar_j g(y_j, y_m), wbar_0 = dx/2, wbar_j = dx.
  Mat lu(nn, nn);
#pragma omp parallel for schedule(static)
  for (Index j = 0; j < nn; ++j) {
    const double w = j == 0 ? 0.5 * dx : dx;
    for (Index m = 0; m < nn; ++m) lu(m, j) = (m == j ? 1.0 : 0.0) + w * gm(j, m);
  }

  constexpr Index kBlock = 64;
  double umax = 0.0;
  double umin = std::numeric_limits<double>::infinity();
  for (Index k = 0; k < nn; k += kBlock) {
    const Index b = std::min(kBlock, nn - k);
    for (Index i = k; i < k + b; ++i) {
      const double piv = lu(i, i);
      umax = std::max(umax, std::abs(piv));
      umin = std::min(umin, std::abs(piv));
      if (!(std::abs(piv) > 1e-14 * std::max(1.0, umax))) {
        throw Error(ErrorKind::solvability,
                    "Gelfand-Levitan system is singular (pivot " + std::to_string(piv) + ")",
                    std::complex<double>(dx * static_cast<double>(i), 0.0));
      }
      const Index below = nn - i - 1;
      if (below == 0) continue;
      lu.col(i).tail(below) /= piv;
      const Index right = k + b - i - 1;
      if (right > 0) {
        lu.block(i + 1, i + 1, below, right).noalias() -=
            lu.col(i).tail(below) * lu.row(i).segment(i + 1, right);
      }
    }
    const Index rest = nn - k - b;
    if (rest > 0) {
      lu.block(k, k + b, b, rest) =
          lu.block(k, k, b, b).triangularView<Eigen::UnitLower>().solve(lu.block(k, k + b, b, rest));
      lu.bottomRightCorner(rest, rest).noalias() -=
          lu.block(k + b, k, rest, b) * lu.block(k, k + b, b, rest);
    }
  }

  GLRows out;
  out.values.resize(n * (n + 1) / 2);
  out.residuals.resize(n);
  out.pivot_ratio = umin / umax;
  std::atomic<long> bad_row{-1};
#pragma omp parallel for schedule(dynamic, 16)
  for (Index row = 0; row < nn; ++row) {
    const Index m = row + 1;
    const Eigen::VectorXd b = gm.row(row).head(m).transpose();
    Eigen::VectorXd z = b;
    lu.topLeftCorner(m, m).triangularView<Eigen::UnitLower>().solveInPlace(z);
    lu.topLeftCorner(m, m).triangularView<Eigen::Upper>().solveInPlace(z);
    // The end node carries half weight: rank-one correction of the prefix system.
    const double denom = 1.0 - 0.5 * dx * z(row);
    if (!(std::abs(denom) > 1e-14) || !z.allFinite()) {
      bad_row = static_cast<long>(row);
      continue;
    }
    const Eigen::VectorXd k = z / denom;
    Eigen::VectorXd wk = dx * k;
    wk(0) *= 0.5;
    wk(row) *= 0.5;
    if (row == 0) wk(0) = 0.0;
    const Eigen::VectorXd r = k + gm.topLeftCorner(m, m).transpose() * wk - b;
    out.residuals[static_cast<std::size_t>(row)] = r.lpNorm<Eigen::Infinity>();
    std::copy(k.data(), k.data() + m,
              out.values.begin() + static_cast<long>(row * (row + 1) / 2));
  }
  if (bad_row >= 0) {
    throw Error(ErrorKind::solvability, "Gelfand-Levitan row system is singular",
                std::complex<double>(dx * static_cast<double>(bad_row.load()), 0.0));
  }
  return out;
}

}  // namespace lovespec::kernels
