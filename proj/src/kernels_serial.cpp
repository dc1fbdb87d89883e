#define EIGEN_DONT_PARALLELIZE
#include <Eigen/Dense>

#include <algorithm>
#include <cmath>

#include "kernels_detail.hpp"
#include "lovespec/error.hpp"
#include "lovespec/kernels.hpp"

namespace lovespec::kernels {

double filon_cosine_at(std::span<const double> a, double dk, double s) {
  if (a.size() < 2) throw Error(ErrorKind::resolution, "Filon transform needs two samples");
  return detail::filon_value(a, dk, s);
}

std::vector<double> filon_cosine_serial(std::span<const double> a, double dk,
                                        std::size_t count, double ds) {
  if (a.size() < 2) throw Error(ErrorKind::resolution, "Filon transform needs two samples");
  std::vector<double> out(count);
  for (std::size_t j = 0; j < count; ++j) {
    out[j] = detail::filon_value(a, dk, ds * static_cast<double>(j));
  }
  return out;
}

GLRows solve_gl_rows_serial(std::span<const double> g, std::size_t n, double dx) {
  if (g.size() != n * n) throw Error(ErrorKind::precondition, "kernel matrix size mismatch");
  using Eigen::Index;
  const Eigen::Map<const Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>>
      gm(g.data(), static_cast<Index>(n), static_cast<Index>(n));
  GLRows out;
  out.values.resize(n * (n + 1) / 2);
  out.residuals.resize(n);
  for (std::size_t row = 0; row < n; ++row) {
    const Index m = static_cast<Index>(row) + 1;
    Eigen::VectorXd w = Eigen::VectorXd::Constant(m, dx);
    w(0) *= 0.5;
    w(m - 1) *= 0.5;
    if (m == 1) w(0) = 0.0;
    Eigen::MatrixXd a = gm.topLeftCorner(m, m).transpose() * w.asDiagonal();
    a.diagonal().array() += 1.0;
    const Eigen::VectorXd b = gm.row(static_cast<Index>(row)).head(m).transpose();
    const Eigen::VectorXd k = a.partialPivLu().solve(b);
    if (!k.allFinite()) {
      throw Error(ErrorKind::solvability, "singular Gelfand-Levitan system",
                  std::complex<double>(dx * static_cast<double>(row), 0.0));
    }
    const Eigen::VectorXd r = a * k - b;
    out.residuals[row] = r.lpNorm<Eigen::Infinity>();
    std::copy(k.data(), k.data() + m, out.values.begin() + static_cast<long>(row * (row + 1) / 2));
  }
  return out;
}

}  // namespace lovespec::kernels
