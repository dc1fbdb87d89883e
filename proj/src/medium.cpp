#include "lovespec/medium.hpp"

#include <cmath>
#include <sstream>

#include "lovespec/numerics.hpp"

namespace lovespec {

namespace {

// Points strictly beyond the support, with a little slack for grids whose
// last support node carries rounding noise.
bool beyond_support(double x, double x_support) {
  return x > x_support + 1e-12 * std::max(1.0, std::abs(x_support));
}

}  // namespace

void ShearProfile::validate() const {
  if (grid_x.size() != mu_hat.size()) {
    throw Error(ErrorKind::precondition, "profile grid_x and mu_hat differ in length");
  }
  if (!(x_support > 0.0)) throw Error(ErrorKind::precondition, "x_support must be positive");
  if (!(mu_hat_tail > 0.0)) throw Error(ErrorKind::domain, "mu_hat_tail must be positive");
  for (std::size_t i = 0; i < mu_hat.size(); ++i) {
    if (!(mu_hat[i] > 0.0)) {
      throw Error(ErrorKind::domain, "non-positive shear modulus sample",
                  cplx(grid_x[i], 0.0));
    }
    if (beyond_support(grid_x[i], x_support) &&
        std::abs(mu_hat[i] - mu_hat_tail) > 1e-12 * mu_hat_tail) {
      throw Error(ErrorKind::precondition,
                  "profile is not homogeneous beyond x_support", cplx(grid_x[i], 0.0));
    }
  }
  for (std::size_t i = 1; i < grid_x.size(); ++i) {
    if (!(grid_x[i] > grid_x[i - 1])) {
      throw Error(ErrorKind::precondition, "profile grid_x is not ascending");
    }
  }
}

void PotentialGrid::validate() const {
  if (grid_x.size() != v.size() || v.size() != v_prime.size()) {
    throw Error(ErrorKind::precondition, "potential arrays differ in length");
  }
  if (!(x_support > 0.0)) throw Error(ErrorKind::precondition, "x_support must be positive");
  uniform_spacing(grid_x, 2);
  if (std::abs(grid_x.front()) > 1e-12) {
    throw Error(ErrorKind::precondition, "potential grid must start at x = 0");
  }
  if (grid_x.back() < x_support - 1e-9 * std::max(1.0, x_support)) {
    throw Error(ErrorKind::precondition, "potential grid does not cover the support");
  }
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (!std::isfinite(v[i]) || !std::isfinite(v_prime[i])) {
      throw Error(ErrorKind::domain, "non-finite potential sample", cplx(grid_x[i], 0.0));
    }
    if (beyond_support(grid_x[i], x_support) && (v[i] != 0.0 || v_prime[i] != 0.0)) {
      throw Error(ErrorKind::precondition, "potential is non-zero beyond x_support",
                  cplx(grid_x[i], 0.0));
    }
  }
}

double PotentialGrid::dx() const {
  return (grid_x.back() - grid_x.front()) / static_cast<double>(grid_x.size() - 1);
}

double PotentialGrid::l1_norm() const {
  std::vector<double> a(v.size());
  for (std::size_t i = 0; i < v.size(); ++i) a[i] = std::abs(v[i]);
  return trapezoid(a, dx());
}

void finalize_potential(PotentialGrid& p) {
  const double dx = uniform_spacing(p.grid_x);
  p.v_prime = derivative(p.v, dx);
  for (std::size_t i = 0; i < p.v.size(); ++i) {
    if (beyond_support(p.grid_x[i], p.x_support)) {
      p.v[i] = 0.0;
      p.v_prime[i] = 0.0;
    }
  }
}

LoveTransform schrodinger_from_love(const ShearProfile& profile, double omega) {
  profile.validate();
  const double dx = uniform_spacing(profile.grid_x);
  const std::size_t n = profile.grid_x.size();

  std::vector<double> root(n);
  for (std::size_t i = 0; i < n; ++i) root[i] = std::sqrt(profile.mu_hat[i]);
  const auto root_dd = second_derivative(root, dx);
  const auto mu_d = derivative(profile.mu_hat, dx);

  const double w2 = omega * omega;
  LoveTransform out;
  out.potential.grid_x = profile.grid_x;
  out.potential.x_support = profile.x_support;
  out.potential.v.resize(n);
  for (std::size_t i = 0; i < n; ++i) {
    out.potential.v[i] =
        root_dd[i] / root[i] - w2 / profile.mu_hat[i] + w2 / profile.mu_hat_tail;
  }
  finalize_potential(out.potential);
  out.h = -0.5 * mu_d[0] / profile.mu_hat[0];
  return out;
}

cplx quasi_momentum(const MediumConfig& cfg) {
  const double radicand =
      cfg.omega * cfg.omega / cfg.mu_hat_tail - cfg.xi_norm * cfg.xi_norm;
  if (radicand >= 0.0) return {std::sqrt(radicand), 0.0};
  return {0.0, std::sqrt(-radicand)};
}

ShearProfile shear_from_two_potentials(const PotentialGrid& v1,
                                       const PotentialGrid& v2, double omega1,
                                       double omega2, double mu_hat_tail) {
  if (omega1 * omega1 == omega2 * omega2) {
    throw Error(ErrorKind::precondition, "shear recovery needs two distinct frequencies");
  }
  if (v1.grid_x.size() != v2.grid_x.size() ||
      std::abs(v1.x_support - v2.x_support) > 1e-12 * std::max(1.0, v1.x_support)) {
    throw Error(ErrorKind::precondition, "potentials do not share grid and support");
  }
  for (std::size_t i = 0; i < v1.grid_x.size(); ++i) {
    if (std::abs(v1.grid_x[i] - v2.grid_x[i]) > 1e-12 * std::max(1.0, v1.grid_x[i])) {
      throw Error(ErrorKind::precondition, "potentials do not share grid");
    }
  }
  if (!(mu_hat_tail > 0.0)) throw Error(ErrorKind::domain, "mu_hat_tail must be positive");

  const double dw = omega1 * omega1 - omega2 * omega2;
  ShearProfile out;
  out.grid_x = v1.grid_x;
  out.mu_hat_tail = mu_hat_tail;
  out.x_support = v1.x_support;
  out.mu_hat.resize(v1.v.size());
  for (std::size_t i = 0; i < v1.v.size(); ++i) {
    if (beyond_support(v1.grid_x[i], v1.x_support)) {
      out.mu_hat[i] = mu_hat_tail;
      continue;
    }
    const double denom = dw - mu_hat_tail * (v1.v[i] - v2.v[i]);
    if (std::abs(denom) <= 1e-12 * std::abs(dw)) {
      std::ostringstream msg;
      msg << "shear recovery denominator vanishes at x = " << v1.grid_x[i];
      throw Error(ErrorKind::singular_recovery, msg.str(), cplx(v1.grid_x[i], 0.0));
    }
    out.mu_hat[i] = mu_hat_tail * dw / denom;
  }
  return out;
}

}  // namespace lovespec
