#pragma once

#include <vector>

#include "lovespec/error.hpp"

namespace lovespec {

/// Density-normalized shear modulus sampled in depth. Depth is stored as the
/// positive coordinate x = -Z; the medium is homogeneous (mu_hat_tail) for
/// x > x_support.
struct ShearProfile {
  std::vector<double> grid_x;
  std::vector<double> mu_hat;
  double mu_hat_tail = 1.0;
  double x_support = 1.0;

  /// Throws domain (non-positive modulus) or precondition (shape, tail) errors.
  void validate() const;
};

/// Compactly supported potential on a uniform half-line grid.
struct PotentialGrid {
  std::vector<double> grid_x;
  std::vector<double> v;
  std::vector<double> v_prime;
  double x_support = 1.0;

  void validate() const;
  double dx() const;
  /// Trapezoid L1 norm of v.
  double l1_norm() const;
};

struct MediumConfig {
  double omega = 0.0;
  double xi_norm = 0.0;
  double mu_hat_tail = 1.0;
};

struct LoveTransform {
  PotentialGrid potential;
  double h = 0.0;
};

/// Calibration transform of the Love problem at angular frequency omega:
/// V = (sqrt mu)''/sqrt mu - omega^2/mu + omega^2/mu_tail, h = -mu'(0)/(2 mu(0)).
LoveTransform schrodinger_from_love(const ShearProfile& profile, double omega);

/// Principal root of omega^2/mu_tail - |xi|^2 (Im k >= 0).
cplx quasi_momentum(const MediumConfig& cfg);

/// Inverts the omega dependence of two potentials of the same medium.
ShearProfile shear_from_two_potentials(const PotentialGrid& v1,
                                       const PotentialGrid& v2, double omega1,
                                       double omega2, double mu_hat_tail);

/// Fills v_prime from v (4th-order differences) and zeroes both beyond
/// x_support.
void finalize_potential(PotentialGrid& p);

}  // namespace lovespec
