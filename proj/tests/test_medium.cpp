#include <cmath>

#include "doctest.h"
#include "lovespec/fixtures.hpp"
#include "lovespec/medium.hpp"

using namespace lovespec;

TEST_CASE("constant profile gives the zero potential") {
  auto p = fixtures::bump_profile(0.0, 2.0, 1.0, 101);
  const auto t = schrodinger_from_love(p, 1.3);
  CHECK(t.h == 0.0);
  for (double v : t.potential.v) CHECK(std::abs(v) < 1e-10);
}

TEST_CASE("bump profile potential against closed-form derivatives") {
  const double a = 0.2;
  const auto p = fixtures::bump_profile(a, 1.5, 1.0, 2001);
  for (double omega : {1.0, 2.0}) {
    const auto t = schrodinger_from_love(p, omega);
    double interior = 0.0;
    double ends = 0.0;
    const std::size_t n = p.grid_x.size();
    for (std::size_t i = 0; i < n; ++i) {
      const double exact = fixtures::bump_profile_potential(a, 1.5, 1.0, omega, p.grid_x[i]);
      const double e = std::abs(t.potential.v[i] - exact);
      if (i < 2 || i + 2 >= n) {
        ends = std::max(ends, e);
      } else {
        interior = std::max(interior, e);
      }
    }
    // The end stencils are one-sided and second order.
    CHECK(interior < 1e-6);
    CHECK(ends < 1e-3);
    CHECK(std::abs(t.h) < 1e-6);
  }
}

TEST_CASE("frequency dependence of the potential") {
  const auto p = fixtures::bump_profile(0.2, 1.0, 1.0, 501);
  const auto t1 = schrodinger_from_love(p, 1.0);
  const auto t2 = schrodinger_from_love(p, 2.0);
  for (std::size_t i = 0; i < p.grid_x.size(); ++i) {
    const double expected = (1.0 - 4.0) * (1.0 / p.mu_hat_tail - 1.0 / p.mu_hat[i]);
    CHECK(std::abs((t1.potential.v[i] - t2.potential.v[i]) - expected) < 1e-12);
  }
}

TEST_CASE("Robin coefficient sign") {
  ShearProfile p;
  p.grid_x = fixtures::uniform_grid(1.0, 101);
  p.x_support = 1.0;
  p.mu_hat_tail = 2.0;
  for (double x : p.grid_x) p.mu_hat.push_back(1.0 + x);
  const auto t = schrodinger_from_love(p, 0.0);
  CHECK(t.h == doctest::Approx(-0.5).epsilon(1e-10));
}

TEST_CASE("profile validation errors") {
  auto p = fixtures::bump_profile(0.2, 1.0, 1.0, 101);
  p.mu_hat[3] = -1.0;
  try {
    schrodinger_from_love(p, 1.0);
    FAIL("expected a domain error");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::domain);
  }
  auto q = fixtures::bump_profile(0.2, 1.0, 1.0, 4);
  try {
    schrodinger_from_love(q, 1.0);
    FAIL("expected a resolution error");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::resolution);
  }
}

TEST_CASE("quasi-momentum") {
  CHECK(std::abs(quasi_momentum({3.0, std::sqrt(2.0), 3.0}) - 1.0) < 1e-12);
  CHECK(std::abs(quasi_momentum({0.0, 2.0, 1.0}) - cplx(0.0, 2.0)) < 1e-12);
  CHECK(std::abs(quasi_momentum({std::sqrt(2.0 * 1.7), 1.0, 1.7}) - 1.0) < 1e-12);
}

TEST_CASE("shear recovery from two potentials") {
  const auto p = fixtures::bump_profile(0.2, 1.3, 1.0, 2001);
  const auto t1 = schrodinger_from_love(p, 1.0);
  const auto t2 = schrodinger_from_love(p, 2.0);
  const auto back = shear_from_two_potentials(t1.potential, t2.potential, 1.0, 2.0, 1.3);
  for (std::size_t i = 0; i < p.grid_x.size(); ++i) {
    CHECK(std::abs(back.mu_hat[i] / p.mu_hat[i] - 1.0) < 1e-10);
  }
  auto zero = fixtures::free_problem(0.0, 11).potential;
  const auto flat = shear_from_two_potentials(zero, zero, 1.0, 2.0, 1.3);
  for (double m : flat.mu_hat) CHECK(m == 1.3);
  try {
    shear_from_two_potentials(zero, zero, 1.0, 1.0, 1.3);
    FAIL("expected a precondition error");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::precondition);
  }
}

TEST_CASE("singular recovery reports the abscissa") {
  auto v1 = fixtures::free_problem(0.0, 11).potential;
  auto v2 = v1;
  v1.v[4] = 3.0;  // dw - mu (v1 - v2) = 3 - 3 = 0
  try {
    shear_from_two_potentials(v1, v2, 2.0, 1.0, 1.0);
    FAIL("expected a singular recovery error");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::singular_recovery);
    CHECK(e.where()->real() == doctest::Approx(0.4));
  }
}
