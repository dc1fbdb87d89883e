#include <cmath>
#include <numbers>

#include "doctest.h"
#include "lovespec/fixtures.hpp"
#include "lovespec/spectrum.hpp"

using namespace lovespec;

namespace {

const cplx I{0.0, 1.0};
constexpr double kPi = std::numbers::pi;

// Bound state of the square well V = -4 on [0, 1], h = 0: q tan q = sqrt(4 - q^2).
double square_well_kappa() {
  double lo = 1e-9;
  double hi = kPi / 2.0 - 1e-12;
  for (int i = 0; i < 200; ++i) {
    const double mid = 0.5 * (lo + hi);
    const double g = mid * std::tan(mid) - std::sqrt(4.0 - mid * mid);
    (g > 0.0 ? hi : lo) = mid;
  }
  const double q = 0.5 * (lo + hi);
  return std::sqrt(4.0 - q * q);
}

JostEvaluator well_jost(std::size_t n = 201) {
  return JostEvaluator::direct(fixtures::square_well(-4.0, 1.0, 0.0, n));
}

}  // namespace

TEST_CASE("free eigenvalues") {
  const auto e1 = find_eigenvalues(JostEvaluator::direct(fixtures::free_problem(1.0)), 5.0);
  REQUIRE(e1.size() == 1);
  CHECK(std::abs(e1[0] - I) < 1e-12);
  CHECK(find_eigenvalues(JostEvaluator::direct(fixtures::free_problem(-1.0)), 5.0).empty());
  CHECK(find_eigenvalues(JostEvaluator::direct(fixtures::free_problem(0.0)), 5.0).empty());
}

TEST_CASE("square-well eigenvalue against the matching condition") {
  const auto e = find_eigenvalues(well_jost(2001), 10.0);
  REQUIRE(e.size() == 1);
  CHECK(std::abs(e[0].imag() - square_well_kappa()) < 1e-8);
  CHECK(e[0].real() == 0.0);
  CHECK(std::abs(well_jost()(e[0])) < 1e-10);
}

TEST_CASE("eigenvalues are sorted and carry the sign ladder") {
  const auto f = JostEvaluator::direct(fixtures::square_well(-40.0, 1.0, 0.0, 401));
  const auto e = find_eigenvalues(f, 10.0);
  REQUIRE(e.size() >= 2);
  for (std::size_t j = 1; j < e.size(); ++j) CHECK(std::abs(e[j]) < std::abs(e[j - 1]));
  // i (-1)^j f_h'(k_j) > 0 and (-1)^j f_h(-k_j) < 0 with j = 1 the largest |k|.
  for (std::size_t j = 1; j <= e.size(); ++j) {
    const double sign = j % 2 == 0 ? 1.0 : -1.0;
    CHECK(sign * (I * f.derivative(e[j - 1])).real() > 0.0);
    CHECK(sign * f(-e[j - 1]).real() < 0.0);
  }
}

TEST_CASE("eigenvalue search rejects a backend that is not real on the axis") {
  auto prob = fixtures::free_problem(1.0);
  const auto f = JostEvaluator::direct(prob);
  const auto shifted = jost_from_zeros({cplx(0.3, 1.0), cplx(-0.2, -1.0)},
                                       {cplx(0, 5), cplx(0, 10)});
  CHECK_THROWS_AS(find_eigenvalues(shifted, 5.0), Error);
  try {
    find_eigenvalues(shifted, 5.0);
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::backend_inconsistency);
  }
  (void)f;
}

TEST_CASE("free resonances") {
  const auto r = find_resonances(JostEvaluator::direct(fixtures::free_problem(-1.0)),
                                 {-2.0, 2.0, -2.0, 0.0});
  REQUIRE(r.size() == 1);
  CHECK(std::abs(r[0] + I) < 1e-10);
  CHECK(find_resonances(JostEvaluator::direct(fixtures::free_problem(0.0)),
                        {0.5, 3.0, -2.0, 0.0})
            .empty());
}

TEST_CASE("square-well resonances: count consistency and pairing") {
  const auto f = well_jost();
  const Rect region{0.1, 30.0, -5.0, 0.0};
  const auto r = find_resonances(f, region);
  const int total = count_zeros([&](cplx k) { return f(k); }, region, 16.0);
  CHECK(static_cast<int>(r.size()) == total);
  CHECK(total > 5);
  const Rect left{0.1, 15.3, -5.0, 0.0};
  const Rect right{15.3, 30.0, -5.0, 0.0};
  const auto fn = [&](cplx k) { return f(k); };
  CHECK(count_zeros(fn, left, 16.0) + count_zeros(fn, right, 16.0) == total);
  const auto mirror = find_resonances(f, {-30.0, -0.1, -5.0, 0.0});
  REQUIRE(mirror.size() == r.size());
  for (const cplx k : r) {
    double best = 1e300;
    for (const cplx m : mirror) best = std::min(best, std::abs(m + std::conj(k)));
    CHECK(best < 1e-8);
    CHECK(std::abs(f(k)) < 1e-8 * std::abs(f.derivative(k)) * std::max(1.0, std::abs(k)));
  }
}

TEST_CASE("norming constants") {
  for (double h : {1.0, 2.0}) {
    const auto f = JostEvaluator::direct(fixtures::free_problem(h));
    const auto a = norming_constants(f, {cplx(0.0, h)});
    CHECK(std::abs(a[0] - 2.0 * h) < 1e-10);
  }
  const auto prob = fixtures::square_well(-4.0, 1.0, 0.0, 201);
  const auto sys = std::make_shared<const RobinSystem>(prob);
  const auto f = JostEvaluator::direct(sys);
  const auto e = find_eigenvalues(f, 10.0);
  const auto a = norming_constants(f, e);
  const cplx residue_form = 2.0 * e[0] * sys->jost_at(e[0], 0.0).f / f.derivative(e[0]);
  CHECK(std::abs(a[0] - residue_form) < 1e-8);
  CHECK(a[0] > 0.0);
}

TEST_CASE("norming constant at a non-zero is a data inconsistency") {
  const auto f = JostEvaluator::direct(fixtures::free_problem(1.0));
  try {
    norming_constants(f, {cplx(1.0, 1.0)});
    FAIL("expected a data inconsistency");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::data_inconsistency);
  }
}

TEST_CASE("jump function") {
  CHECK(std::abs(jump_function(JostEvaluator::direct(fixtures::free_problem(0.0)), 1.0) -
                 1.0 / kPi) < 1e-12);
  CHECK(std::abs(jump_function(JostEvaluator::direct(fixtures::free_problem(1.0)), 1.0) -
                 0.5 / kPi) < 1e-12);
  const auto f = well_jost();
  double worst = 0.0;
  for (int n = 0; n < 6; ++n) {
    const double lambda = 100.0 * std::pow(4.0, n);
    const double k = std::sqrt(lambda);
    worst = std::max(worst, std::abs(kPi * k * jump_function(f, lambda) - 1.0) * k);
  }
  CHECK(worst < 10.0);
}

TEST_CASE("scattering function is unimodular and k/f_h is bounded at 0") {
  const auto f = JostEvaluator::direct(fixtures::bump_potential(-4.0, 0.5, 1.0, 401));
  for (double k : {0.1, 0.7, 3.0, 12.0}) {
    CHECK(std::abs(std::abs(-f(-k) / f(k)) - 1.0) < 1e-8);
  }
  double prev = 0.0;
  for (double eps : {1e-1, 1e-2, 1e-3}) {
    double m = 0.0;
    for (int p = 0; p <= 16; ++p) {
      const cplx k = std::polar(eps, kPi * p / 16.0);
      m = std::max(m, std::abs(k / f(k)));
    }
    if (prev > 0.0) CHECK(m <= prev * 1.01);
    prev = m;
  }
}

TEST_CASE("Hadamard product from one zero") {
  const auto e = jost_from_zeros({I}, {cplx(0, 5), cplx(0, 10), cplx(0, 20)});
  CHECK(std::abs(e.exponent()) < 1e-10);
  for (cplx k : {cplx(1.0, 0.0), cplx(2.0, -1.0), cplx(0.0, 3.0)}) {
    CHECK(std::abs(e(k) - (I * k + 1.0)) < 1e-10);
    CHECK(std::abs(e.derivative(k) - I) < 1e-10);
  }
  CHECK(e.backend() == JostEvaluator::Backend::hadamard);
}

TEST_CASE("Hadamard configuration errors") {
  for (const auto& [zeros, cal] :
       {std::pair<std::vector<cplx>, std::vector<cplx>>{{}, {cplx(0, 5), cplx(0, 10)}},
        std::pair<std::vector<cplx>, std::vector<cplx>>{{I}, {cplx(0, 5)}}}) {
    try {
      jost_from_zeros(zeros, cal);
      FAIL("expected a configuration error");
    } catch (const Error& e) {
      CHECK(e.kind() == ErrorKind::configuration);
    }
  }
}

TEST_CASE("representation of the Weyl function in closed-form cases") {
  const auto f1 = JostEvaluator::direct(fixtures::free_problem(1.0));
  const auto t1 = JumpTable::sample(f1, 200.0, 0.02);
  const auto m1 = weyl_from_spectral_data({I}, {2.0}, t1, -4.0);
  CHECK(std::abs(m1.value + 1.0) < 1e-6);
  const auto f0 = JostEvaluator::direct(fixtures::free_problem(0.0));
  const auto t0 = JumpTable::sample(f0, 200.0, 0.02);
  CHECK(std::abs(weyl_from_spectral_data({}, {}, t0, -1.0).value + 1.0) < 1e-10);
  CHECK_THROWS_AS(weyl_from_spectral_data({}, {}, t0, 2.0), Error);
  CHECK_THROWS_AS(weyl_from_spectral_data({I}, {2.0}, t1, -1.0), Error);
}

TEST_CASE("jump table round-trips through its samples") {
  const auto f = well_jost();
  const auto t = JumpTable::sample(f, 20.0, 0.02);
  const auto back = JumpTable::from_samples(t.samples());
  for (double lambda : {0.3, 4.0, 99.0, 350.0}) {
    CHECK(std::abs(back.jump(lambda) / jump_function(f, lambda) - 1.0) < 1e-5);
  }
}

TEST_CASE("Weyl class validation") {
  const auto sys = std::make_shared<const RobinSystem>(fixtures::square_well(-4.0, 1.0, 0.0, 201));
  const auto w = weyl_forward(sys);
  const auto rep = validate_weyl_class(w);
  CHECK(rep.passed());
  CHECK(std::abs(rep.h_estimate) < 0.05);
  REQUIRE(rep.residues.size() == 1);
  CHECK(std::abs(rep.residues[0] - w.alphas[0]) < 1e-6 * w.alphas[0]);

  const auto table = std::make_shared<const JumpTable>(
      JumpTable::sample(JostEvaluator::direct(sys), 200.0, 0.02));
  auto flipped = w.alphas;
  flipped[0] = -flipped[0];
  const auto bad = validate_weyl_class(weyl_representation(w.pole_k, flipped, table));
  CHECK_FALSE(bad.poles_positive);
  CHECK_FALSE(bad.passed());

  WeylEvaluator free_m;
  free_m.m = [](cplx k) { return 1.0 / (I * k); };
  free_m.jump = [](double lambda) { return 1.0 / (kPi * std::sqrt(lambda)); };
  const auto fr = validate_weyl_class(free_m);
  CHECK(fr.passed());
  CHECK(std::abs(fr.h_estimate) < 1e-10);

  const auto h1 = validate_weyl_class(
      weyl_forward(std::make_shared<const RobinSystem>(fixtures::free_problem(1.0))));
  CHECK(h1.passed());
  CHECK(std::abs(h1.h_estimate - 1.0) < 1e-3);
}

TEST_CASE("spectrum data validation") {
  SpectrumData d;
  d.eigen_k = {cplx(0, 2), cplx(0, 1)};
  d.alphas = {1.0, 2.0};
  d.jump_samples = {{1.0, 0.2}, {2.0, 0.1}};
  CHECK_NOTHROW(d.validate());
  d.alphas[1] = -1.0;
  CHECK_THROWS_AS(d.validate(), Error);
  d.alphas[1] = 1.0;
  d.eigen_k = {cplx(0, 1), cplx(0, 2)};
  CHECK_THROWS_AS(d.validate(), Error);
}
