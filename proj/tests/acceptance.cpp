// Acceptance suite: one line per criterion, non-zero exit when any fails.
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <memory>
#include <numbers>
#include <string>
#include <vector>

#include "lovespec/fixtures.hpp"
#include "lovespec/glevitan.hpp"
#include "lovespec/kernels.hpp"
#include "lovespec/numerics.hpp"
#include "lovespec/pipeline.hpp"

using namespace lovespec;

namespace {

const cplx I{0.0, 1.0};
constexpr double kPi = std::numbers::pi;

struct Outcome {
  bool pass = true;
  std::string detail;
};

std::string fmt(const char* f, double a, double b = 0.0, double c = 0.0) {
  char buf[256];
  std::snprintf(buf, sizeof buf, f, a, b, c);
  return buf;
}

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

Outcome free_case() {
  double worst = 0.0;
  for (double h : {0.0, 1.0, 2.0}) {
    const auto sys = std::make_shared<const RobinSystem>(fixtures::free_problem(h));
    const auto f = JostEvaluator::direct(sys);
    for (cplx k : {cplx(0.5, 0), cplx(3, 0), cplx(1, 1), cplx(-2, 0.5), cplx(2, -1)}) {
      worst = std::max(worst, std::abs(f(k) - (I * k + h)));
    }
    const auto eig = find_eigenvalues(f, 5.0);
    if (h > 0.0) {
      if (eig.size() != 1) return {false, "wrong eigenvalue count"};
      worst = std::max(worst, std::abs(eig[0] - I * h));
      const auto alpha = norming_constants(f, eig);
      worst = std::max(worst, std::abs(alpha[0] - 2.0 * h));
    } else if (!eig.empty()) {
      return {false, "spurious eigenvalue"};
    }
    for (double lambda : {0.25, 1.0, 4.0, 25.0, 100.0}) {
      const double k = std::sqrt(lambda);
      worst = std::max(worst, std::abs(jump_function(f, lambda) - k / (kPi * std::norm(I * k + h))));
    }
    for (cplx lambda : {cplx(-2.5, 0), cplx(-0.3, 0.7), cplx(3, 2), cplx(10, -5)}) {
      const cplx k = k_of_lambda(lambda);
      worst = std::max(worst, std::abs(weyl_function_forward(*sys, k) - 1.0 / (h + I * k)));
    }
  }
  const auto f1 = JostEvaluator::direct(fixtures::free_problem(1.0));
  const auto eig = find_eigenvalues(f1, 5.0);
  const auto table = JumpTable::sample(f1, 200.0, 0.025);
  const auto m = weyl_from_spectral_data(eig, norming_constants(f1, eig), table, -4.0);
  const double rep = std::abs(m.value + 1.0);
  return {worst <= 1e-10 && rep <= 1e-6,
          fmt("closed forms max err %.2e (<= 1e-10), M(-4) err %.2e (<= 1e-6)", worst, rep)};
}

Outcome square_well_spectrum() {
  double lo = 1e-9;
  double hi = kPi / 2.0 - 1e-12;
  for (int i = 0; i < 200; ++i) {
    const double mid = 0.5 * (lo + hi);
    (mid * std::tan(mid) - std::sqrt(4.0 - mid * mid) > 0.0 ? hi : lo) = mid;
  }
  const double q = 0.5 * (lo + hi);
  const double kappa = std::sqrt(4.0 - q * q);
  const RobinSystem sys(fixtures::square_well(-4.0, 1.0, 0.0, 2001));
  const auto f = JostEvaluator::direct(std::make_shared<const RobinSystem>(sys));
  const auto eig = find_eigenvalues(f, 5.0);
  if (eig.size() != 1) return {false, "expected one eigenvalue"};
  const double err = std::abs(eig[0] - I * kappa);

  const double norm = sys.potential_l1();
  const double x_i = sys.support_end();
  int violations = 0;
  int points = 0;
  for (int r = 0; r < 8; ++r) {
    const double mod = 0.5 * std::pow(100.0, r / 7.0);
    for (int t = 0; t < 5; ++t) {
      const cplx k = std::polar(mod, kPi * t / 4.0);
      const double a = norm / std::max(1.0, mod);
      const double growth = std::exp((std::abs(k.imag()) - k.imag()) * x_i) * std::exp(a);
      const cplx f0 = sys.jost_at(k, 0.0).f;
      const cplx fh = sys.jost_function(k);
      const cplx v0 = sys.potential_fourier(0.0);
      const cplx vk = sys.potential_fourier(k);
      const double slack = 1.0 + 1e-9;
      violations += std::abs(f0 - 1.0) > a * growth * slack;
      violations += std::abs(f0 - 1.0 + (v0 - vk) / (2.0 * I * k)) > 0.5 * a * a * growth * slack;
      violations += std::abs(fh - I * k) > norm * growth * slack;
      violations += std::abs(fh - I * k - sys.h() + 0.5 * (v0 + vk)) >
                    (std::abs(sys.h()) + 0.5 * norm) * a * growth * slack;
      ++points;
    }
  }
  return {err <= 1e-8 && violations == 0,
          fmt("eigenvalue err %.2e (<= 1e-8), %g bound violations on %g lattice points", err,
              violations, points)};
}

Outcome weyl_cross_validation() {
  double worst = 0.0;
  int count = 0;
  for (const auto& prob : {fixtures::square_well(-4.0, 1.0, 0.0, 2001), fixtures::bump_potential()}) {
    const auto sys = std::make_shared<const RobinSystem>(prob);
    const auto fwd = weyl_forward(sys);
    const auto table = std::make_shared<const JumpTable>(
        JumpTable::sample(JostEvaluator::direct(sys), 200.0, 0.025));
    int taken = 0;
    for (double r : {0.8, 2.0, 5.0, 12.0, 30.0, 80.0}) {
      for (double th : {0.5, 1.5, 2.5, -2.5, -1.5, -0.5}) {
        if (taken == 20) break;
        const cplx lambda = std::polar(r, th);
        double dist = lambda.real() >= 0.0 ? std::abs(lambda.imag()) : std::abs(lambda);
        for (const cplx k : fwd.pole_k) dist = std::min(dist, std::abs(lambda - k * k));
        if (dist < 0.5) continue;
        const cplx m_fwd = fwd.m(k_of_lambda(lambda));
        const cplx m_rep =
            weyl_from_spectral_data(fwd.pole_k, fwd.alphas, *table, lambda).value;
        worst = std::max(worst, std::abs(m_rep - m_fwd) / std::abs(m_fwd));
        ++taken;
      }
    }
    count += taken;
  }
  return {worst <= 1e-3 && count == 40,
          fmt("max relative gap %.2e (<= 1e-3) over %g points", worst, count)};
}

Outcome gelfand_levitan_regression() {
  const double c = 1.0;
  const auto sol = solve_gl_lower_extrapolated([c](double, double) { return c; }, 1.0, 400);
  double worst = 0.0;
  for (std::size_t i = 0; i < sol.kernel.size(); ++i) {
    for (std::size_t j = 0; j <= i; ++j) {
      const double exact = c * std::exp(c * (sol.kernel.grid_x[j] - sol.kernel.grid_x[i]));
      worst = std::max(worst, std::abs(sol.kernel(i, j) - exact));
    }
  }
  return {worst <= 1e-10 && sol.max_residual <= 1e-9,
          fmt("N = 400 kernel err %.2e (<= 1e-10), residual %.2e (<= 1e-9)", worst,
              sol.max_residual)};
}

pipeline::PotentialErrors roundtrip(const RobinProblem& data, const RobinProblem& truth,
                                    std::size_t n) {
  const auto s = pipeline::compute_spectrum(data, 200.0, 0.025, 5.0, 3.0);
  const auto r = pipeline::reconstruct(s, {n, data.potential.x_support, 200.0, 0.025, "samples"});
  return pipeline::compare_potentials(truth, r.recovered);
}

Outcome reconstruction() {
  const auto truth = fixtures::bump_potential(-4.0, 0.5, 1.0, 4001);
  const std::vector<std::size_t> sizes{126, 251, 501, 1001, 2001};
  std::vector<double> err;
  pipeline::PotentialErrors finest;
  for (std::size_t n : sizes) {
    finest = roundtrip(fixtures::bump_potential(-4.0, 0.5, 1.0, n), truth, n);
    err.push_back(finest.v_sup);
  }
  // A refinement step passes when it halves the error or lands within twice
  // the finest-grid error, which is set by K_max and the jump sampling.
  bool refines = true;
  std::string ladder;
  for (std::size_t i = 0; i < err.size(); ++i) {
    ladder += fmt(i == 0 ? "%.1e" : " %.1e", err[i]);
    if (i > 0) refines = refines && (err[i] <= 0.5 * err[i - 1] || err[i] <= 2.0 * err.back());
  }
  const auto free = fixtures::free_problem(1.0, 2001);
  const auto fe = roundtrip(free, free, 2001);
  const bool ok = finest.v_sup <= 5e-2 && finest.h <= 2e-2 && fe.v_sup <= 5e-2 && fe.h <= 2e-2 && refines;
  return {ok, "bump sup err by N = 126..2001: " + ladder +
                  fmt("; h err %.1e; free h = 1 sup err %.1e, h err %.1e", finest.h, fe.v_sup, fe.h)};
}

Outcome shear_recovery() {
  const auto profile = fixtures::bump_profile(0.2, 1.0, 1.0, 2001);
  std::vector<PotentialGrid> exact(2);
  const double omegas[2] = {1.0, 2.0};
  for (int i = 0; i < 2; ++i) {
    exact[i].grid_x = profile.grid_x;
    exact[i].x_support = profile.x_support;
    for (double x : profile.grid_x) {
      exact[i].v.push_back(fixtures::bump_profile_potential(0.2, 1.0, 1.0, omegas[i], x));
    }
    finalize_potential(exact[i]);
  }
  const auto mu = shear_from_two_potentials(exact[0], exact[1], 1.0, 2.0, 1.0);
  double exact_err = 0.0;
  for (std::size_t i = 0; i < mu.mu_hat.size(); ++i) {
    exact_err = std::max(exact_err, std::abs(mu.mu_hat[i] - profile.mu_hat[i]) / profile.mu_hat[i]);
  }
  std::vector<PotentialGrid> rec;
  for (double w : omegas) {
    const auto lt = schrodinger_from_love(profile, w);
    const auto s = pipeline::compute_spectrum({lt.potential, lt.h}, 200.0, 0.025, 5.0, 3.0);
    rec.push_back(pipeline::reconstruct(s, {2001, 1.0, 200.0, 0.025, "samples"}).recovered.potential);
  }
  const auto mu_rec = shear_from_two_potentials(rec[0], rec[1], 1.0, 2.0, 1.0);
  double pipe_err = 0.0;
  for (std::size_t i = 0; i < mu_rec.mu_hat.size(); ++i) {
    pipe_err = std::max(pipe_err, std::abs(mu_rec.mu_hat[i] - profile.mu_hat[i]) / profile.mu_hat[i]);
  }
  return {exact_err <= 1e-10 && pipe_err <= 1e-1,
          fmt("exact potentials rel err %.2e (<= 1e-10), after inversion %.2e (<= 1e-1)", exact_err,
              pipe_err)};
}

Outcome invariant_suites() {
  struct Case {
    const char* name;
    RobinProblem prob;
  };
  std::vector<Case> cases{{"square well", fixtures::square_well()},
                          {"bump potential", fixtures::bump_potential()},
                          {"free h = 1", fixtures::free_problem(1.0, 2001)}};
  const auto bump = fixtures::bump_profile();
  ShearProfile flat;
  flat.grid_x = fixtures::uniform_grid(1.0, 2001);
  flat.mu_hat.assign(flat.grid_x.size(), 1.0);
  for (double w : {1.0, 2.0}) {
    const auto lt = schrodinger_from_love(bump, w);
    cases.push_back({w == 1.0 ? "bump profile at omega 1" : "bump profile at omega 2", {lt.potential, lt.h}});
  }
  const auto lt = schrodinger_from_love(flat, 1.0);
  cases.push_back({"constant profile", {lt.potential, lt.h}});

  bool ok = true;
  double slowest = 0.0;
  std::string failed;
  for (const auto& c : cases) {
    const auto t0 = std::chrono::steady_clock::now();
    const auto s = pipeline::compute_spectrum(c.prob, 200.0, 0.025, 10.0, 5.0);
    const auto w = WeylData::from_spectrum(s, 200.0, c.prob.potential.x_support);
    const auto g = build_g(w, fixtures::uniform_grid(c.prob.potential.x_support, 401));
    bool case_ok = true;
    for (const auto& chk : pipeline::invariant_suite(RobinSystem(c.prob), s, &g.g)) {
      if (!chk.passed) failed += std::string(" ") + c.name + ":" + chk.name;
      case_ok = case_ok && chk.passed;
    }
    const double t = seconds_since(t0);
    slowest = std::max(slowest, t);
    ok = ok && case_ok && t < 60.0;
  }
  return {ok, fmt("%g cases, slowest suite %.1f s (< 60 s)", static_cast<double>(cases.size()), slowest) +
                  (failed.empty() ? "" : "; failed:" + failed)};
}

Outcome hadamard() {
  const auto f = JostEvaluator::direct(fixtures::square_well(-4.0, 1.0, 0.0, 201));
  auto zeros = find_eigenvalues(f, 5.0);
  const auto res = find_resonances(f, {-45.0, 45.0, -9.0, 0.0});
  zeros.insert(zeros.end(), res.begin(), res.end());
  std::vector<double> err;
  for (double radius : {10.0, 20.0, 40.0}) {
    const auto h = jost_from_zeros(zeros, {4.0 * I, 6.0 * I, 8.0 * I, 10.0 * I}, radius);
    double e = 0.0;
    for (int i = 0; i <= 90; ++i) {
      const double k = 1.0 + 0.1 * i;
      e = std::max(e, std::abs(h(k) - f(k)) / std::abs(f(k)));
    }
    err.push_back(e);
  }
  return {err[1] < err[0] && err[2] < err[1],
          fmt("rel err on [1, 10] for R = 10, 20, 40: %.2e, %.2e, %.2e", err[0], err[1], err[2])};
}

}  // namespace

int main() {
  kernels::apply_thread_environment();
  const std::vector<std::pair<const char*, std::function<Outcome()>>> criteria{
      {"free-case exactness", free_case},
      {"square-well spectrum", square_well_spectrum},
      {"Weyl cross-validation", weyl_cross_validation},
      {"Gelfand-Levitan regression", gelfand_levitan_regression},
      {"round-trip reconstruction", reconstruction},
      {"shear recovery", shear_recovery},
      {"invariant suites", invariant_suites},
      {"Hadamard reconstruction", hadamard},
  };
  const double budget[] = {10.0, 30.0, 120.0, 1e9, 600.0, 1e9, 1e9, 1e9};
  int failures = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    const auto t0 = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = criteria[i].second();
    } catch (const std::exception& e) {
      o = {false, std::string("threw: ") + e.what()};
    }
    const double t = seconds_since(t0);
    if (t > budget[i]) {
      o.pass = false;
      o.detail += fmt("; over the %g s budget", budget[i]);
    }
    failures += !o.pass;
    std::printf("criterion %zu %s  %s: %s (%.1f s)\n", i + 1, o.pass ? "PASS" : "FAIL",
                criteria[i].first, o.detail.c_str(), t);
    std::fflush(stdout);
  }
  return failures == 0 ? 0 : 1;
}
