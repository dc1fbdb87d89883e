#include "lovespec/pipeline.hpp"

#include <cmath>
#include <cstdio>
#include <iostream>
#include <memory>
#include <set>

#include "json.hpp"
#include "lovespec/fixtures.hpp"
#include "lovespec/numerics.hpp"

namespace lovespec::pipeline {

namespace {

using nlohmann::json;

constexpr cplx kI{0.0, 1.0};

void log(const std::string& msg) { std::clog << "lovespec: " << msg << "\n"; }

template <class F>
auto stage(const char* name, F&& f) -> decltype(f()) {
  try {
    return f();
  } catch (const Error& e) {
    throw Error(e.kind(), std::string(name) + ": " + e.message(), e.where());
  }
}

[[noreturn]] void config_error(const std::string& msg) {
  throw Error(ErrorKind::configuration, msg);
}

double get_number(const json& j, const char* key) {
  if (!j.at(key).is_number()) {
    throw Error(ErrorKind::parse, std::string("config field '") + key + "' is not a number");
  }
  return j.at(key).get<double>();
}

std::string get_string(const json& j, const char* key) {
  if (!j.at(key).is_string()) {
    throw Error(ErrorKind::parse, std::string("config field '") + key + "' is not a string");
  }
  return j.at(key).get<std::string>();
}

void check_keys(const json& j, const char* where, std::initializer_list<const char*> allowed) {
  if (!j.is_object()) throw Error(ErrorKind::parse, std::string(where) + " must be an object");
  const std::set<std::string> ok(allowed.begin(), allowed.end());
  for (const auto& [key, value] : j.items()) {
    if (!ok.count(key)) config_error(std::string("unknown key '") + key + "' in " + where);
  }
}

fs::path resolve(const fs::path& base, const fs::path& p) {
  if (p.empty() || p.is_absolute() || base.empty()) return p;
  return (base / p).lexically_normal();
}

std::string omega_tag(double omega) {
  char buf[48];
  std::snprintf(buf, sizeof buf, "omega_%g", omega);
  return buf;
}

double tau_bound(const RobinSystem& sys) {
  double tau_max = 4.0;
  for (double v : sys.cell_potential()) tau_max = std::max(tau_max, std::sqrt(std::abs(v)) + 1.0);
  return std::max(tau_max, 2.0 * std::abs(sys.h()) + 1.0);
}

// Linear interpolation of (x, y) at t; zero beyond the last node when
// `zero_outside`, otherwise the last value.
double interpolate(std::span<const double> x, std::span<const double> y, double t,
                   bool zero_outside) {
  if (t <= x.front()) return y.front();
  if (t >= x.back()) {
    const double slack = 1e-12 * std::max(1.0, x.back());
    return (zero_outside && t > x.back() + slack) ? 0.0 : y.back();
  }
  const auto it = std::upper_bound(x.begin(), x.end(), t);
  const auto i = static_cast<std::size_t>(it - x.begin()) - 1;
  const double w = (t - x[i]) / (x[i + 1] - x[i]);
  return (1.0 - w) * y[i] + w * y[i + 1];
}

json checks_json(const std::vector<Check>& checks) {
  json j = json::object();
  for (const auto& c : checks) j[c.name] = {{"passed", c.passed}, {"value", c.value}};
  return j;
}

json weyl_json(const WeylClassReport& r) {
  return {{"passed", r.passed()},
          {"poles_positive", r.poles_positive},
          {"bounded_at_zero", r.bounded_at_zero},
          {"jump_positive", r.jump_positive},
          {"jump_min", r.jump_min},
          {"asymptotics", r.asymptotics},
          {"leading_error", r.leading_error},
          {"h_estimate", r.h_estimate},
          {"solvability_deferred", r.solvability_deferred}};
}

}  // namespace

Mode parse_mode(const std::string& s) {
  if (s == "forward") return Mode::forward;
  if (s == "spectrum") return Mode::spectrum;
  if (s == "reconstruct") return Mode::reconstruct;
  if (s == "roundtrip") return Mode::roundtrip;
  config_error("unknown mode '" + s + "'");
}

const char* mode_name(Mode m) noexcept {
  switch (m) {
    case Mode::forward:
      return "forward";
    case Mode::spectrum:
      return "spectrum";
    case Mode::reconstruct:
      return "reconstruct";
    case Mode::roundtrip:
      return "roundtrip";
  }
  return "?";
}

void JobConfig::validate() const {
  if (n < 16) config_error("grid.n must be at least 16");
  if (!(k_max > 0.0)) config_error("grid.k_max must be positive");
  if (!(dk > 0.0) || dk * 4.0 > k_max) config_error("grid.dk must be positive and below k_max / 4");
  if (!(truncation_radius > 0.0)) config_error("spectrum.truncation_radius must be positive");
  if (!(resonance_depth > 0.0)) config_error("spectrum.resonance_depth must be positive");
  if (!(x_support > 0.0)) config_error("x_support must be positive");
  if (!(mu_hat_tail > 0.0)) config_error("mu_hat_tail must be positive");
  if (jump_source != "samples" && jump_source != "hadamard") {
    config_error("spectrum.jump_source must be 'samples' or 'hadamard'");
  }
  for (double w : omegas) {
    if (!(w > 0.0) || !std::isfinite(w)) config_error("omegas must be positive");
  }
  for (std::size_t i = 0; i < omegas.size(); ++i) {
    for (std::size_t j = 0; j < i; ++j) {
      if (std::abs(omegas[i] - omegas[j]) <= 1e-12 * std::max(omegas[i], omegas[j])) {
        config_error("omegas must be distinct");
      }
    }
  }
  switch (mode) {
    case Mode::forward:
      if (profile.empty()) config_error("forward needs a profile");
      if (omegas.empty()) config_error("forward needs at least one omega");
      break;
    case Mode::spectrum:
      if (potential.empty()) config_error("spectrum needs a potential");
      break;
    case Mode::reconstruct:
      if (spectra.empty() || spectra.size() > 2) config_error("reconstruct needs one or two spectra");
      if (spectra.size() == 2 && omegas.size() != 2) {
        config_error("shear recovery needs exactly two omegas");
      }
      if (spectra.size() == 1 && omegas.size() > 1) config_error("one spectrum takes at most one omega");
      break;
    case Mode::roundtrip:
      if (profile.empty()) config_error("roundtrip needs a profile");
      if (omegas.size() != 2) config_error("roundtrip needs exactly two omegas");
      break;
  }
}

JobConfig JobConfig::from_json(const std::string& text, const fs::path& base_dir) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::parse_error& e) {
    throw Error(ErrorKind::parse, std::string("config: ") + e.what());
  }
  check_keys(j, "config",
             {"mode", "profile", "potential", "spectra", "omegas", "mu_hat_tail", "x_support",
              "grid", "spectrum", "tolerances", "dump_kernels", "out"});
  JobConfig c;
  if (j.contains("mode")) {
    c.mode = parse_mode(get_string(j, "mode"));
    c.mode_from_file = true;
  }
  if (j.contains("profile")) c.profile = resolve(base_dir, get_string(j, "profile"));
  if (j.contains("potential")) c.potential = resolve(base_dir, get_string(j, "potential"));
  if (j.contains("spectra")) {
    for (const auto& s : j.at("spectra")) {
      if (!s.is_string()) throw Error(ErrorKind::parse, "config field 'spectra' holds a non-string");
      c.spectra.push_back(resolve(base_dir, s.get<std::string>()));
    }
  }
  if (j.contains("omegas")) {
    for (const auto& w : j.at("omegas")) {
      if (!w.is_number()) throw Error(ErrorKind::parse, "config field 'omegas' holds a non-number");
      c.omegas.push_back(w.get<double>());
    }
  }
  if (j.contains("mu_hat_tail")) c.mu_hat_tail = get_number(j, "mu_hat_tail");
  if (j.contains("x_support")) c.x_support = get_number(j, "x_support");
  if (j.contains("grid")) {
    const auto& g = j.at("grid");
    check_keys(g, "grid", {"n", "k_max", "dk"});
    if (g.contains("n")) {
      const double n = get_number(g, "n");
      if (n < 0.0 || n != std::floor(n)) config_error("grid.n must be a non-negative integer");
      c.n = static_cast<std::size_t>(n);
    }
    if (g.contains("k_max")) c.k_max = get_number(g, "k_max");
    if (g.contains("dk")) c.dk = get_number(g, "dk");
  }
  if (j.contains("spectrum")) {
    const auto& s = j.at("spectrum");
    check_keys(s, "spectrum", {"truncation_radius", "resonance_depth", "jump_source"});
    if (s.contains("truncation_radius")) c.truncation_radius = get_number(s, "truncation_radius");
    if (s.contains("resonance_depth")) c.resonance_depth = get_number(s, "resonance_depth");
    if (s.contains("jump_source")) c.jump_source = get_string(s, "jump_source");
  }
  if (j.contains("tolerances")) {
    const auto& t = j.at("tolerances");
    check_keys(t, "tolerances", {"v_sup", "h", "mu_rel", "gl_residual"});
    if (t.contains("v_sup")) c.tol.v_sup = get_number(t, "v_sup");
    if (t.contains("h")) c.tol.h = get_number(t, "h");
    if (t.contains("mu_rel")) c.tol.mu_rel = get_number(t, "mu_rel");
    if (t.contains("gl_residual")) c.tol.gl_residual = get_number(t, "gl_residual");
  }
  if (j.contains("dump_kernels")) {
    if (!j.at("dump_kernels").is_boolean()) {
      throw Error(ErrorKind::parse, "config field 'dump_kernels' is not a boolean");
    }
    c.dump_kernels = j.at("dump_kernels").get<bool>();
  }
  if (j.contains("out")) c.out = resolve(base_dir, get_string(j, "out"));
  return c;
}

JobConfig JobConfig::load(const fs::path& path) {
  return from_json(io::read_text(path), path.parent_path());
}

SpectrumData compute_spectrum(const RobinProblem& prob, double k_max, double dk,
                              double truncation_radius, double resonance_depth) {
  auto sys = std::make_shared<const RobinSystem>(prob);
  const auto f = JostEvaluator::direct(sys);
  SpectrumData s;
  s.eigen_k = stage("eigenvalues", [&] { return find_eigenvalues(f, tau_bound(*sys)); });
  s.alphas = stage("norming constants", [&] { return norming_constants(f, s.eigen_k); });
  s.resonance_k = stage("resonances", [&] {
    const Rect r{-truncation_radius, truncation_radius, -resonance_depth, -1e-3};
    return find_resonances(f, r);
  });
  s.jump_samples = stage("jump function", [&] { return JumpTable::sample(f, k_max, dk).samples(); });
  s.truncation_radius = truncation_radius;
  s.validate();
  return s;
}

Reconstruction reconstruct(const SpectrumData& data, const InverseOptions& opt) {
  stage("spectral data", [&] { data.validate(); });
  WeylData w;
  w.pole_k = data.eigen_k;
  w.x_support = opt.x_support;
  if (opt.jump_source == "hadamard") {
    stage("hadamard", [&] {
      std::vector<cplx> zeros = data.eigen_k;
      zeros.insert(zeros.end(), data.resonance_k.begin(), data.resonance_k.end());
      double tau = 4.0;
      for (const cplx k : data.eigen_k) tau = std::max(tau, 2.0 * std::abs(k));
      const std::vector<cplx> calibration{kI * tau, 1.5 * kI * tau, 2.0 * kI * tau, 2.5 * kI * tau};
      const auto f = jost_from_zeros(zeros, calibration, data.truncation_radius);
      w.jump = std::make_shared<const JumpTable>(JumpTable::sample(f, opt.k_max, opt.dk));
      w.alphas = norming_constants(f, data.eigen_k);
    });
  } else {
    stage("jump function", [&] {
      w.jump = std::make_shared<const JumpTable>(JumpTable::from_samples(data.jump_samples));
    });
    w.alphas = data.alphas;
  }
  w.k_cutoff = std::min(opt.k_max, w.jump->t_max());
  Reconstruction r;
  const auto grid = fixtures::uniform_grid(opt.x_support, opt.n);
  r.g = stage("gelfand kernel", [&] { return build_g(w, grid); });
  r.gl = stage("gelfand-levitan", [&] { return solve_gl(r.g.g); });
  const auto ext = stage("potential", [&] {
    return extract_potential(r.gl.kernel.diagonal(), grid, opt.x_support);
  });
  r.recovered.potential = ext.potential;
  r.recovered.h = ext.h;
  r.extraction_consistency = ext.consistency;
  return r;
}

PotentialErrors compare_potentials(const RobinProblem& truth, const RobinProblem& recovered) {
  const auto& x = recovered.potential.grid_x;
  std::vector<double> diff(x.size());
  PotentialErrors e;
  for (std::size_t i = 0; i < x.size(); ++i) {
    const double t = interpolate(truth.potential.grid_x, truth.potential.v, x[i], true);
    diff[i] = std::abs(recovered.potential.v[i] - t);
    e.v_sup = std::max(e.v_sup, diff[i]);
  }
  e.v_l1 = trapezoid(diff, recovered.potential.dx());
  e.h = std::abs(truth.h - recovered.h);
  return e;
}

std::vector<Check> invariant_suite(const RobinSystem& sys, const SpectrumData& s,
                                   const Kernel2D* g) {
  const auto f = JostEvaluator::direct(std::make_shared<const RobinSystem>(sys));
  std::vector<Check> out;

  Check ladder{"norming_sign_ladder", true, 0.0};
  for (std::size_t j = 0; j < s.eigen_k.size(); ++j) {
    const double sign = (j % 2 == 0) ? -1.0 : 1.0;  // (-1)^j with j counted from 1
    const cplx a = kI * sign * f.derivative(s.eigen_k[j]);
    const cplx b = sign * f(-s.eigen_k[j]);
    ladder.passed = ladder.passed && a.real() > 0.0 && b.real() < 0.0;
    ladder.value += 1.0;
  }
  out.push_back(ladder);

  Check jump{"jump_positive", true, 0.0};
  jump.value = s.jump_samples.empty() ? 0.0 : s.jump_samples.front().second;
  for (const auto& [lambda, t] : s.jump_samples) {
    jump.passed = jump.passed && t > 0.0;
    jump.value = std::min(jump.value, t);
  }
  out.push_back(jump);

  Check alpha{"alpha_positive", true, 0.0};
  alpha.value = s.alphas.empty() ? 0.0 : s.alphas.front();
  for (double a : s.alphas) {
    alpha.passed = alpha.passed && a > 0.0;
    alpha.value = std::min(alpha.value, a);
  }
  out.push_back(alpha);

  std::vector<double> lattice;
  for (int i = 0; i < 20; ++i) lattice.push_back(0.25 * std::pow(200.0, i / 19.0));

  Check unitary{"unitary_scattering", true, 0.0};
  Check conj{"conjugation_symmetry", true, 0.0};
  for (double k : lattice) {
    const cplx plus = f(k);
    const cplx minus = f(-k);
    unitary.value = std::max(unitary.value, std::abs(std::abs(minus / plus) - 1.0));
    conj.value = std::max(conj.value, std::abs(minus - std::conj(plus)) / std::max(1.0, std::abs(plus)));
  }
  unitary.passed = unitary.value < 1e-10;
  conj.passed = conj.value < 1e-10;
  out.push_back(unitary);
  out.push_back(conj);

  Check wronskian{"wronskian", true, 0.0};
  for (const cplx k : {cplx(0.5, 0.0), cplx(3.0, 0.0), cplx(10.0, 0.0), cplx(1.0, 0.5),
                       cplx(2.0, -0.3)}) {
    const auto a = sys.jost_solution(k);
    const auto b = sys.jost_solution(-k);
    for (std::size_t i = 0; i < a.f.size(); ++i) {
      const cplx w = a.f[i] * b.f_prime[i] - a.f_prime[i] * b.f[i];
      wronskian.value = std::max(wronskian.value, std::abs(w + 2.0 * kI * k) / std::abs(2.0 * k));
    }
  }
  wronskian.passed = wronskian.value < 1e-8;
  out.push_back(wronskian);

  Check bounded{"k_over_jost_bounded", true, 0.0};
  const double coarse = std::abs(1e-2 / f(1e-2));
  const double fine = std::abs(1e-4 / f(1e-4));
  bounded.value = fine / std::max(coarse, 1e-300);
  bounded.passed = std::isfinite(fine) && bounded.value <= 3.0;
  out.push_back(bounded);

  if (g) {
    Check lin{"solvability_linear", true, 0.0};
    const double x_end = g->grid_x.back();
    for (double frac : {0.25, 0.5, 1.0}) {
      const double x = frac * x_end;
      const double functional = check_solvability(*g, x);
      double sup = 0.0;
      for (std::size_t i = 0; i < g->size() && g->grid_x[i] <= x + 1e-12; ++i) {
        for (std::size_t j = 0; j <= i; ++j) sup = std::max(sup, std::abs((*g)(i, j)));
      }
      lin.passed = lin.passed && std::isfinite(functional) && functional <= x * sup * (1.0 + 1e-12);
      lin.value = functional / x_end;
    }
    out.push_back(lin);
  }
  return out;
}

RunReport run_forward(const JobConfig& cfg) {
  cfg.validate();
  RunReport rep;
  const auto profile = stage("profile", [&] { return io::read_profile(cfg.profile); });
  for (double omega : cfg.omegas) {
    const auto lt = stage("calibration transform", [&] { return schrodinger_from_love(profile, omega); });
    const RobinProblem prob{lt.potential, lt.h};
    const auto tag = omega_tag(omega);
    const auto pot = cfg.out / ("potential_" + tag + ".csv");
    io::write_potential(pot, prob);
    const auto s = compute_spectrum(prob, cfg.k_max, cfg.dk, cfg.truncation_radius, cfg.resonance_depth);
    const auto spectrum_path = cfg.out / ("spectrum_" + tag + ".json");
    io::write_spectrum(spectrum_path, s);
    log(tag + ": " + std::to_string(s.eigen_k.size()) + " eigenvalues, " +
        std::to_string(s.resonance_k.size()) + " resonances, truncation radius " +
        io::format_double(s.truncation_radius));
    rep.written.insert(rep.written.end(), {pot, io::sidecar_path(pot), spectrum_path});
  }
  rep.summary = "forward: wrote " + std::to_string(rep.written.size()) + " files";
  return rep;
}

RunReport run_spectrum(const JobConfig& cfg) {
  cfg.validate();
  RunReport rep;
  const auto prob = stage("potential", [&] { return io::read_potential(cfg.potential); });
  const auto s = compute_spectrum(prob, cfg.k_max, cfg.dk, cfg.truncation_radius, cfg.resonance_depth);
  const auto path = cfg.out / "spectrum.json";
  io::write_spectrum(path, s);
  log(std::to_string(s.eigen_k.size()) + " eigenvalues, " + std::to_string(s.resonance_k.size()) +
      " resonances, truncation radius " + io::format_double(s.truncation_radius));
  rep.written.push_back(path);
  rep.summary = "spectrum: " + std::to_string(s.eigen_k.size()) + " eigenvalues";
  return rep;
}

namespace {

InverseOptions inverse_options(const JobConfig& cfg, double x_support) {
  return {cfg.n, x_support, cfg.k_max, cfg.dk, cfg.jump_source};
}

void dump_kernels(const JobConfig& cfg, const Reconstruction& r, const std::string& tag,
                  RunReport& rep) {
  if (!cfg.dump_kernels) return;
  const auto g = cfg.out / ("g_" + tag + ".csv");
  const auto k = cfg.out / ("K_" + tag + ".csv");
  io::write_kernel(g, r.g.g);
  io::write_kernel(k, r.gl.kernel);
  rep.written.insert(rep.written.end(), {g, k});
}

}  // namespace

RunReport run_inverse(const JobConfig& cfg) {
  cfg.validate();
  RunReport rep;
  std::vector<Reconstruction> recs;
  for (std::size_t i = 0; i < cfg.spectra.size(); ++i) {
    const auto data = stage("spectral data", [&] { return io::read_spectrum(cfg.spectra[i]); });
    const std::string tag = cfg.omegas.size() > i ? omega_tag(cfg.omegas[i]) : std::to_string(i);
    recs.push_back(reconstruct(data, inverse_options(cfg, cfg.x_support)));
    const auto& r = recs.back();
    const auto path = cfg.out / ("recovered_potential_" + tag + ".csv");
    io::write_potential(path, r.recovered);
    rep.written.insert(rep.written.end(), {path, io::sidecar_path(path)});
    dump_kernels(cfg, r, tag, rep);
    if (r.gl.max_residual > cfg.tol.gl_residual) rep.passed = false;
    log(tag + ": h = " + io::format_double(r.recovered.h) +
        ", GL residual " + io::format_double(r.gl.max_residual));
  }
  if (recs.size() == 2) {
    const auto mu = stage("shear recovery", [&] {
      return shear_from_two_potentials(recs[0].recovered.potential, recs[1].recovered.potential,
                                       cfg.omegas[0], cfg.omegas[1], cfg.mu_hat_tail);
    });
    const auto path = cfg.out / "recovered_profile.csv";
    io::write_profile(path, mu);
    rep.written.insert(rep.written.end(), {path, io::sidecar_path(path)});
  }
  rep.summary = std::string("reconstruct: ") + (rep.passed ? "residuals within tolerance"
                                                           : "GL residual above tolerance");
  return rep;
}

RunReport run_roundtrip(const JobConfig& cfg) {
  cfg.validate();
  RunReport rep;
  const auto profile = stage("profile", [&] { return io::read_profile(cfg.profile); });
  json report;
  report["omegas"] = cfg.omegas;
  std::vector<RobinProblem> recovered;
  for (double omega : cfg.omegas) {
    const auto tag = omega_tag(omega);
    const auto lt = stage("calibration transform", [&] { return schrodinger_from_love(profile, omega); });
    const RobinProblem truth{lt.potential, lt.h};
    const auto s = compute_spectrum(truth, cfg.k_max, cfg.dk, cfg.truncation_radius, cfg.resonance_depth);
    const auto spectrum_path = cfg.out / ("spectrum_" + tag + ".json");
    io::write_spectrum(spectrum_path, s);
    const auto r = reconstruct(s, inverse_options(cfg, profile.x_support));
    const auto pot = cfg.out / ("recovered_potential_" + tag + ".csv");
    io::write_potential(pot, r.recovered);
    rep.written.insert(rep.written.end(), {spectrum_path, pot, io::sidecar_path(pot)});
    dump_kernels(cfg, r, tag, rep);

    const auto err = compare_potentials(truth, r.recovered);
    const auto table = std::make_shared<const JumpTable>(JumpTable::from_samples(s.jump_samples));
    const auto weyl = stage("weyl class", [&] {
      return validate_weyl_class(weyl_representation(s.eigen_k, s.alphas, table));
    });
    const auto checks = invariant_suite(RobinSystem(truth), s, &r.g.g);
    bool ok = err.v_sup <= cfg.tol.v_sup && err.h <= cfg.tol.h &&
              r.gl.max_residual <= cfg.tol.gl_residual && weyl.passed();
    for (const auto& c : checks) ok = ok && c.passed;
    rep.passed = rep.passed && ok;
    report[tag] = {{"passed", ok},
                   {"v_sup", err.v_sup},
                   {"v_l1", err.v_l1},
                   {"h_error", err.h},
                   {"gl_residual", r.gl.max_residual},
                   {"pivot_ratio", r.gl.pivot_ratio},
                   {"eigenvalues", s.eigen_k.size()},
                   {"resonances", s.resonance_k.size()},
                   {"weyl_class", weyl_json(weyl)},
                   {"invariants", checks_json(checks)}};
    log(tag + ": sup |V error| " + io::format_double(err.v_sup) + ", h error " +
        io::format_double(err.h));
    recovered.push_back(r.recovered);
  }
  const auto mu = stage("shear recovery", [&] {
    return shear_from_two_potentials(recovered[0].potential, recovered[1].potential, cfg.omegas[0],
                                     cfg.omegas[1], profile.mu_hat_tail);
  });
  const auto mu_path = cfg.out / "recovered_profile.csv";
  io::write_profile(mu_path, mu);
  rep.written.insert(rep.written.end(), {mu_path, io::sidecar_path(mu_path)});
  double mu_sup = 0.0;
  std::vector<double> diff(mu.grid_x.size());
  std::vector<double> ref(mu.grid_x.size());
  for (std::size_t i = 0; i < mu.grid_x.size(); ++i) {
    ref[i] = interpolate(profile.grid_x, profile.mu_hat, mu.grid_x[i], false);
    diff[i] = std::abs(mu.mu_hat[i] - ref[i]);
    mu_sup = std::max(mu_sup, diff[i] / ref[i]);
  }
  const double dx = mu.grid_x[1] - mu.grid_x[0];
  const double mu_l1 = trapezoid(diff, dx) / trapezoid(ref, dx);
  const bool mu_ok = mu_sup <= cfg.tol.mu_rel;
  rep.passed = rep.passed && mu_ok;
  report["mu_sup_rel"] = mu_sup;
  report["mu_l1_rel"] = mu_l1;
  report["passed"] = rep.passed;
  const auto path = cfg.out / "report.json";
  io::write_text(path, report.dump(2) + "\n");
  rep.written.push_back(path);
  log("relative sup |mu error| " + io::format_double(mu_sup));
  rep.summary = std::string("roundtrip: ") + (rep.passed ? "pass" : "tolerance failure");
  return rep;
}

RunReport run(const JobConfig& cfg) {
  switch (cfg.mode) {
    case Mode::forward:
      return run_forward(cfg);
    case Mode::spectrum:
      return run_spectrum(cfg);
    case Mode::reconstruct:
      return run_inverse(cfg);
    case Mode::roundtrip:
      return run_roundtrip(cfg);
  }
  config_error("unknown mode");
}

}  // namespace lovespec::pipeline
