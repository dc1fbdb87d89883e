#include "lovespec/spectrum.hpp"

#include <Eigen/Dense>
#include <boost/math/interpolators/makima.hpp>
#include <boost/math/tools/toms748_solve.hpp>

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <optional>
#include <sstream>

#include "lovespec/numerics.hpp"

namespace lovespec {

namespace {

constexpr cplx kI{0.0, 1.0};
constexpr double kPi = std::numbers::pi;

}  // namespace

void SpectrumData::validate(double tol) const {
  if (alphas.size() != eigen_k.size()) {
    throw Error(ErrorKind::data_inconsistency, "alphas and eigen_k differ in length");
  }
  for (std::size_t j = 0; j < eigen_k.size(); ++j) {
    const cplx k = eigen_k[j];
    if (std::abs(k.real()) > tol * std::max(1.0, std::abs(k)) || !(k.imag() > 0.0)) {
      throw Error(ErrorKind::data_inconsistency, "eigenvalue is not on the positive imaginary axis", k);
    }
    if (j > 0 && std::abs(k) > std::abs(eigen_k[j - 1])) {
      throw Error(ErrorKind::data_inconsistency, "eigen_k is not sorted by |k| descending", k);
    }
    if (!(alphas[j] > 0.0)) {
      throw Error(ErrorKind::data_inconsistency, "non-positive norming constant", k);
    }
  }
  for (const cplx k : resonance_k) {
    if (k.imag() > tol * std::max(1.0, std::abs(k))) {
      throw Error(ErrorKind::data_inconsistency, "resonance in the upper half-plane", k);
    }
  }
  for (std::size_t i = 0; i < jump_samples.size(); ++i) {
    const auto [lambda, t] = jump_samples[i];
    if (lambda > 0.0 && !(t > 0.0)) {
      throw Error(ErrorKind::data_inconsistency, "non-positive jump function sample",
                  cplx(lambda, 0.0));
    }
    if (i > 0 && !(lambda > jump_samples[i - 1].first)) {
      throw Error(ErrorKind::data_inconsistency, "jump samples are not ascending");
    }
  }
}

JostEvaluator JostEvaluator::direct(std::shared_ptr<const RobinSystem> sys) {
  JostEvaluator e;
  e.backend_ = Backend::direct;
  e.sys_ = std::move(sys);
  return e;
}

JostEvaluator JostEvaluator::direct(const RobinProblem& prob) {
  return direct(std::make_shared<const RobinSystem>(prob));
}

cplx JostEvaluator::operator()(cplx k) const {
  if (backend_ == Backend::direct) return sys_->jost_function(k);
  cplx p = c_ * std::exp(kI * a_ * k + beta_ * k * k);
  for (const cplx z : zeros_) p *= 1.0 - k / z;
  return p;
}

cplx JostEvaluator::derivative(cplx k) const {
  if (backend_ == Backend::direct) return sys_->jost_function_derivative(k);
  cplx prod = c_ * std::exp(kI * a_ * k + beta_ * k * k);
  cplx deriv = (kI * a_ + 2.0 * beta_ * k) * prod;
  for (const cplx z : zeros_) {
    const cplx factor = 1.0 - k / z;
    deriv = deriv * factor - prod / z;
    prod *= factor;
  }
  return deriv;
}

const char* JostEvaluator::backend_name() const noexcept {
  return backend_ == Backend::direct ? "direct" : "hadamard";
}

std::vector<cplx> find_eigenvalues(const JostEvaluator& f, double tau_max,
                                   double tau_min, std::size_t scan_points) {
  if (!(tau_max > tau_min) || scan_points < 2) {
    throw Error(ErrorKind::precondition, "eigenvalue scan needs tau_max > tau_min");
  }
  auto g = [&](double tau) {
    const cplx v = f(cplx(0.0, tau));
    if (std::abs(v.imag()) > 1e-8 * std::max(1.0, std::abs(v))) {
      throw Error(ErrorKind::backend_inconsistency,
                  "Jost function is not real on the imaginary axis", cplx(0.0, tau));
    }
    return v.real();
  };
  std::vector<cplx> out;
  const double step = (tau_max - tau_min) / static_cast<double>(scan_points - 1);
  double a = tau_min;
  double ga = g(a);
  for (std::size_t i = 1; i < scan_points; ++i) {
    const double b = i + 1 == scan_points ? tau_max : tau_min + step * static_cast<double>(i);
    const double gb = g(b);
    if (gb == 0.0) {
      out.emplace_back(0.0, b);
    } else if (ga != 0.0 && std::signbit(ga) != std::signbit(gb)) {
      std::uintmax_t iters = 200;
      const auto r = boost::math::tools::toms748_solve(
          g, a, b, ga, gb, boost::math::tools::eps_tolerance<double>(52), iters);
      double tau = 0.5 * (r.first + r.second);
      // One Newton step on the full complex derivative tightens the last ulp.
      const cplx k{0.0, tau};
      const cplx d = f.derivative(k);
      if (std::abs(d) > 0.0) {
        const double t2 = tau - (f(k) / (kI * d)).real();
        if (t2 > a && t2 < b && std::abs(g(t2)) <= std::abs(g(tau))) tau = t2;
      }
      out.emplace_back(0.0, tau);
    }
    a = b;
    ga = gb;
  }
  std::sort(out.begin(), out.end(),
            [](cplx x, cplx y) { return std::abs(x) > std::abs(y); });
  return out;
}

std::vector<double> norming_constants(const JostEvaluator& f,
                                      const std::vector<cplx>& eigen_k) {
  std::vector<double> out;
  out.reserve(eigen_k.size());
  for (const cplx k : eigen_k) {
    const cplx alpha = 4.0 * k * k * (-kI / (f(-k) * f.derivative(k)));
    if (!(alpha.real() > 0.0) ||
        std::abs(alpha.imag()) > 1e-6 * std::abs(alpha.real())) {
      std::ostringstream msg;
      msg << "norming constant " << alpha << " is not real positive";
      throw Error(ErrorKind::data_inconsistency, msg.str(), k);
    }
    out.push_back(alpha.real());
  }
  return out;
}

double jump_function(const JostEvaluator& f, double lambda) {
  if (!(lambda > 0.0)) throw Error(ErrorKind::precondition, "jump function needs lambda > 0");
  const double k = std::sqrt(lambda);
  return k / (kPi * std::norm(f(k)));
}

namespace {

std::string describe(const Rect& r) {
  std::ostringstream o;
  o << "[" << r.re_min << ", " << r.re_max << "] x [" << r.im_min << ", " << r.im_max << "]";
  return o.str();
}

// Phase change of f along the segment za -> zb, refined until consecutive
// samples differ by less than pi/3 in phase and a factor e in modulus.
double segment_phase(const std::function<cplx(cplx)>& f, cplx za, cplx fa, cplx zb,
                     cplx fb, double min_len) {
  if (fa == 0.0 || fb == 0.0) {
    throw Error(ErrorKind::proximity, "zero on the contour", fa == 0.0 ? za : zb);
  }
  const cplx ratio = fb / fa;
  const double d = std::arg(ratio);
  if (std::abs(d) < kPi / 3.0 && std::abs(std::log(std::abs(ratio))) < 1.0) return d;
  if (std::abs(zb - za) < min_len) {
    throw Error(ErrorKind::proximity, "zero near the contour", 0.5 * (za + zb));
  }
  const cplx zm = 0.5 * (za + zb);
  const cplx fm = f(zm);
  return segment_phase(f, za, fa, zm, fm, min_len) + segment_phase(f, zm, fm, zb, fb, min_len);
}

}  // namespace

int count_zeros(const std::function<cplx(cplx)>& f, const Rect& r, double density) {
  if (!(r.re_max > r.re_min) || !(r.im_max > r.im_min)) {
    throw Error(ErrorKind::precondition, "degenerate rectangle " + describe(r));
  }
  const cplx corners[4] = {{r.re_min, r.im_min}, {r.re_max, r.im_min},
                           {r.re_max, r.im_max}, {r.re_min, r.im_max}};
  const double size = std::max(r.re_max - r.re_min, r.im_max - r.im_min);
  const double min_len = 1e-10 * std::max(size, std::abs(corners[2]));
  double total = 0.0;
  for (int e = 0; e < 4; ++e) {
    const cplx a = corners[e];
    const cplx b = corners[(e + 1) % 4];
    const int kSegments =
        std::max(16, static_cast<int>(std::ceil(std::abs(b - a) * density)));
    cplx za = a;
    cplx fa = f(za);
    for (int s = 1; s <= kSegments; ++s) {
      const cplx zb = s == kSegments ? b : a + (b - a) * (static_cast<double>(s) / kSegments);
      const cplx fb = f(zb);
      total += segment_phase(f, za, fa, zb, fb, min_len);
      za = zb;
      fa = fb;
    }
  }
  const double winding = total / (2.0 * kPi);
  const double n = std::round(winding);
  if (std::abs(winding - n) > 0.1) {
    throw Error(ErrorKind::proximity, "argument principle did not return an integer on " +
                                          describe(r));
  }
  return static_cast<int>(n);
}

namespace {

bool inside(const Rect& r, cplx k, double margin) {
  return k.real() >= r.re_min - margin && k.real() <= r.re_max + margin &&
         k.imag() >= r.im_min - margin && k.imag() <= r.im_max + margin;
}

std::optional<cplx> newton_in(const JostEvaluator& f, const Rect& r, double tol) {
  cplx k{0.5 * (r.re_min + r.re_max), 0.5 * (r.im_min + r.im_max)};
  const double margin = 1e-3 * std::max(r.re_max - r.re_min, r.im_max - r.im_min);
  for (int it = 0; it < 60; ++it) {
    const cplx d = f.derivative(k);
    if (d == 0.0) return std::nullopt;
    const cplx step = f(k) / d;
    k -= step;
    if (!inside(r, k, margin)) return std::nullopt;
    if (std::abs(step) <= tol * std::max(1.0, std::abs(k))) {
      // Accept only when the location error estimate is within tol.
      const cplx last = f(k) / f.derivative(k);
      if (std::abs(last) <= tol * std::max(1.0, std::abs(k))) return k - last;
    }
  }
  return std::nullopt;
}

struct ResonanceSearch {
  const JostEvaluator& f;
  std::function<cplx(cplx)> fn;
  double tol;
  int max_depth;
  double density;
  std::vector<cplx> found;

  void run(const Rect& r, int count, int depth) {
    if (count == 0) return;
    if (count < 0) {
      throw Error(ErrorKind::incomplete_search, "negative zero count on " + describe(r));
    }
    if (count == 1) {
      if (const auto k = newton_in(f, r, tol)) {
        found.push_back(*k);
        return;
      }
    }
    if (depth >= max_depth) {
      throw Error(ErrorKind::incomplete_search,
                  "subdivision limit reached with " + std::to_string(count) +
                      " zeros unresolved on " + describe(r));
    }
    const bool split_re = (r.re_max - r.re_min) >= (r.im_max - r.im_min);
    for (double frac : {0.5, 0.47, 0.53, 0.44, 0.56, 0.41, 0.59}) {
      Rect a = r;
      Rect b = r;
      if (split_re) {
        const double m = r.re_min + frac * (r.re_max - r.re_min);
        a.re_max = m;
        b.re_min = m;
      } else {
        const double m = r.im_min + frac * (r.im_max - r.im_min);
        a.im_max = m;
        b.im_min = m;
      }
      int ca = 0;
      int cb = 0;
      try {
        ca = count_zeros(fn, a, density);
        cb = count_zeros(fn, b, density);
      } catch (const Error& e) {
        if (e.kind() == ErrorKind::proximity) continue;
        throw;
      }
      if (ca + cb != count) continue;
      run(a, ca, depth + 1);
      run(b, cb, depth + 1);
      return;
    }
    throw Error(ErrorKind::incomplete_search,
                "no consistent split of " + describe(r) + " holding " +
                    std::to_string(count) + " zeros");
  }
};

}  // namespace

std::vector<cplx> find_resonances(const JostEvaluator& f, const Rect& region, double tol,
                                  int max_depth) {
  if (region.im_max > 0.0) {
    throw Error(ErrorKind::precondition, "resonance region must lie in Im k <= 0");
  }
  // Samples per unit length on the contour, from the exponential type of f_h.
  const double type = f.system() ? f.system()->support_end() : std::abs(f.exponent());
  const double density = 8.0 * std::max(1.0, 2.0 * type);
  ResonanceSearch s{f, [&f](cplx k) { return f(k); }, tol, max_depth, density, {}};
  Rect r = region;
  const double grow = 1e-6 * std::max(r.re_max - r.re_min, r.im_max - r.im_min);
  for (int attempt = 0;; ++attempt) {
    try {
      const int n = count_zeros(s.fn, r, density);
      s.run(r, n, 0);
      break;
    } catch (const Error& e) {
      if (e.kind() != ErrorKind::proximity || attempt == 4) throw;
      s.found.clear();
      r.re_min -= grow;
      r.re_max += grow;
      r.im_min -= grow;
      r.im_max = std::min(r.im_max + grow, 0.0);
    }
  }
  std::sort(s.found.begin(), s.found.end(), [](cplx a, cplx b) {
    return a.real() != b.real() ? a.real() < b.real() : a.imag() < b.imag();
  });
  return s.found;
}

JostEvaluator jost_from_zeros(const std::vector<cplx>& zeros,
                              const std::vector<cplx>& calibration_k, double radius) {
  if (calibration_k.size() < 2) {
    throw Error(ErrorKind::configuration, "Hadamard fit needs at least two calibration points");
  }
  JostEvaluator e;
  e.backend_ = JostEvaluator::Backend::hadamard;
  double r = radius;
  if (r <= 0.0) {
    for (const cplx z : zeros) r = std::max(r, std::abs(z));
  }
  for (const cplx z : zeros) {
    if (std::abs(z) == 0.0) {
      throw Error(ErrorKind::configuration, "Hadamard product cannot take a zero at k = 0");
    }
    if (std::abs(z) <= r * (1.0 + 1e-12)) e.zeros_.push_back(z);
  }
  if (e.zeros_.empty()) {
    throw Error(ErrorKind::configuration,
                "empty zero set: C e^{iak} cannot grow like ik");
  }
  e.radius_ = r;

  const std::size_t m = calibration_k.size();
  const std::size_t np = std::min<std::size_t>(m, 4);
  std::vector<double> log_prod(m);
  for (std::size_t i = 0; i < m; ++i) {
    double s = 0.0;
    for (const cplx z : e.zeros_) s += std::log(std::abs(1.0 - calibration_k[i] / z));
    log_prod[i] = s;
  }
  // Parameters: log|C|, a, the offset b of the target ik + b, and beta of a
  // truncation factor e^{beta k^2}.
  Eigen::VectorXd p = Eigen::VectorXd::Zero(static_cast<Eigen::Index>(np));
  auto target = [&](std::size_t i) {
    const cplx k = calibration_k[i];
    cplx t = kI * k;
    if (np > 2) t += p(2);
    return t;
  };
  auto residuals = [&]() {
    Eigen::VectorXd res(static_cast<Eigen::Index>(m));
    for (std::size_t i = 0; i < m; ++i) {
      const cplx k = calibration_k[i];
      double r = p(0) - p(1) * k.imag() + log_prod[i] - std::log(std::abs(target(i)));
      if (np > 3) r += p(3) * (k * k).real();
      res(static_cast<Eigen::Index>(i)) = r;
    }
    return res;
  };
  for (int it = 0; it < 100; ++it) {
    const Eigen::VectorXd res = residuals();
    Eigen::MatrixXd jac(static_cast<Eigen::Index>(m), static_cast<Eigen::Index>(np));
    for (std::size_t i = 0; i < m; ++i) {
      const auto row = static_cast<Eigen::Index>(i);
      const cplx k = calibration_k[i];
      const cplx t = target(i);
      jac(row, 0) = 1.0;
      jac(row, 1) = -k.imag();
      if (np > 2) jac(row, 2) = -(1.0 / t).real();
      if (np > 3) jac(row, 3) = (k * k).real();
    }
    const Eigen::VectorXd step = jac.colPivHouseholderQr().solve(-res);
    p += step;
    if (!p.allFinite()) break;
    if (step.norm() <= 1e-14 * (1.0 + p.norm())) break;
  }
  const Eigen::VectorXd res = residuals();
  e.residual_ = std::sqrt(res.squaredNorm() / static_cast<double>(m));
  if (!p.allFinite() || !std::isfinite(e.residual_) || e.residual_ > 1e-2) {
    throw Error(ErrorKind::truncation,
                "Hadamard normalization does not fit the calibration points (residual " +
                    std::to_string(e.residual_) + ")");
  }
  e.a_ = p(1);
  e.beta_ = np > 3 ? p(3) : 0.0;
  e.c_ = std::exp(p(0));
  // Fix the phase of C on the first calibration point.
  const cplx k0 = calibration_k.front();
  const cplx model = e(k0);
  e.c_ *= std::polar(1.0, std::arg(target(0)) - std::arg(model));
  return e;
}

namespace {

using Spline = boost::math::interpolators::makima<std::vector<double>>;

}  // namespace

JumpTable::JumpTable(std::vector<double> t, std::vector<double> q)
    : t_(std::move(t)), q_(std::move(q)) {
  if (t_.size() != q_.size() || t_.size() < 5) {
    throw Error(ErrorKind::resolution, "jump table needs at least 5 matching samples");
  }
  dt_ = uniform_spacing(t_);
  if (std::abs(t_.front()) > 1e-12) {
    throw Error(ErrorKind::data_inconsistency, "jump table must start at t = 0");
  }
  // Least-squares c in q ~ c/t over the upper half of the table.
  double num = 0.0;
  double den = 0.0;
  for (std::size_t i = t_.size() / 2; i < t_.size(); ++i) {
    num += q_[i] / t_[i];
    den += 1.0 / (t_[i] * t_[i]);
  }
  tail_c_ = num / den;
  spline_ = std::make_shared<const Spline>(std::vector<double>(t_), std::vector<double>(q_));
}

JumpTable JumpTable::sample(const JostEvaluator& f, double t_max, double dt) {
  const auto n = static_cast<std::size_t>(std::llround(t_max / dt));
  if (n < 4) throw Error(ErrorKind::resolution, "jump table needs t_max >= 4 dt");
  std::vector<double> t(n + 1);
  std::vector<double> q(n + 1);
  for (std::size_t i = 1; i <= n; ++i) {
    t[i] = dt * static_cast<double>(i);
    q[i] = 2.0 * t[i] * t[i] / (kPi * std::norm(f(t[i]))) - 2.0 / kPi;
  }
  // q is even in t.
  q[0] = (4.0 * q[1] - q[2]) / 3.0;
  return JumpTable(std::move(t), std::move(q));
}

JumpTable JumpTable::from_samples(const std::vector<std::pair<double, double>>& samples) {
  std::vector<double> t{0.0};
  std::vector<double> q{0.0};
  for (const auto& [lambda, jump] : samples) {
    if (!(lambda > 0.0)) continue;
    const double k = std::sqrt(lambda);
    t.push_back(k);
    q.push_back(2.0 * k * jump - 2.0 / kPi);
  }
  if (t.size() < 3) throw Error(ErrorKind::resolution, "too few jump samples");
  // Snap to the nominal uniform grid so that sqrt round-off does not break it.
  const double dt = t[1];
  for (std::size_t i = 1; i < t.size(); ++i) {
    const double nominal = dt * static_cast<double>(i);
    if (std::abs(t[i] - nominal) > 1e-8 * std::max(1.0, nominal)) {
      throw Error(ErrorKind::data_inconsistency,
                  "jump samples are not uniform in sqrt(lambda)", cplx(t[i] * t[i], 0.0));
    }
    t[i] = nominal;
  }
  q[0] = (4.0 * q[1] - q[2]) / 3.0;
  return JumpTable(std::move(t), std::move(q));
}

double JumpTable::q(double t) const {
  t = std::abs(t);
  if (t >= t_.back()) return t == t_.back() ? q_.back() : tail_c_ / t;
  return (*static_cast<const Spline*>(spline_.get()))(t);
}

double JumpTable::jump(double lambda) const {
  if (!(lambda > 0.0)) throw Error(ErrorKind::precondition, "jump function needs lambda > 0");
  const double t = std::sqrt(lambda);
  return (q(t) + 2.0 / kPi) / (2.0 * t);
}

std::vector<std::pair<double, double>> JumpTable::samples() const {
  std::vector<std::pair<double, double>> out;
  for (std::size_t i = 1; i < t_.size(); ++i) {
    out.emplace_back(t_[i] * t_[i], (q_[i] + 2.0 / kPi) / (2.0 * t_[i]));
  }
  return out;
}

cplx k_of_lambda(cplx lambda) { return kI * std::sqrt(-lambda); }

WeylEvaluator weyl_forward(std::shared_ptr<const RobinSystem> sys) {
  WeylEvaluator w;
  w.backend = "forward";
  const auto f = JostEvaluator::direct(sys);
  double tau_max = 4.0;
  for (double v : sys->cell_potential()) tau_max = std::max(tau_max, std::sqrt(std::abs(v)) + 1.0);
  tau_max = std::max(tau_max, 2.0 * std::abs(sys->h()) + 1.0);
  w.pole_k = find_eigenvalues(f, tau_max);
  w.alphas = norming_constants(f, w.pole_k);
  w.m = [sys](cplx k) { return weyl_function_forward(*sys, k); };
  w.jump = [f](double lambda) { return jump_function(f, lambda); };
  return w;
}

WeylValue weyl_from_spectral_data(const std::vector<cplx>& eigen_k,
                                  const std::vector<double>& alphas,
                                  const JumpTable& jump, cplx lambda, double rel_tol,
                                  double min_distance) {
  if (eigen_k.size() != alphas.size()) {
    throw Error(ErrorKind::data_inconsistency, "eigen_k and alphas differ in length");
  }
  const double cut_distance = lambda.real() >= 0.0 ? std::abs(lambda.imag()) : std::abs(lambda);
  if (cut_distance < min_distance * std::max(1.0, std::abs(lambda))) {
    throw Error(ErrorKind::proximity, "lambda is on the continuous spectrum", lambda);
  }
  cplx poles = 0.0;
  for (std::size_t j = 0; j < eigen_k.size(); ++j) {
    const cplx lj = eigen_k[j] * eigen_k[j];
    if (std::abs(lambda - lj) < min_distance * std::max(1.0, std::abs(lj))) {
      throw Error(ErrorKind::proximity, "lambda is at an eigenvalue", lambda);
    }
    poles += alphas[j] / (lambda - lj);
  }
  // The free part 2/pi of 2tT integrates to -1/sqrt(-lambda) in closed form.
  const cplx free_part = -1.0 / std::sqrt(-lambda);
  auto integrand = [&](double t) { return cplx(jump.q(t)) / (lambda - t * t); };
  const double t_max = jump.t_max();
  std::vector<double> breaks{0.0};
  if (lambda.real() > 0.0 && std::sqrt(lambda.real()) < t_max) {
    breaks.push_back(std::sqrt(lambda.real()));
  }
  breaks.push_back(t_max);
  cplx integral = 0.0;
  double error = 0.0;
  for (std::size_t i = 0; i + 1 < breaks.size(); ++i) {
    const auto r = integrate_adaptive(integrand, breaks[i], breaks[i + 1], rel_tol,
                                      rel_tol * std::abs(free_part) * 1e-2, 20000);
    integral += r.value;
    error += r.error;
  }
  // Tail: q ~ c/t integrates to c log(1 - lambda/t_max^2) / (2 lambda).
  const cplx tail = jump.tail_coefficient() * std::log(1.0 - lambda / (t_max * t_max)) /
                    (2.0 * lambda);
  return {poles + free_part + integral + tail, error};
}

WeylEvaluator weyl_representation(const std::vector<cplx>& eigen_k,
                                  const std::vector<double>& alphas,
                                  std::shared_ptr<const JumpTable> jump) {
  WeylEvaluator w;
  w.backend = "representation";
  w.pole_k = eigen_k;
  w.alphas = alphas;
  w.m = [eigen_k, alphas, jump](cplx k) {
    return weyl_from_spectral_data(eigen_k, alphas, *jump, k * k).value;
  };
  w.jump = [jump](double lambda) { return jump->jump(lambda); };
  return w;
}

WeylClassReport validate_weyl_class(const WeylEvaluator& w) {
  WeylClassReport rep;
  auto m_of_lambda = [&](cplx lambda) { return w.m(k_of_lambda(lambda)); };

  // Residues by a 64-point circle around every pole.
  for (std::size_t j = 0; j < w.pole_k.size(); ++j) {
    const cplx lj = w.pole_k[j] * w.pole_k[j];
    double r = 0.25 * std::abs(lj);
    for (std::size_t i = 0; i < w.pole_k.size(); ++i) {
      if (i != j) r = std::min(r, 0.25 * std::abs(lj - w.pole_k[i] * w.pole_k[i]));
    }
    constexpr int kPoints = 64;
    cplx res = 0.0;
    for (int p = 0; p < kPoints; ++p) {
      const cplx dz = std::polar(r, 2.0 * kPi * (p + 0.5) / kPoints);
      res += m_of_lambda(lj + dz) * dz;
    }
    res /= static_cast<double>(kPoints);
    rep.residues.push_back(res);
    if (!(res.real() > 0.0) || std::abs(res.imag()) > 1e-6 * std::abs(res)) {
      rep.poles_positive = false;
    }
  }

  // k M bounded near k = 0 in the upper half-plane.
  auto k_m_max = [&](double eps) {
    double best = 0.0;
    for (int p = 0; p < 16; ++p) {
      const cplx k = std::polar(eps, kPi * (p + 0.5) / 16.0);
      best = std::max(best, std::abs(k * w.m(k)));
    }
    return best;
  };
  rep.k_m_max_coarse = k_m_max(1e-2);
  rep.k_m_max_fine = k_m_max(1e-3);
  rep.bounded_at_zero = std::isfinite(rep.k_m_max_fine) &&
                        rep.k_m_max_fine <= 3.0 * rep.k_m_max_coarse + 1e-12;

  // T > 0 on a geometric lambda lattice.
  rep.jump_min = std::numeric_limits<double>::infinity();
  for (int p = 0; p < 40; ++p) {
    const double lambda = 1e-2 * std::pow(1e6, p / 39.0);
    rep.jump_min = std::min(rep.jump_min, w.jump(lambda));
  }
  rep.jump_positive = rep.jump_min > 0.0;

  // ik M -> 1 and k^2 (M - 1/(ik)) -> h along k = i tau.
  const double taus[4] = {20.0, 40.0, 80.0, 160.0};
  double prev = std::numeric_limits<double>::infinity();
  bool decreasing = true;
  double sx = 0.0, sy = 0.0, sxx = 0.0, sxy = 0.0;
  for (double tau : taus) {
    const cplx k{0.0, tau};
    const cplx m = w.m(k);
    const double lead = std::abs(kI * k * m - 1.0);
    decreasing = decreasing && (lead <= prev || lead < 1e-12);
    prev = lead;
    const double e = (k * k * (m - 1.0 / (kI * k))).real();
    const double x = 1.0 / tau;
    sx += x;
    sy += e;
    sxx += x * x;
    sxy += x * e;
  }
  rep.leading_error = prev;
  const double slope = (4.0 * sxy - sx * sy) / (4.0 * sxx - sx * sx);
  rep.h_estimate = (sy - slope * sx) / 4.0;
  rep.asymptotics = decreasing && prev <= 0.05;
  return rep;
}

}  // namespace lovespec
