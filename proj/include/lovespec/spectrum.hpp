#pragma once

#include <functional>
#include <memory>
#include <string>
#include <utility>
#include <vector>

#include "lovespec/forward.hpp"

namespace lovespec {

/// Spectral data of a Robin problem. eigen_k are sorted by |k| descending,
/// resonance_k by real then imaginary part, jump_samples ascending in lambda.
struct SpectrumData {
  std::vector<cplx> eigen_k;
  std::vector<cplx> resonance_k;
  std::vector<double> alphas;
  std::vector<std::pair<double, double>> jump_samples;
  double truncation_radius = 0.0;

  /// Throws data_inconsistency on any violated invariant.
  void validate(double tol = 1e-8) const;
};

/// Evaluator k -> f_h(k), either wrapping the forward solver or the
/// truncated Hadamard product C e^{iak + beta k^2} prod (1 - k/k_n). The
/// Gaussian factor stands in for the zeros beyond the truncation radius.
class JostEvaluator {
 public:
  enum class Backend { direct, hadamard };

  static JostEvaluator direct(std::shared_ptr<const RobinSystem> sys);
  static JostEvaluator direct(const RobinProblem& prob);

  cplx operator()(cplx k) const;
  cplx derivative(cplx k) const;

  Backend backend() const noexcept { return backend_; }
  const char* backend_name() const noexcept;

  /// Hadamard metadata; zero for the direct backend.
  double truncation_radius() const noexcept { return radius_; }
  double fit_residual() const noexcept { return residual_; }
  double exponent() const noexcept { return a_; }
  double truncation_beta() const noexcept { return beta_; }
  cplx constant() const noexcept { return c_; }
  const std::vector<cplx>& zeros() const noexcept { return zeros_; }
  const RobinSystem* system() const noexcept { return sys_.get(); }

 private:
  friend JostEvaluator jost_from_zeros(const std::vector<cplx>&,
                                       const std::vector<cplx>&, double);
  Backend backend_ = Backend::direct;
  std::shared_ptr<const RobinSystem> sys_;
  std::vector<cplx> zeros_;
  cplx c_{1.0, 0.0};
  double a_ = 0.0;
  double beta_ = 0.0;
  double radius_ = 0.0;
  double residual_ = 0.0;
};

/// Zeros of tau -> f_h(i tau) on (tau_min, tau_max], by a sign-change scan
/// with `scan_points` samples, TOMS 748 bracketing and a Newton polish.
/// Returned as k = i tau sorted by |k| descending.
std::vector<cplx> find_eigenvalues(const JostEvaluator& f, double tau_max,
                                   double tau_min = 1e-6,
                                   std::size_t scan_points = 2000);

struct Rect {
  double re_min = 0.0;
  double re_max = 0.0;
  double im_min = 0.0;
  double im_max = 0.0;
};

/// Number of zeros of f inside r by the argument principle, tracking the
/// phase along the boundary with increments below pi/3. Throws a proximity
/// error when a zero sits on the boundary. `density` sets the initial number
/// of samples per unit length before refinement.
int count_zeros(const std::function<cplx(cplx)>& f, const Rect& r, double density = 8.0);

/// Zeros of f_h inside `region` (Im k <= 0) by recursive subdivision until
/// each cell holds at most one zero, then Newton. `tol` bounds the estimated
/// location error |f_h / f_h'|. Sorted by real, then imaginary part.
std::vector<cplx> find_resonances(const JostEvaluator& f, const Rect& region,
                                  double tol = 1e-10, int max_depth = 24);

/// alpha_j = 4 k_j^2 (-i / (f_h(-k_j) f_h'(k_j))).
std::vector<double> norming_constants(const JostEvaluator& f,
                                      const std::vector<cplx>& eigen_k);

/// T(lambda) = k / (pi |f_h(k)|^2) with k = sqrt(lambda).
double jump_function(const JostEvaluator& f, double lambda);

/// Truncated Hadamard product over the zeros with |k_n| <= radius (all of
/// them when radius <= 0). C, a, the O(1) offset b and beta are fitted in
/// log-modulus so that f_h(k) ~ ik + b on the calibration points: two points
/// fit C and a, three add b, four or more add beta. The calibration points
/// should sit well above the eigenvalues, where ik + b is accurate.
JostEvaluator jost_from_zeros(const std::vector<cplx>& zeros,
                              const std::vector<cplx>& calibration_k,
                              double radius = 0.0);

/// Jump function sampled on a uniform grid in t = sqrt(lambda) and
/// interpolated in the smooth quantity q(t) = 2 t T(t^2) - 2/pi. Beyond the
/// last sample q is continued by its mean decay c/t.
class JumpTable {
 public:
  JumpTable(std::vector<double> t, std::vector<double> q);

  static JumpTable sample(const JostEvaluator& f, double t_max, double dt);
  static JumpTable from_samples(const std::vector<std::pair<double, double>>& samples);

  /// q(t), i.e. 2 k T(k^2) - 2/pi at k = t.
  double q(double t) const;
  double jump(double lambda) const;
  double t_max() const noexcept { return t_.back(); }
  double dt() const noexcept { return dt_; }
  /// Coefficient c of the tail model q(t) ~ c / t.
  double tail_coefficient() const noexcept { return tail_c_; }
  const std::vector<double>& t() const noexcept { return t_; }
  const std::vector<double>& values() const noexcept { return q_; }
  std::vector<std::pair<double, double>> samples() const;

 private:
  std::vector<double> t_;
  std::vector<double> q_;
  double dt_ = 0.0;
  double tail_c_ = 0.0;
  std::shared_ptr<const void> spline_;
};

/// Evaluator of M with pole metadata. m(k) is defined for Im k >= 0; real
/// k > 0 is the boundary value from above, real k < 0 from below.
struct WeylEvaluator {
  std::function<cplx(cplx)> m;
  std::function<double(double)> jump;
  std::vector<cplx> pole_k;
  std::vector<double> alphas;
  std::string backend;
};

/// k = i sqrt(-lambda), the branch with Im k >= 0 cut along lambda >= 0.
cplx k_of_lambda(cplx lambda);

WeylEvaluator weyl_forward(std::shared_ptr<const RobinSystem> sys);

struct WeylValue {
  cplx value;
  double error;
};

/// M(lambda) from the representation integral of the jump function plus the
/// pole sum. Throws a proximity error within `min_distance` of the cut or a
/// pole.
WeylValue weyl_from_spectral_data(const std::vector<cplx>& eigen_k,
                                  const std::vector<double>& alphas,
                                  const JumpTable& jump, cplx lambda,
                                  double rel_tol = 1e-8,
                                  double min_distance = 1e-8);

WeylEvaluator weyl_representation(const std::vector<cplx>& eigen_k,
                                  const std::vector<double>& alphas,
                                  std::shared_ptr<const JumpTable> jump);

struct WeylClassReport {
  bool poles_positive = true;
  std::vector<cplx> residues;
  bool bounded_at_zero = false;
  double k_m_max_coarse = 0.0;
  double k_m_max_fine = 0.0;
  bool jump_positive = false;
  double jump_min = 0.0;
  bool asymptotics = false;
  double leading_error = 0.0;
  double h_estimate = 0.0;
  /// Solvability is checked on the Gelfand-Levitan side.
  bool solvability_deferred = true;

  bool passed() const noexcept {
    return poles_positive && bounded_at_zero && jump_positive && asymptotics;
  }
};

WeylClassReport validate_weyl_class(const WeylEvaluator& m);

}  // namespace lovespec
