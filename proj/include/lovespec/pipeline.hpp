#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include "lovespec/glevitan.hpp"
#include "lovespec/io.hpp"
#include "lovespec/medium.hpp"
#include "lovespec/spectrum.hpp"

namespace lovespec::pipeline {

namespace fs = std::filesystem;

enum class Mode { forward, spectrum, reconstruct, roundtrip };

Mode parse_mode(const std::string& s);
const char* mode_name(Mode m) noexcept;

struct Tolerances {
  double v_sup = 5e-2;
  double h = 2e-2;
  double mu_rel = 1e-1;
  double gl_residual = 1e-8;
};

struct JobConfig {
  Mode mode = Mode::roundtrip;
  /// Whether the config file named the mode itself.
  bool mode_from_file = false;
  /// Input files; relative paths are resolved against the config directory.
  fs::path profile;
  fs::path potential;
  std::vector<fs::path> spectra;
  std::vector<double> omegas;
  /// Needed by reconstruct, where no profile is read.
  double mu_hat_tail = 1.0;
  double x_support = 1.0;
  std::size_t n = 2001;
  double k_max = 200.0;
  /// Sampling step of the jump function in k.
  double dk = 0.025;
  double truncation_radius = 20.0;
  double resonance_depth = 10.0;
  /// "samples" uses the stored jump samples and alphas, "hadamard" rebuilds
  /// them from the zeros.
  std::string jump_source = "samples";
  bool dump_kernels = false;
  Tolerances tol;
  fs::path out = "out";

  /// Throws configuration errors; runs before any computation.
  void validate() const;
  static JobConfig from_json(const std::string& text, const fs::path& base_dir = {});
  static JobConfig load(const fs::path& path);
};

/// Spectral data of a Robin problem from the direct solver.
SpectrumData compute_spectrum(const RobinProblem& prob, double k_max, double dk,
                              double truncation_radius, double resonance_depth);

struct InverseOptions {
  std::size_t n = 2001;
  double x_support = 1.0;
  double k_max = 200.0;
  double dk = 0.025;
  std::string jump_source = "samples";
};

struct Reconstruction {
  RobinProblem recovered;
  GKernel g;
  GLSolution gl;
  double extraction_consistency = 0.0;
};

/// Spectral data to potential. Stage errors are re-raised with the stage name.
Reconstruction reconstruct(const SpectrumData& data, const InverseOptions& opt);

struct PotentialErrors {
  double v_sup = 0.0;
  double v_l1 = 0.0;
  double h = 0.0;
};

/// Errors of `recovered` against `truth`, interpolated onto the recovered grid.
PotentialErrors compare_potentials(const RobinProblem& truth, const RobinProblem& recovered);

struct Check {
  std::string name;
  bool passed = false;
  double value = 0.0;
};

/// Sign ladder, T > 0, alpha > 0, |S| = 1, Wronskian, conjugation symmetry,
/// boundedness of k / f_h near 0 and, when g is given, linear growth of the
/// solvability functional.
std::vector<Check> invariant_suite(const RobinSystem& sys, const SpectrumData& s,
                                   const Kernel2D* g = nullptr);

struct RunReport {
  bool passed = true;
  std::string summary;
  std::vector<fs::path> written;
};

RunReport run_forward(const JobConfig& cfg);
RunReport run_spectrum(const JobConfig& cfg);
RunReport run_inverse(const JobConfig& cfg);
RunReport run_roundtrip(const JobConfig& cfg);
RunReport run(const JobConfig& cfg);

}  // namespace lovespec::pipeline
