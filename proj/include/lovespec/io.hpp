#pragma once

#include <filesystem>
#include <string>

#include "lovespec/forward.hpp"
#include "lovespec/glevitan.hpp"
#include "lovespec/medium.hpp"
#include "lovespec/spectrum.hpp"

namespace lovespec::io {

namespace fs = std::filesystem;

/// "%.17g".
std::string format_double(double v);

/// The JSON sidecar of a CSV file: same stem, extension .json.
fs::path sidecar_path(const fs::path& csv);

/// CSV `x,mu_hat` plus sidecar {mu_hat_tail, x_support}. Reading validates.
ShearProfile read_profile(const fs::path& csv);
void write_profile(const fs::path& csv, const ShearProfile& p);

/// CSV `x,v,v_prime` plus sidecar {h, x_support}. Reading validates.
RobinProblem read_potential(const fs::path& csv);
void write_potential(const fs::path& csv, const RobinProblem& p);

SpectrumData read_spectrum(const fs::path& json);
void write_spectrum(const fs::path& json, const SpectrumData& s);

/// CSV triples `x,y,value` over the stored triangle.
void write_kernel(const fs::path& csv, const Kernel2D& k);

/// Whole file as a string; io error when unreadable.
std::string read_text(const fs::path& p);
void write_text(const fs::path& p, const std::string& text);

}  // namespace lovespec::io
