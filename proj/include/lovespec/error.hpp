#pragma once

#include <complex>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>

namespace lovespec {

using cplx = std::complex<double>;

enum class ErrorKind {
  domain,
  resolution,
  convergence,
  pole,
  backend_inconsistency,
  incomplete_search,
  data_inconsistency,
  configuration,
  truncation,
  proximity,
  quadrature_resolution,
  solvability,
  extraction,
  singular_recovery,
  precondition,
  parse,
  io,
};

std::string_view to_string(ErrorKind kind) noexcept;

/// Every failure in the library is reported through this exception. `where`
/// carries the offending location when one exists: the nearest Jost zero for
/// pole errors, the grid abscissa for singular recoveries, and so on.
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& message,
        std::optional<cplx> where = std::nullopt);

  ErrorKind kind() const noexcept { return kind_; }
  const std::optional<cplx>& where() const noexcept { return where_; }
  /// The message without the kind prefix.
  const std::string& message() const noexcept { return message_; }

 private:
  ErrorKind kind_;
  std::string message_;
  std::optional<cplx> where_;
};

}  // namespace lovespec
