#include "lovespec/error.hpp"

namespace lovespec {

std::string_view to_string(ErrorKind kind) noexcept {
  switch (kind) {
    case ErrorKind::domain: return "domain";
    case ErrorKind::resolution: return "resolution";
    case ErrorKind::convergence: return "convergence";
    case ErrorKind::pole: return "pole";
    case ErrorKind::backend_inconsistency: return "backend-inconsistency";
    case ErrorKind::incomplete_search: return "incomplete-search";
    case ErrorKind::data_inconsistency: return "data-inconsistency";
    case ErrorKind::configuration: return "configuration";
    case ErrorKind::truncation: return "truncation";
    case ErrorKind::proximity: return "proximity";
    case ErrorKind::quadrature_resolution: return "quadrature-resolution";
    case ErrorKind::solvability: return "solvability";
    case ErrorKind::extraction: return "extraction";
    case ErrorKind::singular_recovery: return "singular-recovery";
    case ErrorKind::precondition: return "precondition";
    case ErrorKind::parse: return "parse";
    case ErrorKind::io: return "io";
  }
  return "unknown";
}

Error::Error(ErrorKind kind, const std::string& message,
             std::optional<cplx> where)
    : std::runtime_error(std::string(to_string(kind)) + " error: " + message),
      kind_(kind),
      message_(message),
      where_(where) {}

}  // namespace lovespec
