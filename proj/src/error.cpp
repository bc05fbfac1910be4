#include "slidekit/error.hpp"

namespace slidekit {

const char* to_string(ErrorKind kind) noexcept {
  switch (kind) {
    case ErrorKind::precondition: return "precondition";
    case ErrorKind::stencil_out_of_range: return "stencil-out-of-range";
    case ErrorKind::empty_region: return "empty-region";
    case ErrorKind::grid_mismatch: return "grid-mismatch";
    case ErrorKind::bracket_failure: return "bracket-failure";
    case ErrorKind::divergence: return "divergence";
    case ErrorKind::config_parse: return "config-parse";
    case ErrorKind::unknown_name: return "unknown-name";
    case ErrorKind::io: return "io";
  }
  return "unknown";
}

Error::Error(ErrorKind kind, const std::string& what)
    : std::runtime_error(std::string(to_string(kind)) + ": " + what), kind_(kind) {}

void fail(ErrorKind kind, const std::string& what) { throw Error(kind, what); }

}  // namespace slidekit
