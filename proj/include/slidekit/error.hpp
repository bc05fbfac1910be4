#pragma once

#include <stdexcept>
#include <string>

namespace slidekit {

enum class ErrorKind {
  precondition,
  stencil_out_of_range,
  empty_region,
  grid_mismatch,
  bracket_failure,
  divergence,
  config_parse,
  unknown_name,
  io,
};

const char* to_string(ErrorKind kind) noexcept;

/// Every library failure is thrown as this type; `kind()` lets callers branch
/// without parsing messages.
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what);
  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

[[noreturn]] void fail(ErrorKind kind, const std::string& what);

inline void require(bool cond, ErrorKind kind, const char* what) {
  if (!cond) fail(kind, what);
}

}  // namespace slidekit
