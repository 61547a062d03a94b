#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace ncmult {

enum class ErrorKind {
  malformed,       // element or input not in normal form, bad label
  resource,        // ball or table larger than the configured cap
  domain,          // value outside the declared domain of an operation
  numeric,         // quadrature or finite difference failed to stabilise
  symmetry,        // input that must be symmetric is not
  window,          // fusion data needed outside the materialised window
  parameter,       // parameter out of range
  grammar,         // text specification could not be parsed
  unsupported,     // operation not defined for this group or body
  nonconvergence,  // search exhausted its horizon
};

std::string_view to_string(ErrorKind kind);

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& message);
  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

[[noreturn]] void fail(ErrorKind kind, const std::string& message);

inline void require(bool condition, ErrorKind kind, const std::string& message) {
  if (!condition) fail(kind, message);
}

}  // namespace ncmult
