#include "ncmult/error.hpp"

namespace ncmult {

std::string_view to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::malformed: return "malformed";
    case ErrorKind::resource: return "resource";
    case ErrorKind::domain: return "domain";
    case ErrorKind::numeric: return "numeric";
    case ErrorKind::symmetry: return "symmetry";
    case ErrorKind::window: return "window";
    case ErrorKind::parameter: return "parameter";
    case ErrorKind::grammar: return "grammar";
    case ErrorKind::unsupported: return "unsupported";
    case ErrorKind::nonconvergence: return "nonconvergence";
  }
  return "unknown";
}

Error::Error(ErrorKind kind, const std::string& message)
    : std::runtime_error(std::string(to_string(kind)) + " error: " + message), kind_(kind) {}

void fail(ErrorKind kind, const std::string& message) { throw Error(kind, message); }

}  // namespace ncmult
