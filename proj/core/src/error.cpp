#include "pfiber/error.hpp"

namespace pfiber {

const char* to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::invalid_input: return "invalid-input";
    case ErrorKind::domain_error: return "domain-error";
    case ErrorKind::degenerate_input: return "degenerate-input";
    case ErrorKind::precondition: return "precondition-error";
    case ErrorKind::numerical_failure: return "numerical-failure";
    case ErrorKind::configuration: return "configuration-error";
  }
  return "unknown";
}

}  // namespace pfiber
