#pragma once

#include <stdexcept>
#include <string>

namespace pfiber {

enum class ErrorKind {
  invalid_input,
  domain_error,
  degenerate_input,
  precondition,
  numerical_failure,
  configuration,
};

const char* to_string(ErrorKind kind);

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what)
      : std::runtime_error(what), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

[[noreturn]] inline void fail(ErrorKind kind, const std::string& what) {
  throw Error(kind, what);
}

}  // namespace pfiber
