#pragma once

#include <stdexcept>
#include <string>

namespace ksep {

/// Failure categories. Each maps to a distinct diagnostic so callers (and the
/// CLI) can tell a malformed file from a state that merely fails validation.
enum class ErrorKind {
  parameter,       ///< argument out of range or inconsistent
  syntax,          ///< malformed input text
  non_hermitian,   ///< diagonal with imaginary part, or lower-triangle entry
  negative_diagonal,
  trace,           ///< trace differs from 1 beyond tolerance
  norm,            ///< pure state not normalized
  not_detectable,  ///< closed-form threshold has non-positive denominator
  non_monotone,    ///< bisection precondition violated
  io,
};

const char* to_string(ErrorKind kind) noexcept;

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

inline void require(bool cond, const std::string& what) {
  if (!cond) fail(ErrorKind::parameter, what);
}

}  // namespace ksep
