#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace schottky {

enum class ErrorKind {
  invalid_input,
  degenerate_input,
  classification,
  not_independent,
  constant_derivation,
  horizon_exceeded,
  certificate_invalid,
  f_violation,
  internal,
};

std::string_view to_string(ErrorKind kind);

/// Every failure raised by the library. `kind()` is what callers dispatch on;
/// `witness()` is filled in when a check fails on a concrete input.
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& message, std::string witness = {});

  ErrorKind kind() const noexcept { return kind_; }
  const std::string& witness() const noexcept { return witness_; }

 private:
  ErrorKind kind_;
  std::string witness_;
};

[[noreturn]] void fail(ErrorKind kind, const std::string& message, std::string witness = {});

}  // namespace schottky
