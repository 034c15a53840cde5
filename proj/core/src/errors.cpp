#include "schottky/errors.hpp"

namespace schottky {

std::string_view to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::invalid_input: return "invalid-input";
    case ErrorKind::degenerate_input: return "degenerate-input";
    case ErrorKind::classification: return "classification";
    case ErrorKind::not_independent: return "not-independent";
    case ErrorKind::constant_derivation: return "constant-derivation";
    case ErrorKind::horizon_exceeded: return "horizon-exceeded";
    case ErrorKind::certificate_invalid: return "certificate-invalid";
    case ErrorKind::f_violation: return "f-violation";
    case ErrorKind::internal: return "internal";
  }
  return "unknown";
}

Error::Error(ErrorKind kind, const std::string& message, std::string witness)
    : std::runtime_error(message), kind_(kind), witness_(std::move(witness)) {}

void fail(ErrorKind kind, const std::string& message, std::string witness) {
  throw Error(kind, message, std::move(witness));
}

}  // namespace schottky
