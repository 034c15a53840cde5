#pragma once

#include <iosfwd>

namespace schottky::cli {

/// Runs one `schottky` invocation. Exit codes: 0 success, 1 a verification or
/// oracle check failed, 2 the input was rejected. Failures print a single
/// "error: <kind>: <message>" line on `err`.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace schottky::cli
