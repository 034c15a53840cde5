#pragma once

#include <compare>
#include <cstdint>
#include <string>
#include <string_view>

namespace schottky {

/// A simple closed curve on the torus, written as a primitive integer pair
/// (p, q). Canonical form: q > 0, or (p, q) = (1, 0).
struct Slope {
  std::int64_t p = 1;
  std::int64_t q = 0;

  friend bool operator==(const Slope&, const Slope&) = default;
  /// Canonical order: by q, then p.
  friend std::strong_ordering operator<=>(const Slope& a, const Slope& b) {
    if (auto c = a.q <=> b.q; c != 0) return c;
    return a.p <=> b.p;
  }
};

/// Validates an already-canonical pair; rejects anything else.
Slope make_slope(std::int64_t p, std::int64_t q);

/// Divides out the gcd and fixes the sign. Throws on (0, 0).
Slope canonical_slope(std::int64_t p, std::int64_t q);

bool is_canonical(std::int64_t p, std::int64_t q);

/// Parses "p/q"; the (1,0) curve is written "1/0".
Slope parse_slope(std::string_view text);
std::string to_string(const Slope& s);

}  // namespace schottky
