#include "schottky/slope.hpp"

#include <charconv>
#include <numeric>

#include "schottky/errors.hpp"

namespace schottky {

bool is_canonical(std::int64_t p, std::int64_t q) {
  if (q == 0) return p == 1;
  if (q < 0) return false;
  return std::gcd(p, q) == 1;
}

Slope make_slope(std::int64_t p, std::int64_t q) {
  if (!is_canonical(p, q)) {
    fail(ErrorKind::invalid_input,
         "slope " + std::to_string(p) + "/" + std::to_string(q) +
             " is not a canonical primitive pair");
  }
  return Slope{p, q};
}

Slope canonical_slope(std::int64_t p, std::int64_t q) {
  if (p == 0 && q == 0) fail(ErrorKind::invalid_input, "slope (0,0) is not a curve");
  const std::int64_t g = std::gcd(p, q);
  p /= g;
  q /= g;
  if (q < 0 || (q == 0 && p < 0)) {
    p = -p;
    q = -q;
  }
  return Slope{p, q};
}

Slope parse_slope(std::string_view text) {
  const auto slash = text.find('/');
  if (slash == std::string_view::npos) {
    fail(ErrorKind::invalid_input, "malformed slope '" + std::string(text) + "': expected p/q");
  }
  auto parse = [&](std::string_view part) {
    std::int64_t v = 0;
    const auto* first = part.data();
    const auto* last = part.data() + part.size();
    if (!part.empty() && *first == '+') ++first;
    auto [ptr, ec] = std::from_chars(first, last, v);
    if (ec != std::errc{} || ptr != last || part.empty()) {
      fail(ErrorKind::invalid_input, "malformed slope '" + std::string(text) + "'");
    }
    return v;
  };
  return make_slope(parse(text.substr(0, slash)), parse(text.substr(slash + 1)));
}

std::string to_string(const Slope& s) {
  return std::to_string(s.p) + "/" + std::to_string(s.q);
}

}  // namespace schottky
