#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>

#include "schottky/hyp2.hpp"
#include "schottky/numeric.hpp"
#include "schottky/slope.hpp"

namespace schottky::mcg {

/// An integer matrix of determinant 1 taken up to sign. The stored sign makes
/// the first nonzero entry of (a, b, c, d) positive, so equality is exact.
class MappingClass {
 public:
  /// Throws invalid_input unless ad - bc = 1.
  MappingClass(BigInt a, BigInt b, BigInt c, BigInt d);

  static MappingClass identity();
  /// Parses "a,b,c,d" with integers of any size.
  static MappingClass parse(std::string_view text);

  const BigInt& a() const noexcept { return a_; }
  const BigInt& b() const noexcept { return b_; }
  const BigInt& c() const noexcept { return c_; }
  const BigInt& d() const noexcept { return d_; }
  BigInt trace() const { return a_ + d_; }

  MappingClass inverse() const;
  MappingClass pow(std::uint64_t n) const;
  bool is_identity() const;

  /// Floating-point copy; loses precision once entries pass 2^53.
  hyp2::Mobius to_mobius() const;

  friend MappingClass operator*(const MappingClass& l, const MappingClass& r);
  friend bool operator==(const MappingClass&, const MappingClass&) = default;

 private:
  struct Unchecked {};
  MappingClass(Unchecked, BigInt a, BigInt b, BigInt c, BigInt d);
  void canonicalize();

  BigInt a_, b_, c_, d_;
};

std::string to_string(const MappingClass& m);

enum class Kind { elliptic, parabolic, pseudo_anosov };
std::string_view to_string(Kind kind);

/// Exact comparison of |trace| with 2.
Kind classify(const MappingClass& m);

struct AxisData {
  hyp2::Geodesic axis;
  hyp2::BoundaryPoint repelling;
  hyp2::BoundaryPoint attracting;
  double translation = 0.0;  // log of the dilatation
  double dilatation = 0.0;   // the eigenvalue > 1
};

/// Axis oriented from the repelling to the attracting fixed point, with the
/// summit of the semicircle as origin. Throws classification for non-pA input.
AxisData axis(const MappingClass& m);

double translation_distance(const MappingClass& m);

/// Exact: true iff the commutator is not +-identity. Also cross-checks the
/// fixed-point quadratics and raises internal if the two tests disagree.
bool independent(const MappingClass& m1, const MappingClass& m2);

/// Smallest translation distance of any pseudo-Anosov: log((3 + sqrt 5) / 2).
double min_translation();

/// Action on slopes satisfying curve_length(m . s, m . tau) = curve_length(s, tau).
Slope act(const MappingClass& m, const Slope& s);

/// The slope fixed by a trace +-2 class; nullopt for pseudo-Anosov and
/// elliptic classes. For +-identity every slope is fixed and 1/0 is returned.
std::optional<Slope> fixed_slope_test(const MappingClass& m);

void require_pseudo_anosov(const MappingClass& m);

}  // namespace schottky::mcg
