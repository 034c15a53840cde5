#pragma once

#include <complex>
#include <string>

namespace schottky::hyp2 {

// The model plane is the upper half-plane with half the usual hyperbolic
// metric, so a unit-speed geodesic covers hyperbolic length 2 per unit time.

inline constexpr double kTolerance = 1e-9;

struct Point {
  double x = 0.0;
  double y = 1.0;

  std::complex<double> z() const { return {x, y}; }
  friend bool operator==(const Point&, const Point&) = default;
};

/// Throws invalid_input unless both coordinates are finite and y > 0.
Point make_point(double x, double y);
void validate(const Point& p);
std::string to_string(const Point& p);

/// A point of the closed real line: a finite real or infinity.
class BoundaryPoint {
 public:
  static BoundaryPoint at(double value);
  static BoundaryPoint infinity() { return BoundaryPoint(); }

  bool is_infinite() const noexcept { return infinite_; }
  /// Only meaningful when finite.
  double value() const noexcept { return value_; }

  friend bool operator==(const BoundaryPoint&, const BoundaryPoint&) = default;

 private:
  BoundaryPoint() = default;
  bool infinite_ = true;
  double value_ = 0.0;
};

std::string to_string(const BoundaryPoint& p);

/// z -> (a z + b) / (c z + d) with ad - bc = 1.
struct Mobius {
  double a = 1.0, b = 0.0, c = 0.0, d = 1.0;

  static Mobius identity() { return {}; }
  double det() const { return a * d - b * c; }
  Mobius inverse() const { return {d, -b, -c, a}; }
  friend Mobius operator*(const Mobius& l, const Mobius& r) {
    return {l.a * r.a + l.b * r.c, l.a * r.b + l.b * r.d,
            l.c * r.a + l.d * r.c, l.c * r.b + l.d * r.d};
  }
};

/// Throws invalid_input if |det - 1| exceeds `tolerance`.
Mobius make_mobius(double a, double b, double c, double d, double tolerance = 1e-12);

Point apply(const Mobius& m, const Point& z);
BoundaryPoint apply(const Mobius& m, const BoundaryPoint& p);

/// Model distance: half the hyperbolic distance.
double dist(const Point& z, const Point& w);

/// Oriented bi-infinite geodesic with a unit-speed parametrization c(t),
/// c(0) = origin, c(t) -> endpoint_pos as t -> +inf.
class Geodesic {
 public:
  /// Throws degenerate_input for equal endpoints and invalid_input when the
  /// origin is farther than `tolerance` from the geodesic. The stored origin is
  /// the nearest point of the geodesic to the given one.
  Geodesic(BoundaryPoint endpoint_neg, BoundaryPoint endpoint_pos, Point origin,
           double tolerance = kTolerance);

  const BoundaryPoint& endpoint_neg() const noexcept { return neg_; }
  const BoundaryPoint& endpoint_pos() const noexcept { return pos_; }
  const Point& origin() const noexcept { return origin_; }

  /// Isometry sending endpoint_neg -> 0, endpoint_pos -> inf and origin -> i.
  /// In those coordinates c(t) = i e^{2t}.
  const Mobius& normalizer() const noexcept { return to_standard_; }

  Geodesic reversed() const;

 private:
  BoundaryPoint neg_;
  BoundaryPoint pos_;
  Point origin_;
  Mobius to_standard_;
};

Geodesic geodesic_through(const Point& z, const Point& w);
Point point_at(const Geodesic& c, double t);
Geodesic transport(const Mobius& m, const Geodesic& c);

struct Projection {
  Point foot;
  double t = 0.0;
};

/// Nearest-point projection; single-valued in this model.
Projection project(const Geodesic& c, const Point& z);
double dist_to_geodesic(const Geodesic& c, const Point& z);

/// Parameter of the foot of the perpendicular from an ideal point. Throws
/// degenerate_input when the ideal point is an endpoint of `c`.
double project_ideal(const Geodesic& c, const BoundaryPoint& p);

/// True when the two geodesics meet in exactly one interior point.
bool crosses(const Geodesic& a, const Geodesic& b);

}  // namespace schottky::hyp2
