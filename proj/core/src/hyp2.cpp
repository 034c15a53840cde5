#include "schottky/hyp2.hpp"

#include <cmath>
#include <cstdio>

#include "schottky/errors.hpp"
#include "schottky/numeric.hpp"

namespace schottky::hyp2 {

Point make_point(double x, double y) {
  Point p{x, y};
  validate(p);
  return p;
}

void validate(const Point& p) {
  if (!std::isfinite(p.x) || !std::isfinite(p.y)) {
    fail(ErrorKind::invalid_input, "point has a non-finite coordinate");
  }
  if (!(p.y > 0.0)) {
    fail(ErrorKind::invalid_input, "point " + to_string(p) + " is not in the upper half-plane");
  }
}

std::string to_string(const Point& p) {
  return "(" + format_g17(p.x) + "," + format_g17(p.y) + ")";
}

BoundaryPoint BoundaryPoint::at(double value) {
  if (!std::isfinite(value)) fail(ErrorKind::invalid_input, "finite boundary point expected");
  BoundaryPoint p;
  p.infinite_ = false;
  p.value_ = value;
  return p;
}

std::string to_string(const BoundaryPoint& p) {
  return p.is_infinite() ? std::string("inf") : format_g17(p.value());
}

Mobius make_mobius(double a, double b, double c, double d, double tolerance) {
  const Mobius m{a, b, c, d};
  if (!std::isfinite(a) || !std::isfinite(b) || !std::isfinite(c) || !std::isfinite(d)) {
    fail(ErrorKind::invalid_input, "Mobius entries must be finite");
  }
  if (std::abs(m.det() - 1.0) > tolerance) {
    fail(ErrorKind::invalid_input, "Mobius determinant " + format_g17(m.det()) + " is not 1");
  }
  return m;
}

Point apply(const Mobius& m, const Point& z) {
  const std::complex<double> zc = z.z();
  const std::complex<double> denom = m.c * zc + m.d;
  const std::complex<double> w = (m.a * zc + m.b) / denom;
  // Im w = det * Im z / |cz + d|^2 avoids cancellation in the imaginary part.
  const double y = m.det() * z.y / std::norm(denom);
  if (!std::isfinite(w.real()) || !std::isfinite(y) || !(y > 0.0)) {
    fail(ErrorKind::internal, "Mobius image left the upper half-plane");
  }
  return {w.real(), y};
}

BoundaryPoint apply(const Mobius& m, const BoundaryPoint& p) {
  if (p.is_infinite()) {
    if (m.c == 0.0) return BoundaryPoint::infinity();
    return BoundaryPoint::at(m.a / m.c);
  }
  const double denom = m.c * p.value() + m.d;
  if (denom == 0.0) return BoundaryPoint::infinity();
  return BoundaryPoint::at((m.a * p.value() + m.b) / denom);
}

double dist(const Point& z, const Point& w) {
  validate(z);
  validate(w);
  // d_hyp = 2 asinh(|z - w| / (2 sqrt(y_z y_w))), and the model halves it.
  const double chord = std::hypot(z.x - w.x, z.y - w.y);
  return std::asinh(chord / (2.0 * std::sqrt(z.y * w.y)));
}

namespace {

Mobius endpoints_to_zero_infinity(const BoundaryPoint& neg, const BoundaryPoint& pos) {
  if (pos.is_infinite()) return {1.0, -neg.value(), 0.0, 1.0};
  if (neg.is_infinite()) return {0.0, -1.0, 1.0, -pos.value()};
  const double s = neg.value() > pos.value() ? 1.0 : -1.0;
  const double scale = 1.0 / std::sqrt(std::abs(neg.value() - pos.value()));
  return {s * scale, -s * neg.value() * scale, scale, -pos.value() * scale};
}

}  // namespace

Geodesic::Geodesic(BoundaryPoint endpoint_neg, BoundaryPoint endpoint_pos, Point origin,
                   double tolerance)
    : neg_(endpoint_neg), pos_(endpoint_pos) {
  validate(origin);
  if (neg_ == pos_) fail(ErrorKind::degenerate_input, "geodesic endpoints coincide");
  const Mobius to_axis = endpoints_to_zero_infinity(neg_, pos_);
  const Point w = apply(to_axis, origin);
  const double off_axis = 0.5 * std::asinh(std::abs(w.x) / w.y);
  if (off_axis > tolerance) {
    fail(ErrorKind::invalid_input, "origin " + to_string(origin) + " is " + format_g17(off_axis) +
                                       " away from the geodesic");
  }
  const double height = std::hypot(w.x, w.y);
  const double root = std::sqrt(height);
  to_standard_ = Mobius{1.0 / root, 0.0, 0.0, root} * to_axis;
  origin_ = apply(to_standard_.inverse(), Point{0.0, 1.0});
}

Geodesic Geodesic::reversed() const { return Geodesic(pos_, neg_, origin_); }

Geodesic geodesic_through(const Point& z, const Point& w) {
  validate(z);
  validate(w);
  if (z == w) fail(ErrorKind::degenerate_input, "geodesic through a single point is undefined");
  const double dx = w.x - z.x;
  if (dx == 0.0) {
    const auto foot = BoundaryPoint::at(z.x);
    return w.y > z.y ? Geodesic(foot, BoundaryPoint::infinity(), z)
                     : Geodesic(BoundaryPoint::infinity(), foot, z);
  }
  const double z2 = z.x * z.x + z.y * z.y;
  const double w2 = w.x * w.x + w.y * w.y;
  const double center = (w2 - z2) / (2.0 * dx);
  const double radius = std::hypot(z.x - center, z.y);
  // The endpoint on the same side of 0 as the center is well conditioned;
  // recover the other from the product of the roots, center^2 - radius^2.
  const double product = 2.0 * center * z.x - z2;
  double left = 0.0;
  double right = 0.0;
  if (center >= 0.0) {
    right = center + radius;
    left = product / right;
  } else {
    left = center - radius;
    right = product / left;
  }
  const auto lo = BoundaryPoint::at(left);
  const auto hi = BoundaryPoint::at(right);
  return dx > 0.0 ? Geodesic(lo, hi, z) : Geodesic(hi, lo, z);
}

Point point_at(const Geodesic& c, double t) {
  return apply(c.normalizer().inverse(), Point{0.0, std::exp(2.0 * t)});
}

Geodesic transport(const Mobius& m, const Geodesic& c) {
  return Geodesic(apply(m, c.endpoint_neg()), apply(m, c.endpoint_pos()), apply(m, c.origin()));
}

Projection project(const Geodesic& c, const Point& z) {
  validate(z);
  const Point w = apply(c.normalizer(), z);
  const double t = 0.5 * std::log(std::hypot(w.x, w.y));
  return {point_at(c, t), t};
}

double dist_to_geodesic(const Geodesic& c, const Point& z) {
  validate(z);
  const Point w = apply(c.normalizer(), z);
  return 0.5 * std::asinh(std::abs(w.x) / w.y);
}

double project_ideal(const Geodesic& c, const BoundaryPoint& p) {
  const BoundaryPoint u = apply(c.normalizer(), p);
  if (u.is_infinite() || u.value() == 0.0) {
    fail(ErrorKind::degenerate_input, "ideal point is an endpoint of the geodesic");
  }
  return 0.5 * std::log(std::abs(u.value()));
}

bool crosses(const Geodesic& a, const Geodesic& b) {
  const BoundaryPoint u = apply(a.normalizer(), b.endpoint_neg());
  const BoundaryPoint v = apply(a.normalizer(), b.endpoint_pos());
  if (u.is_infinite() || v.is_infinite()) return false;
  return u.value() * v.value() < 0.0;
}

}  // namespace schottky::hyp2
