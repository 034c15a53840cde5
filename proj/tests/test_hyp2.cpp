#include <cmath>
#include <numbers>
#include <random>

#include <gtest/gtest.h>

#include "schottky/errors.hpp"
#include "schottky/hyp2.hpp"
#include "support/oracles.hpp"

using namespace schottky;
using namespace schottky::hyp2;

namespace {

Point random_point(std::mt19937_64& rng) {
  std::uniform_real_distribution<double> x(-5.0, 5.0), ly(-3.0, 3.0);
  return make_point(x(rng), std::exp(ly(rng)));
}

Mobius random_mobius(std::mt19937_64& rng) {
  std::uniform_real_distribution<double> u(-2.0, 2.0);
  for (;;) {
    const double a = u(rng), b = u(rng), c = u(rng);
    if (std::abs(a) < 0.2) continue;
    return make_mobius(a, b, c, (1.0 + b * c) / a);
  }
}

Geodesic random_geodesic(std::mt19937_64& rng) {
  return geodesic_through(random_point(rng), random_point(rng));
}

oracle_ref::cplx as_complex(const Point& p) { return {p.x, p.y}; }

}  // namespace

TEST(Distance, VerticalPair) {
  EXPECT_NEAR(dist(make_point(0, 1), make_point(0, 2)), 0.5 * std::log(2.0), 1e-15);
}

TEST(Distance, SamePoint) {
  const Point z = make_point(0.3, 0.7);
  EXPECT_EQ(dist(z, z), 0.0);
}

TEST(Distance, HorizontalNeighbour) {
  const double expected = oracle_ref::dist({0, 1}, {1, 1});
  EXPECT_NEAR(expected, 0.5 * std::acosh(1.5), 1e-15);
  EXPECT_NEAR(dist(make_point(0, 1), make_point(1, 1)), expected, 1e-14);
  EXPECT_NEAR(expected, 0.48121, 1e-5);
}

TEST(Distance, AgreesWithCoshFormulaOnRandomPairs) {
  std::mt19937_64 rng(1);
  for (int i = 0; i < 1000; ++i) {
    const Point z = random_point(rng), w = random_point(rng);
    const double ref = oracle_ref::dist(as_complex(z), as_complex(w));
    EXPECT_NEAR(dist(z, w), ref, 1e-9 * (1.0 + ref));
  }
}

TEST(Distance, RejectsPointsOffTheHalfPlane) {
  EXPECT_THROW(make_point(0, 0), Error);
  EXPECT_THROW(make_point(0, -1), Error);
  EXPECT_THROW(make_point(std::nan(""), 1), Error);
}

TEST(Mobius, Identity) {
  const Point z = apply(Mobius::identity(), make_point(0, 1));
  EXPECT_DOUBLE_EQ(z.x, 0.0);
  EXPECT_DOUBLE_EQ(z.y, 1.0);
}

TEST(Mobius, TraceThreeMatrixAtI) {
  const oracle_ref::cplx i{0, 1};
  const oracle_ref::cplx expected = (2.0 * i + 1.0) / (i + 1.0);
  const Point z = apply(make_mobius(2, 1, 1, 1), make_point(0, 1));
  EXPECT_NEAR(z.x, expected.real(), 1e-15);
  EXPECT_NEAR(z.y, expected.imag(), 1e-15);
  EXPECT_NEAR(z.x, 1.5, 1e-15);
  EXPECT_NEAR(z.y, 0.5, 1e-15);
}

TEST(Mobius, DiagonalScaling) {
  const Point z = apply(make_mobius(std::sqrt(2.0), 0, 0, 1 / std::sqrt(2.0)), make_point(1.5, 0.25));
  EXPECT_NEAR(z.x, 3.0, 1e-14);
  EXPECT_NEAR(z.y, 0.5, 1e-14);
}

TEST(Mobius, RejectsWrongDeterminant) { EXPECT_THROW(make_mobius(2, 1, 1, 2), Error); }

TEST(Mobius, BoundaryLimits) {
  const Mobius m = make_mobius(2, 1, 1, 1);
  EXPECT_DOUBLE_EQ(apply(m, BoundaryPoint::infinity()).value(), 2.0);
  EXPECT_TRUE(apply(m, BoundaryPoint::at(-1.0)).is_infinite());
}

TEST(Geodesic, VerticalThroughIAnd2I) {
  const Geodesic c = geodesic_through(make_point(0, 1), make_point(0, 2));
  const bool one_infinite = c.endpoint_neg().is_infinite() != c.endpoint_pos().is_infinite();
  EXPECT_TRUE(one_infinite);
  const BoundaryPoint finite = c.endpoint_neg().is_infinite() ? c.endpoint_pos() : c.endpoint_neg();
  EXPECT_NEAR(finite.value(), 0.0, 1e-15);
}

TEST(Geodesic, ThroughIAndOnePlusI) {
  const Geodesic c = geodesic_through(make_point(0, 1), make_point(1, 1));
  const double lo = std::min(c.endpoint_neg().value(), c.endpoint_pos().value());
  const double hi = std::max(c.endpoint_neg().value(), c.endpoint_pos().value());
  EXPECT_NEAR(lo, 0.5 - std::sqrt(5.0) / 2, 1e-14);
  EXPECT_NEAR(hi, 0.5 + std::sqrt(5.0) / 2, 1e-14);
}

TEST(Geodesic, MirrorSymmetry) {
  const Geodesic c = geodesic_through(make_point(0.3, 0.8), make_point(1.7, 2.1));
  const Geodesic m = geodesic_through(make_point(-0.3, 0.8), make_point(-1.7, 2.1));
  const double a = std::min(c.endpoint_neg().value(), c.endpoint_pos().value());
  const double b = std::max(c.endpoint_neg().value(), c.endpoint_pos().value());
  const double ma = std::min(m.endpoint_neg().value(), m.endpoint_pos().value());
  const double mb = std::max(m.endpoint_neg().value(), m.endpoint_pos().value());
  EXPECT_NEAR(ma, -b, 1e-12);
  EXPECT_NEAR(mb, -a, 1e-12);
}

TEST(Geodesic, ThroughCoincidentPointsIsDegenerate) {
  try {
    geodesic_through(make_point(1, 1), make_point(1, 1));
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::degenerate_input);
  }
}

TEST(PointAt, StandardAxis) {
  const Geodesic c(BoundaryPoint::at(0), BoundaryPoint::infinity(), make_point(0, 1));
  const Point o = point_at(c, 0);
  EXPECT_NEAR(o.x, 0, 1e-15);
  EXPECT_NEAR(o.y, 1, 1e-15);
  const Point p = point_at(c, 0.5 * std::log(2.0));
  EXPECT_NEAR(p.x, 0, 1e-15);
  EXPECT_NEAR(p.y, 2, 1e-14);
}

TEST(PointAt, TransportEquivariance) {
  std::mt19937_64 rng(2);
  std::uniform_real_distribution<double> t(-3, 3);
  for (int i = 0; i < 200; ++i) {
    const Geodesic c = random_geodesic(rng);
    const Mobius m = random_mobius(rng);
    const double s = t(rng);
    const Point a = apply(m, point_at(c, s));
    const Point b = point_at(transport(m, c), s);
    EXPECT_LT(dist(a, b), 1e-8);
  }
}

TEST(PointAt, UnitSpeed) {
  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> t(-4, 4);
  for (int i = 0; i < 500; ++i) {
    const Geodesic c = random_geodesic(rng);
    const double s = t(rng), u = t(rng);
    EXPECT_NEAR(dist(point_at(c, s), point_at(c, u)), std::abs(s - u), 1e-9);
  }
}

TEST(Project, ThreePlusFourI) {
  const Geodesic c(BoundaryPoint::at(0), BoundaryPoint::infinity(), make_point(0, 1));
  const Point z = make_point(3, 4);
  const Projection p = project(c, z);
  EXPECT_NEAR(p.foot.x, 0, 1e-12);
  EXPECT_NEAR(p.foot.y, 5, 1e-12);
  // Nearest point by direct search along the axis.
  const double best = oracle_ref::grid_min(
      [&](double s) { return oracle_ref::dist({3, 4}, {0, std::exp(s)}); }, -5, 5, 2000);
  EXPECT_NEAR(dist(z, p.foot), best, 1e-9);
  EXPECT_NEAR(p.t, 0.5 * std::log(5.0), 1e-14);
}

TEST(Project, PointOnGeodesic) {
  std::mt19937_64 rng(4);
  for (int i = 0; i < 100; ++i) {
    const Geodesic c = random_geodesic(rng);
    const Point z = point_at(c, 0.7);
    const Projection p = project(c, z);
    EXPECT_LT(dist(p.foot, z), 1e-9);
    EXPECT_NEAR(p.t, 0.7, 1e-9);
    EXPECT_LT(dist_to_geodesic(c, z), 1e-9);
  }
}

TEST(Project, MobiusEquivariance) {
  std::mt19937_64 rng(5);
  for (int i = 0; i < 500; ++i) {
    const Geodesic c = random_geodesic(rng);
    const Mobius m = random_mobius(rng);
    const Point z = random_point(rng);
    EXPECT_NEAR(project(transport(m, c), apply(m, z)).t, project(c, z).t, 1e-9);
  }
}

TEST(Project, IdempotentAndOneLipschitz) {
  std::mt19937_64 rng(6);
  for (int i = 0; i < 1000; ++i) {
    const Geodesic c = random_geodesic(rng);
    const Point z = random_point(rng), w = random_point(rng);
    const Point fz = project(c, z).foot;
    EXPECT_LT(dist(project(c, fz).foot, fz), 1e-9);
    EXPECT_LE(dist(fz, project(c, w).foot), dist(z, w) + 1e-9);
  }
}

TEST(Project, FootMatchesDirectSearch) {
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> e(-3, 3);
  for (int i = 0; i < 100; ++i) {
    double a = e(rng), b = e(rng);
    if (std::abs(a - b) < 0.1) continue;
    if (a > b) std::swap(a, b);
    const double cx = 0.5 * (a + b), r = 0.5 * (b - a);
    const Geodesic c(BoundaryPoint::at(a), BoundaryPoint::at(b), make_point(cx, r));
    const Point z = random_point(rng);
    EXPECT_NEAR(dist_to_geodesic(c, z), oracle_ref::dist_to_semicircle({z.x, z.y}, a, b), 1e-8);
  }
}

TEST(DistToGeodesic, OnePlusI) {
  const Geodesic c(BoundaryPoint::at(0), BoundaryPoint::infinity(), make_point(0, 1));
  EXPECT_NEAR(dist_to_geodesic(c, make_point(1, 1)), 0.5 * std::asinh(1.0), 1e-15);
  EXPECT_NEAR(0.5 * std::log(1 + std::sqrt(2.0)), 0.44069, 1e-5);
}

TEST(DistToGeodesic, TransportInvariance) {
  std::mt19937_64 rng(8);
  for (int i = 0; i < 500; ++i) {
    const Geodesic c = random_geodesic(rng);
    const Mobius m = random_mobius(rng);
    const Point z = random_point(rng);
    EXPECT_NEAR(dist_to_geodesic(transport(m, c), apply(m, z)), dist_to_geodesic(c, z), 1e-9);
  }
}

TEST(Metric, IsometryInvariance) {
  std::mt19937_64 rng(9);
  for (int i = 0; i < 1000; ++i) {
    const Mobius m = random_mobius(rng);
    const Point z = random_point(rng), w = random_point(rng);
    const double d = dist(z, w);
    EXPECT_NEAR(dist(apply(m, z), apply(m, w)), d, 1e-10 * std::max(1.0, std::exp(2 * d)));
  }
}

TEST(Metric, TriangleInequality) {
  std::mt19937_64 rng(10);
  for (int i = 0; i < 2000; ++i) {
    const Point a = random_point(rng), b = random_point(rng), c = random_point(rng);
    EXPECT_GE(dist(a, b) + dist(b, c) - dist(a, c), -1e-10);
  }
}

TEST(Crosses, ThroughCommonPoint) {
  const Geodesic a(BoundaryPoint::at(-1), BoundaryPoint::at(1), make_point(0, 1));
  const Geodesic b(BoundaryPoint::at(0), BoundaryPoint::infinity(), make_point(0, 1));
  const Geodesic c(BoundaryPoint::at(2), BoundaryPoint::at(3), make_point(2.5, 0.5));
  EXPECT_TRUE(crosses(a, b));
  EXPECT_FALSE(crosses(a, c));
}
