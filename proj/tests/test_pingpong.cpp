#include <cmath>
#include <random>

#include <gtest/gtest.h>

#include "schottky/errors.hpp"
#include "schottky/pingpong.hpp"
#include "schottky/projection.hpp"
#include "schottky/report.hpp"
#include "support/oracles.hpp"

using namespace schottky;
using namespace schottky::pingpong;
using hyp2::BoundaryPoint;
using hyp2::Geodesic;
using hyp2::make_point;

namespace {

const mcg::MappingClass phi(2, 1, 1, 1);
const mcg::MappingClass psi(1, 1, 1, 2);

// Axes (-sqrt 8, sqrt 8) and (4 - sqrt 8, 4 + sqrt 8); the second has
// endpoints inverse in the first circle, so they meet at a right angle.
const mcg::MappingClass perp1(3, 8, 1, 3);
const mcg::MappingClass perp2(7, -8, 1, -1);

double b_const() { return projection::model_constants().b; }

CertificateOptions quick(std::size_t samples = 10000) {
  CertificateOptions o;
  o.samples = samples;
  return o;
}

ErrorKind kind_of(const std::function<void()>& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.kind();
  }
  return ErrorKind::internal;
}

}  // namespace

TEST(PiSet, Membership) {
  const Geodesic c(BoundaryPoint::at(0), BoundaryPoint::infinity(), make_point(0, 1));
  EXPECT_TRUE(pi_membership(make_pi_set(c, 0.7, Sign::plus), hyp2::point_at(c, 1.7)));
  EXPECT_FALSE(pi_membership(make_pi_set(c, 0.7, Sign::minus), hyp2::point_at(c, 1.7)));
  EXPECT_FALSE(pi_membership(make_pi_set(c, 0.7, Sign::plus), c.origin()));
  EXPECT_FALSE(pi_membership(make_pi_set(c, 0.7, Sign::minus), c.origin()));
  const double t = oracle_ref::vertical_parameter({3, 4});
  EXPECT_NEAR(t, 0.8047, 1e-4);
  EXPECT_TRUE(pi_membership(make_pi_set(c, 0.7, Sign::plus), make_point(3, 4)));
  EXPECT_THROW(make_pi_set(c, 0.0, Sign::plus), Error);
}

TEST(Samples, DeterministicAndInsideTheBox) {
  const SampleBox box;
  const auto a = sample_points(box, 1000, 7), b = sample_points(box, 1000, 7);
  EXPECT_EQ(a, b);
  EXPECT_NE(a, sample_points(box, 1000, 8));
  for (const auto& p : a) {
    EXPECT_GE(p.x, box.x_min);
    EXPECT_LT(p.x, box.x_max);
    EXPECT_GE(p.y, box.y_min);
    EXPECT_LE(p.y, box.y_max);
  }
}

TEST(CertifiedRadius, PerpendicularAxes) {
  ASSERT_TRUE(hyp2::crosses(mcg::axis(perp1).axis, mcg::axis(perp2).axis));
  const RadiusReport r = certified_radius({perp1, perp2}, b_const());
  for (const auto& iv : r.intervals) EXPECT_NEAR(iv.hi - iv.lo, 0.0, 1e-12);
  EXPECT_LE(r.R, 2 * b_const());
}

TEST(CertifiedRadius, CrossingGeneratorsAreDisjointBeyondS) {
  const double b = b_const();
  const RadiusReport r = certified_radius({phi, psi}, b);
  EXPECT_TRUE(std::isfinite(r.R));
  EXPECT_GT(r.R, 0.0);
  const double S = r.R + 6 * b;
  std::vector<PiSet> sets;
  for (const auto& g : {phi, psi}) {
    for (Sign s : {Sign::plus, Sign::minus}) sets.push_back(make_pi_set(mcg::axis(g).axis, S, s));
  }
  for (const auto& x : sample_points({}, 100000, 3)) {
    int hits = 0;
    for (const auto& set : sets) hits += pi_membership(set, x);
    ASSERT_LE(hits, 1) << hyp2::to_string(x);
  }
  // The projection of each axis onto the other sits inside B(O, R + 4b).
  for (const auto& iv : r.intervals) EXPECT_LE(iv.hi - iv.lo, 2 * (r.R + 4 * b));
}

TEST(CertifiedRadius, ShrinksAsAxesMoveApart) {
  double previous = INFINITY;
  for (int k : {2, 4, 8, 16, 32}) {
    const mcg::MappingClass g(1, k, 0, 1);
    const double R = certified_radius({phi, g * psi * g.inverse()}, b_const()).R;
    EXPECT_LE(R, previous) << "k = " << k;
    previous = R;
  }
}

TEST(PaperRadius, SyntheticExamples) {
  EXPECT_EQ(paper_radius(3, 1).value(), 8);
  EXPECT_EQ(paper_radius(4, 2).value(), 52);
  EXPECT_EQ(paper_radius(1, BigRational(1, 2)).value(), 3);
  EXPECT_EQ(paper_radius(5, BigRational(3, 2)).value(), 183);
}

TEST(PaperRadius, LogEnclosureMatchesExactDigits) {
  for (int B : {10, 50, 170, 1000, 5000}) {
    for (const BigRational& L : {BigRational(1), BigRational(3, 2), BigRational(987, 100)}) {
      const HugeInt exact = paper_radius(B, L);
      const HugeInt approx = paper_radius(B, L, 0);
      ASSERT_TRUE(exact.is_materialized());
      ASSERT_FALSE(approx.is_materialized());
      EXPECT_EQ(exact.digits(), approx.digits()) << B;
      EXPECT_EQ(exact.digits(), decimal_digits(exact.value()));
    }
  }
}

TEST(PowerBound, Examples) {
  EXPECT_EQ(power_bound(8.0, 0.5, 0.96242), 23);
  const HugeInt n = power_bound(HugeInt::exact(8), BigRational(1, 2), exact_rational(0.96242));
  EXPECT_EQ(n.value(), 23);
  BigInt previous = 0;
  for (double R : {0.0, 1.0, 2.5, 8.0, 100.0}) {
    for (double b : {0.0, 0.5, 1.0}) {
      const BigInt N = power_bound(R, b, 0.96242);
      EXPECT_GT(BigRational(N) * exact_rational(0.96242), 2 * exact_rational(R) + 12 * exact_rational(b));
    }
    const BigInt N = power_bound(R, 0.5, 0.96242);
    EXPECT_GE(N, previous);
    previous = N;
  }
  EXPECT_LE(power_bound(8.0, 0.5, 0.96242), power_bound(8.0, 0.6, 0.96242));
  EXPECT_THROW(power_bound(8.0, 0.5, 0.0), Error);
}

TEST(PaperConstants, CrossingGenerators) {
  const double b = b_const();
  const PaperConstants pc = paper_constants({phi, psi}, b, mcg::min_translation());
  EXPECT_NEAR(pc.L, mcg::translation_distance(phi), 1e-15);
  EXPECT_EQ(pc.D_max, 0.0);
  EXPECT_GT(pc.B, 1);
  EXPECT_TRUE(pc.R_paper.certainly_at_least(certified_radius({phi, psi}, b).R));
  EXPECT_GT(pc.N_paper.digits(), pc.R_paper.digits() - 1);
  // B counts short curves at the short radius, which is at least F.
  EXPECT_GE(to_double(pc.B), 2.0);
}

TEST(PaperConstants, ShortBoundDrivesTheRadius) {
  // Small synthetic thick parameters keep B below the factorial cap.
  torus::ThickParams thick = torus::derive_thick_params(mcg::translation_distance(phi));
  const double b = b_const();
  const PaperConstants pc = paper_constants({phi, psi}, b, mcg::min_translation(), thick, 0.0);
  ASSERT_TRUE(pc.R_paper.is_materialized());
  BigInt fact = 1;
  for (BigInt i = 2; i <= pc.B; ++i) fact *= i;
  EXPECT_EQ(pc.R_paper.value(), fact + 2);  // L < 1, so B! + 2 wins
  EXPECT_GT(BigRational(pc.N_paper.value()) * exact_rational(mcg::min_translation()),
            2 * BigRational(pc.R_paper.value()) + 12 * exact_rational(b));
}

TEST(Verify, ValidCertificatePasses) {
  const PingPongCertificate cert = certify({phi, psi}, b_const(), quick());
  EXPECT_TRUE(cert.verification.passed);
  EXPECT_EQ(cert.S, cert.R + 6 * cert.b);
  for (const auto& c : cert.verification.checks) EXPECT_TRUE(c.passed) << c.name;
  EXPECT_EQ(cert.verification.checks.size(), 7u);
}

TEST(Verify, TamperedCertificatesFail) {
  PingPongCertificate cert = certify({phi, psi}, b_const(), quick(1000));
  PingPongCertificate zero = cert;
  zero.N = 0;
  EXPECT_EQ(kind_of([&] { verify_pingpong(zero, 1000, 0); }), ErrorKind::certificate_invalid);
  PingPongCertificate small = cert;
  small.N = 1;
  EXPECT_EQ(kind_of([&] { verify_pingpong(small, 1000, 0); }), ErrorKind::certificate_invalid);
  PingPongCertificate bad_s = cert;
  bad_s.S -= 1.0;
  EXPECT_EQ(kind_of([&] { verify_pingpong(bad_s, 1000, 0); }), ErrorKind::certificate_invalid);
}

TEST(Verify, TooSmallRadiusIsCaught) {
  // With S far below the disjointness radius the Pi sets overlap.
  PingPongCertificate cert = certify({phi, psi}, b_const(), quick(1000));
  cert.R = 0.01;
  cert.b = 0.001;
  cert.S = cert.R + 6 * cert.b;
  cert.N = 1000;
  EXPECT_EQ(kind_of([&] { verify_pingpong(cert, 1000, 0); }), ErrorKind::certificate_invalid);
}

TEST(Verify, DependentPairRejected) {
  EXPECT_EQ(kind_of([&] { certify({phi, phi.pow(2)}, b_const(), quick()); }),
            ErrorKind::not_independent);
  EXPECT_EQ(kind_of([&] { certify({phi, mcg::MappingClass(1, 1, 0, 1)}, b_const(), quick()); }),
            ErrorKind::classification);
  EXPECT_EQ(kind_of([&] { certify({phi}, b_const(), quick()); }), ErrorKind::invalid_input);
}

TEST(Verify, PingPongHypothesisOnRandomPairs) {
  std::mt19937_64 rng(61);
  for (int i = 0; i < 5; ++i) {
    mcg::MappingClass a = oracle_ref::random_pseudo_anosov(rng, 30);
    mcg::MappingClass b = oracle_ref::random_pseudo_anosov(rng, 30);
    if (!mcg::independent(a, b)) continue;
    CertificateOptions o = quick(5000);
    o.per_input_l_min = true;
    const PingPongCertificate cert = certify({a, b}, b_const(), o);
    EXPECT_TRUE(cert.verification.passed);
  }
}

TEST(Verify, ThreeGenerators) {
  const mcg::MappingClass g(1, 4, 0, 1);
  const PingPongCertificate cert =
      certify({phi, psi, g * phi * g.inverse()}, b_const(), quick(5000));
  EXPECT_TRUE(cert.verification.passed);
  EXPECT_EQ(cert.radius.intervals.size(), 6u);
}

TEST(Certificate, DeterministicAcrossRunsAndThreads) {
  const auto one = report::dump(report::to_json(certify({phi, psi}, b_const(), quick(5000))));
  const auto two = report::dump(report::to_json(certify({phi, psi}, b_const(), quick(5000))));
  CertificateOptions threaded = quick(5000);
  threaded.threads = 4;
  const auto four = report::dump(report::to_json(certify({phi, psi}, b_const(), threaded)));
  EXPECT_EQ(one, two);
  EXPECT_EQ(one, four);
}

TEST(Certificate, JsonRoundTrip) {
  const PingPongCertificate cert = certify({phi, psi}, b_const(), quick(1000));
  const PingPongCertificate back = report::certificate_from_json(report::to_json(cert));
  EXPECT_EQ(back.generators, cert.generators);
  EXPECT_EQ(back.N, cert.N);
  EXPECT_EQ(back.R, cert.R);
  EXPECT_EQ(back.S, cert.S);
  EXPECT_EQ(back.b, cert.b);
  EXPECT_TRUE(verify_pingpong(back, 1000, 0).passed);
}

TEST(Certificate, ModeNames) {
  EXPECT_EQ(parse_mode("paper"), Mode::paper_formula);
  EXPECT_EQ(parse_mode("certified"), Mode::certified_search);
  EXPECT_THROW(parse_mode("fast"), Error);
}
