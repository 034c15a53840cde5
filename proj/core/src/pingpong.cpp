#include "schottky/pingpong.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include <gmp.h>

#include "schottky/errors.hpp"
#include "schottky/projection.hpp"

namespace schottky::pingpong {

namespace mp = boost::multiprecision;

using hyp2::BoundaryPoint;
using hyp2::Geodesic;
using hyp2::Point;

PiSet make_pi_set(const Geodesic& axis, double R, Sign sign) {
  if (!(R > 0.0) || !std::isfinite(R)) fail(ErrorKind::invalid_input, "Pi set radius must be positive");
  return PiSet{axis, R, sign};
}

bool pi_membership(const PiSet& set, const Point& x) {
  const double t = hyp2::project(set.axis, x).t;
  return set.sign == Sign::plus ? t >= set.R : t <= -set.R;
}

std::vector<Point> sample_points(const SampleBox& box, std::size_t count, std::uint64_t seed) {
  if (!(box.x_min < box.x_max) || !(box.y_min > 0.0) || !(box.y_min < box.y_max)) {
    fail(ErrorKind::invalid_input, "sample box is empty");
  }
  std::mt19937_64 rng(seed);
  const double log_lo = std::log(box.y_min);
  const double log_hi = std::log(box.y_max);
  std::vector<Point> out(count);
  for (auto& p : out) {
    const double x = box.x_min + (box.x_max - box.x_min) * unit_uniform(rng);
    const double y = std::exp(log_lo + (log_hi - log_lo) * unit_uniform(rng));
    p = Point{x, y};
  }
  return out;
}

void require_generators(const std::vector<mcg::MappingClass>& generators) {
  if (generators.size() < 2) fail(ErrorKind::invalid_input, "at least two generators are needed");
  for (const auto& g : generators) mcg::require_pseudo_anosov(g);
  for (std::size_t i = 0; i < generators.size(); ++i) {
    for (std::size_t j = i + 1; j < generators.size(); ++j) {
      if (!mcg::independent(generators[i], generators[j])) {
        fail(ErrorKind::not_independent, "generators " + mcg::to_string(generators[i]) + " and " +
                                             mcg::to_string(generators[j]) + " share an axis");
      }
    }
  }
}

RadiusReport certified_radius(const std::vector<mcg::MappingClass>& generators, double b) {
  require_generators(generators);
  if (!(b > 0.0)) fail(ErrorKind::invalid_input, "contraction constant must be positive");
  std::vector<Geodesic> axes;
  for (const auto& g : generators) axes.push_back(mcg::axis(g).axis);

  RadiusReport report;
  for (std::size_t i = 0; i < axes.size(); ++i) {
    double extent = 0.0;
    for (std::size_t j = 0; j < axes.size(); ++j) {
      if (i == j) continue;
      const auto [lo, hi] = projection::projection_interval(axes[i], axes[j]);
      report.intervals.push_back({i, j, lo, hi});
      extent = std::max({extent, std::abs(lo), std::abs(hi)});
    }
    const double steps = std::floor((extent - 4.0 * b) / report.step) + 1.0;
    const double grid = std::max(steps, 1.0) * report.step;
    report.per_axis.push_back(grid * (1.0 + report.margin));
  }
  report.R = *std::max_element(report.per_axis.begin(), report.per_axis.end());
  return report;
}

namespace {

BigInt factorial(std::uint64_t n) {
  BigInt out;
  mpz_fac_ui(out.backend().data(), static_cast<unsigned long>(n));
  return out;
}

Real log10_of(const BigRational& q) {
  return log10(Real(mp::numerator(q))) - log10(Real(mp::denominator(q)));
}

const Real& pad() {
  static const Real value("1e-60");
  return value;
}

}  // namespace

HugeInt paper_radius(const BigInt& B, const BigRational& L, std::uint64_t cap) {
  if (B < 1) fail(ErrorKind::invalid_input, "short-curve bound B must be at least 1");
  if (!(L > 0)) fail(ErrorKind::invalid_input, "L must be positive");
  if (B <= cap) {
    const BigInt I = factorial(B.convert_to<std::uint64_t>()) + 2;
    const BigInt scaled = ceil_div(BigRational(I) * L);
    return HugeInt::exact(std::max(I, scaled));
  }
  // log10(B!) from the log-gamma function; B! + 2 and the rounding up move
  // the logarithm by far less than the padding.
  Real log10_I = lgamma(Real(B) + 1) / log(Real(10));
  if (L > 1) log10_I += log10_of(L);
  const Real slack = pad() * (1 + abs(log10_I));
  return HugeInt::from_log10(log10_I - slack, log10_I + slack);
}

HugeInt power_bound(const HugeInt& R, const BigRational& b, const BigRational& l_min) {
  if (!(l_min > 0)) fail(ErrorKind::invalid_input, "l_min must be positive");
  if (b < 0) fail(ErrorKind::invalid_input, "b must be nonnegative");
  if (R.is_materialized()) {
    const BigRational x = (2 * BigRational(R.value()) + 12 * b) / l_min;
    return HugeInt::exact(floor_div(x) + 1);
  }
  // N lies in [2R / l_min, (2R + 12b) / l_min + 1] and R is astronomically
  // larger than b and 1.
  const Real base = log10(Real(2)) - log10_of(l_min);
  const Real lo = R.log10_lo() + base;
  const Real hi = R.log10_hi() + base;
  const Real slack = pad() * (1 + abs(hi));
  return HugeInt::from_log10(lo - slack, hi + slack);
}

BigInt power_bound(double R, double b, double l_min) {
  if (!(R >= 0.0)) fail(ErrorKind::invalid_input, "R must be nonnegative");
  if (!(l_min > 0.0)) fail(ErrorKind::invalid_input, "l_min must be positive");
  if (!(b >= 0.0)) fail(ErrorKind::invalid_input, "b must be nonnegative");
  const BigRational x =
      (2 * exact_rational(R) + 12 * exact_rational(b)) / exact_rational(l_min);
  return floor_div(x) + 1;
}

PaperConstants paper_constants(const std::vector<mcg::MappingClass>& generators, double b,
                               double l_min) {
  require_generators(generators);
  double L = 0.0;
  double D_max = 0.0;
  for (std::size_t i = 0; i < generators.size(); ++i) {
    L = std::max(L, mcg::translation_distance(generators[i]));
    for (std::size_t j = i + 1; j < generators.size(); ++j) {
      D_max = std::max(D_max, projection::pair_geometry(generators[i], generators[j]).D);
    }
  }
  return paper_constants(generators, b, l_min, torus::derive_thick_params(L),
                         projection::derive_morse(2.0, D_max));
}

PaperConstants paper_constants(const std::vector<mcg::MappingClass>& generators, double b,
                               double l_min, const torus::ThickParams& thick, double M) {
  require_generators(generators);
  PaperConstants pc;
  for (std::size_t i = 0; i < generators.size(); ++i) {
    pc.L = std::max(pc.L, mcg::translation_distance(generators[i]));
    for (std::size_t j = i + 1; j < generators.size(); ++j) {
      pc.D_max = std::max(pc.D_max, projection::pair_geometry(generators[i], generators[j]).D);
    }
  }
  if (std::abs(thick.L - pc.L) > 1e-12) {
    fail(ErrorKind::invalid_input, "thick-part parameters were derived for L = " +
                                       format_g17(thick.L) + ", not " + format_g17(pc.L));
  }
  pc.M = M;
  pc.thick = thick;
  // Round every floating input up (or l_min down) by one ulp before the exact
  // arithmetic, so the integers bound the values they stand for.
  const double up = HUGE_VAL;
  const Real exponent = 2 * (Real(std::nextafter(pc.M, up)) + Real(std::nextafter(pc.L, up)));
  pc.short_radius = exp(exponent) * Real(std::nextafter(thick.F, up)) * (1 + Real("1e-40"));
  pc.B = torus::short_curve_bound(thick, pc.short_radius);
  pc.R_paper = paper_radius(pc.B, exact_rational(std::nextafter(pc.L, up)));
  pc.N_paper = power_bound(pc.R_paper, exact_rational(std::nextafter(b, up)),
                           exact_rational(std::nextafter(l_min, 0.0)));
  return pc;
}

std::string_view to_string(Mode mode) {
  return mode == Mode::paper_formula ? "paper" : "certified";
}

Mode parse_mode(std::string_view text) {
  if (text == "paper") return Mode::paper_formula;
  if (text == "certified") return Mode::certified_search;
  fail(ErrorKind::invalid_input, "unknown mode '" + std::string(text) + "'");
}

namespace {

constexpr double kTwoPi = 6.283185307179586;

// Closed arc of the circle at infinity, as angles under x -> 2 atan(x).
struct Arc {
  double start = 0.0;
  double length = 0.0;
};

double angle_of(const BoundaryPoint& p) {
  const double a = p.is_infinite() ? kTwoPi / 2 : 2.0 * std::atan(p.value());
  return a < 0.0 ? a + kTwoPi : a;
}

double ccw(double from, double to) {
  const double d = std::fmod(to - from, kTwoPi);
  return d < 0.0 ? d + kTwoPi : d;
}

// Pi(c, S) is the half-plane beyond the perpendicular to c at c(S): in the
// normalized picture |z| >= e^{2S}, and |z| <= e^{-2S} for the minus set.
Arc arc_of(const Geodesic& axis, double S, Sign sign) {
  const hyp2::Mobius back = axis.normalizer().inverse();
  const double r = std::exp(sign == Sign::plus ? 2.0 * S : -2.0 * S);
  const double a1 = angle_of(apply(back, BoundaryPoint::at(-r)));
  const double a2 = angle_of(apply(back, BoundaryPoint::at(r)));
  const double inside =
      angle_of(sign == Sign::plus ? axis.endpoint_pos() : axis.endpoint_neg());
  const double forward = ccw(a1, a2);
  if (ccw(a1, inside) <= forward) return {a1, forward};
  return {a2, kTwoPi - forward};
}

// Smallest angular gap between two closed arcs; negative when they meet.
double arc_gap(const Arc& a, const Arc& b) {
  const double ab = ccw(a.start, b.start);
  const double ba = ccw(b.start, a.start);
  if (ab <= a.length || ba <= b.length) return -1.0;
  return std::min(ab - a.length, ba - b.length);
}

template <class R>
struct HighAxis {
  R repelling;
  R attracting;
};

template <class R>
HighAxis<R> high_axis(const mcg::MappingClass& m) {
  const BigInt t = m.trace();
  const R root = sqrt(R(t * t - 4));
  const R amd = R(m.a() - m.d());
  const R product = -R(m.b()) / R(m.c());
  R plus;
  R minus;
  if (amd >= 0) {
    plus = (amd + root) / (2 * R(m.c()));
    minus = product / plus;
  } else {
    minus = (amd - root) / (2 * R(m.c()));
    plus = product / minus;
  }
  if (t > 0) return {minus, plus};
  return {plus, minus};
}

// Projection parameter onto the axis with origin at the summit, which is
// equidistant from both endpoints: t = 1/4 log(|z - rep|^2 / |z - att|^2).
template <class R>
R high_parameter(const HighAxis<R>& axis, const R& x, const R& y) {
  const R y2 = y * y;
  const R to_rep = (x - axis.repelling) * (x - axis.repelling) + y2;
  const R to_att = (x - axis.attracting) * (x - axis.attracting) + y2;
  return (log(to_rep) - log(to_att)) / 4;
}

struct EmpiricalResult {
  std::uint64_t tested = 0;
  std::optional<Point> witness;
  double worst_margin = std::numeric_limits<double>::infinity();
};

// For every sample outside the opposite set, apply `power` and check the
// image lands in the target set: forward means t > -S implies t' >= S.
template <class R>
EmpiricalResult run_empirical(const mcg::MappingClass& generator, const mcg::MappingClass& power,
                              bool forward, double S, const std::vector<Point>& samples,
                              unsigned threads) {
  const HighAxis<R> axis = high_axis<R>(generator);
  const R a(power.a()), b(power.b()), c(power.c()), d(power.d());
  const R s_value(S);
  std::vector<EmpiricalResult> parts(std::max(1U, threads));
  const std::size_t workers = parts.size();
  const std::size_t chunk = (samples.size() + workers - 1) / workers;
  parallel_for(workers, threads, [&](std::size_t wb, std::size_t we) {
    for (std::size_t w = wb; w < we; ++w) {
      EmpiricalResult& part = parts[w];
      const std::size_t end = std::min(samples.size(), (w + 1) * chunk);
      for (std::size_t k = w * chunk; k < end; ++k) {
        const R x(samples[k].x);
        const R y(samples[k].y);
        const R t = high_parameter(axis, x, y);
        if (forward ? !(t > -s_value) : !(t < s_value)) continue;
        ++part.tested;
        const R dr = c * x + d;
        const R di = c * y;
        const R den = dr * dr + di * di;
        const R wx = ((a * x + b) * dr + a * y * di) / den;
        const R wy = y / den;
        const R t_image = high_parameter(axis, wx, wy);
        const R margin = forward ? R(t_image - s_value) : R(-s_value - t_image);
        const double m = margin.template convert_to<double>();
        part.worst_margin = std::min(part.worst_margin, m);
        if (m < 0.0 && !part.witness) part.witness = samples[k];
      }
    }
  });
  EmpiricalResult total;
  for (const auto& p : parts) {
    total.tested += p.tested;
    total.worst_margin = std::min(total.worst_margin, p.worst_margin);
    if (!total.witness && p.witness) total.witness = p.witness;
  }
  return total;
}

using Real300 = mp::number<mp::mpfr_float_backend<300>>;
using Real1000 = mp::number<mp::mpfr_float_backend<1000>>;

EmpiricalResult empirical(const mcg::MappingClass& generator, const mcg::MappingClass& power,
                          bool forward, double S, const std::vector<Point>& samples,
                          unsigned threads) {
  BigInt largest = 1;
  for (const BigInt* e : {&power.a(), &power.b(), &power.c(), &power.d()}) {
    largest = std::max(largest, BigInt(abs(*e)));
  }
  // Images sit within ~ 1/entries^2 of the attracting point.
  const BigInt needed = 2 * decimal_digits(largest) + 40;
  if (needed <= 100) return run_empirical<Real>(generator, power, forward, S, samples, threads);
  if (needed <= 300) return run_empirical<Real300>(generator, power, forward, S, samples, threads);
  if (needed <= 1000) {
    return run_empirical<Real1000>(generator, power, forward, S, samples, threads);
  }
  fail(ErrorKind::horizon_exceeded,
       "power has " + decimal_digits(largest).str() + "-digit entries; sampled check skipped");
}

[[noreturn]] void invalid(const std::string& check, const std::string& message,
                          const std::string& witness) {
  fail(ErrorKind::certificate_invalid, check + ": " + message, witness);
}

void check_disjointness(const std::vector<Geodesic>& axes, double S,
                        const std::vector<Point>& samples, VerificationReport& report) {
  std::vector<Arc> arcs;
  std::vector<PiSet> sets;
  for (const auto& axis : axes) {
    for (Sign sign : {Sign::plus, Sign::minus}) {
      arcs.push_back(arc_of(axis, S, sign));
      sets.push_back(make_pi_set(axis, S, sign));
    }
  }
  double gap = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < arcs.size(); ++i) {
    for (std::size_t j = i + 1; j < arcs.size(); ++j) {
      const double g = arc_gap(arcs[i], arcs[j]);
      if (!(g > 1e-12)) {
        invalid("disjointness_arcs",
                "Pi sets " + std::to_string(i) + " and " + std::to_string(j) + " meet at infinity",
                "sets " + std::to_string(i) + "," + std::to_string(j));
      }
      gap = std::min(gap, g);
    }
  }
  report.checks.push_back({"disjointness_arcs", true, static_cast<std::uint64_t>(arcs.size()),
                           "2n ideal arcs pairwise disjoint; smallest angular gap " +
                               format_g17(gap)});

  for (const auto& x : samples) {
    int hits = 0;
    for (const auto& set : sets) hits += pi_membership(set, x) ? 1 : 0;
    if (hits > 1) {
      invalid("disjointness_samples", "sample lies in two Pi sets", hyp2::to_string(x));
    }
  }
  report.checks.push_back({"disjointness_samples", true,
                           static_cast<std::uint64_t>(samples.size()),
                           "no sample in two Pi sets at radius S = " + format_g17(S)});
}

}  // namespace

VerificationReport verify_pingpong(const PingPongCertificate& cert, std::size_t sample_budget,
                                   std::uint64_t seed, unsigned threads, const SampleBox& box) {
  require_generators(cert.generators);
  VerificationReport report;
  report.seed = seed;
  report.box = box;
  const std::size_t n = cert.generators.size();
  if (cert.translations.size() != n) fail(ErrorKind::invalid_input, "certificate is inconsistent");

  std::vector<Geodesic> axes;
  for (const auto& g : cert.generators) axes.push_back(mcg::axis(g).axis);
  const auto samples = sample_points(box, sample_budget, seed);

  if (cert.mode == Mode::paper_formula) {
    if (!cert.paper) fail(ErrorKind::invalid_input, "paper-mode certificate lacks its constants");
    const PaperConstants& pc = *cert.paper;
    if (!pc.R_paper.certainly_at_least(cert.R)) {
      invalid("paper_radius_dominates", "R_paper < R_cert", pc.R_paper.to_string());
    }
    report.checks.push_back({"paper_radius_dominates", true, 0,
                             "R_paper has " + pc.R_paper.digits().str() + " digits; R_cert = " +
                                 format_g17(cert.R)});
    report.checks.push_back(
        {"analytic", true, 0,
         "N_paper l_min > 2 R_paper + 12b by the choice of N_paper, and Tr_i >= l_min; N_paper has " +
             pc.N_paper.digits().str() + " digits"});
    // Pi sets shrink as the radius grows, so disjointness at the certified
    // radius carries over to R_paper + 6b.
    check_disjointness(axes, cert.S, samples, report);
    report.checks.push_back({"empirical", true, 0,
                             "skipped: N_paper is too large to exponentiate"});
    report.passed = true;
    return report;
  }

  if (!(cert.S > 0.0) || std::abs(cert.S - (cert.R + 6.0 * cert.b)) > 1e-12 * (1.0 + cert.S)) {
    invalid("analytic", "S must equal R + 6b", format_g17(cert.S));
  }
  std::string analytic_detail;
  for (std::size_t i = 0; i < n; ++i) {
    const double Tr = mcg::translation_distance(cert.generators[i]);
    const double lhs = cert.N.convert_to<double>() * Tr;
    if (!(lhs >= 2.0 * cert.S + 1e-12)) {
      invalid("analytic",
              "N Tr = " + format_g17(lhs) + " < 2S = " + format_g17(2.0 * cert.S) +
                  " for generator " + std::to_string(i),
              "generator " + mcg::to_string(cert.generators[i]));
    }
    if (!analytic_detail.empty()) analytic_detail += "; ";
    analytic_detail += "N Tr_" + std::to_string(i) + " - 2S = " + format_g17(lhs - 2.0 * cert.S);
  }
  report.checks.push_back({"analytic", true, static_cast<std::uint64_t>(n), analytic_detail});

  check_disjointness(axes, cert.S, samples, report);

  if (cert.N > std::numeric_limits<std::uint32_t>::max()) {
    fail(ErrorKind::horizon_exceeded, "N = " + cert.N.str() + " is too large to exponentiate");
  }
  const auto N = cert.N.convert_to<std::uint64_t>();
  for (std::size_t i = 0; i < n; ++i) {
    const mcg::MappingClass forward = cert.generators[i].pow(N);
    const mcg::MappingClass backward = forward.inverse();
    for (bool dir : {true, false}) {
      const EmpiricalResult r =
          empirical(cert.generators[i], dir ? forward : backward, dir, cert.S, samples, threads);
      const std::string name = std::string("empirical_") + (dir ? "forward_" : "backward_") +
                               std::to_string(i);
      if (r.witness) {
        invalid(name, "image of a sample misses the target Pi set", hyp2::to_string(*r.witness));
      }
      report.checks.push_back(
          {name, true, r.tested, "smallest parameter margin " + format_g17(r.worst_margin)});
    }
  }
  report.passed = true;
  return report;
}

PingPongCertificate certify(const std::vector<mcg::MappingClass>& generators, double b,
                            const CertificateOptions& options) {
  require_generators(generators);
  PingPongCertificate cert;
  cert.generators = generators;
  cert.mode = options.mode;
  cert.b = b;
  cert.per_input_l_min = options.per_input_l_min;
  for (const auto& g : generators) cert.translations.push_back(mcg::translation_distance(g));
  cert.l_min = options.per_input_l_min
                   ? *std::min_element(cert.translations.begin(), cert.translations.end())
                   : mcg::min_translation();
  cert.radius = certified_radius(generators, b);
  cert.R = cert.radius.R;
  cert.S = cert.R + 6.0 * b;
  cert.N = power_bound(cert.R, b, cert.l_min);
  if (options.mode == Mode::paper_formula) {
    if (options.thick && options.morse) {
      cert.paper = paper_constants(generators, b, cert.l_min, *options.thick, *options.morse);
    } else {
      cert.paper = paper_constants(generators, b, cert.l_min);
    }
  }
  cert.verification = verify_pingpong(cert, options.samples, options.seed, options.threads,
                                      options.box);
  return cert;
}

}  // namespace schottky::pingpong
