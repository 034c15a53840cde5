#include "schottky/projection.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <random>

#include "schottky/errors.hpp"
#include "schottky/numeric.hpp"

namespace schottky::projection {

using hyp2::BoundaryPoint;
using hyp2::Geodesic;
using hyp2::Point;

namespace {

bool same_endpoints(const Geodesic& a, const Geodesic& b) {
  return (a.endpoint_neg() == b.endpoint_neg() && a.endpoint_pos() == b.endpoint_pos()) ||
         (a.endpoint_neg() == b.endpoint_pos() && a.endpoint_pos() == b.endpoint_neg());
}

void require_independent(const mcg::MappingClass& m1, const mcg::MappingClass& m2) {
  if (!mcg::independent(m1, m2)) {
    fail(ErrorKind::not_independent,
         "matrices " + mcg::to_string(m1) + " and " + mcg::to_string(m2) + " share an axis");
  }
}

std::size_t sample_count(double lo, double hi, double step) {
  if (!(step > 0.0) || !std::isfinite(lo) || !std::isfinite(hi) || hi < lo) {
    fail(ErrorKind::invalid_input, "sample range needs lo <= hi and step > 0");
  }
  return static_cast<std::size_t>(std::floor((hi - lo) / step + 1e-9)) + 1;
}

struct CenteredPair {
  PairGeometry geometry;
  Geodesic c1;
  Geodesic c2;
};

CenteredPair centered_pair(const mcg::MappingClass& m1, const mcg::MappingClass& m2) {
  require_independent(m1, m2);
  const Geodesic a1 = mcg::axis(m1).axis;
  const Geodesic a2 = mcg::axis(m2).axis;
  const PairGeometry g = pair_geometry(a1, a2);
  return {g, Geodesic(a1.endpoint_neg(), a1.endpoint_pos(), g.O),
          Geodesic(a2.endpoint_neg(), a2.endpoint_pos(), g.O_prime)};
}

}  // namespace

PairGeometry pair_geometry(const Geodesic& c1, const Geodesic& c2) {
  if (same_endpoints(c1, c2)) fail(ErrorKind::degenerate_input, "the two geodesics coincide");
  const BoundaryPoint u = apply(c1.normalizer(), c2.endpoint_neg());
  const BoundaryPoint v = apply(c1.normalizer(), c2.endpoint_pos());
  if (u.is_infinite() || v.is_infinite() || u.value() == 0.0 || v.value() == 0.0) {
    fail(ErrorKind::degenerate_input, "the two geodesics share an endpoint");
  }
  // With c1 = (0, inf), the circle |z| = sqrt|uv| meets c2 orthogonally when
  // the endpoints have the same sign and passes through the crossing otherwise,
  // so it carries the nearest-point pair in both cases.
  const double product = u.value() * v.value();
  PairGeometry g;
  g.crossing = product < 0.0;
  g.t_O = 0.25 * std::log(std::abs(product));
  g.O = hyp2::point_at(c1, g.t_O);
  const hyp2::Projection foot = hyp2::project(c2, g.O);
  g.s_O = foot.t;
  if (g.crossing) {
    g.O_prime = g.O;
    g.D = 0.0;
  } else {
    g.O_prime = foot.foot;
    g.D = hyp2::dist(g.O, g.O_prime);
  }
  return g;
}

PairGeometry pair_geometry(const mcg::MappingClass& m1, const mcg::MappingClass& m2) {
  require_independent(m1, m2);
  return pair_geometry(mcg::axis(m1).axis, mcg::axis(m2).axis);
}

std::pair<double, double> projection_interval(const Geodesic& target, const Geodesic& source) {
  if (same_endpoints(target, source)) {
    fail(ErrorKind::degenerate_input, "projection interval of a geodesic onto itself");
  }
  const double a = hyp2::project_ideal(target, source.endpoint_neg());
  const double b = hyp2::project_ideal(target, source.endpoint_pos());
  return {std::min(a, b), std::max(a, b)};
}

double ball_projection_diameter(const Geodesic& c, const Point& x) {
  const Point w = apply(c.normalizer(), x);
  // The ball reaching the axis (0, inf) is the Euclidean disc with centre
  // (w.x, |w|) and radius |w.x|; the projection parameter is 1/2 log|z|.
  const double modulus = std::hypot(w.x, w.y);
  const double center = std::hypot(w.x, modulus);
  return std::log((center + std::abs(w.x)) / modulus);
}

double derive_contraction_b() {
  const Geodesic axis(BoundaryPoint::at(0.0), BoundaryPoint::infinity(), Point{0.0, 1.0});
  constexpr int kSamples = 4000;
  constexpr double kHalfPi = 1.5707963267948966;
  double best = 0.0;
  auto at = [&](double theta) {
    return ball_projection_diameter(axis, Point{std::cos(theta), std::sin(theta)});
  };
  for (int k = 1; k <= kSamples; ++k) best = std::max(best, at(kHalfPi * k / kSamples));
  // The diameter keeps growing toward the boundary; probe it directly.
  for (double theta = 1e-3; theta >= 1e-9; theta /= 10.0) best = std::max(best, at(theta));
  if (!std::isfinite(best) || !(best > 0.0)) {
    fail(ErrorKind::constant_derivation, "contraction maximisation produced no finite value");
  }
  return 1.05 * best;
}

double thin_triangle_delta() { return 0.5 * std::asinh(1.0); }

double derive_morse(double K, double kappa) {
  if (!std::isfinite(K) || !std::isfinite(kappa) || K < 1.0 || kappa < 0.0) {
    fail(ErrorKind::invalid_input, "Morse constant needs K >= 1 and kappa >= 0");
  }
  if (K == 1.0 && kappa == 0.0) return 0.0;
  // Work in curvature -1 units, where the additive constant doubles. Sample
  // the path every tau, join the samples by geodesics of length <= J, and
  // bound the excursion beyond distance r from the geodesic by comparing
  // its length with the contracted projection: an excursion of m steps
  // satisfies m (tau/K - J/cosh r) <= 2r + k + J + 2J/cosh r + tau/K.
  const double k = 2.0 * kappa;
  constexpr int kRadii = 320;
  constexpr int kSteps = 320;
  double best = std::numeric_limits<double>::infinity();
  for (int i = 0; i < kRadii; ++i) {
    const double r = 1e-2 * std::pow(4e3, static_cast<double>(i) / (kRadii - 1));
    const double c = std::cosh(r);
    for (int j = 0; j < kSteps; ++j) {
      const double tau = 1e-4 * std::pow(1e8, static_cast<double>(j) / (kSteps - 1));
      const double J = K * tau + k;
      const double gap = tau / K - J / c;
      if (!(gap > 0.0)) continue;
      const double m_max = (2.0 * r + k + J + 2.0 * J / c + tau / K) / gap;
      const double H = r + (m_max + 2.0) * J / 2.0 + K * tau / 2.0 + k;
      best = std::min(best, H);
    }
  }
  if (!std::isfinite(best)) {
    fail(ErrorKind::constant_derivation, "no admissible parameters for the Morse bound");
  }
  return 0.5 * best;
}

const ModelConstants& model_constants() {
  static const ModelConstants constants = [] {
    ModelConstants c;
    c.b = derive_contraction_b();
    c.delta = thin_triangle_delta();
    for (const auto& [K, kappa] : {std::pair{1.0, 0.0}, std::pair{2.0, 0.0}, std::pair{2.0, 1.0},
                                   std::pair{2.0, 2.0}}) {
      c.morse_table.emplace_back(K, kappa, derive_morse(K, kappa));
    }
    return c;
  }();
  return constants;
}

std::vector<ProfileRow> divergence_profile(const mcg::MappingClass& m1,
                                           const mcg::MappingClass& m2, double t_min,
                                           double t_max, double step, unsigned threads) {
  const std::size_t n = sample_count(t_min, t_max, step);
  const CenteredPair pair = centered_pair(m1, m2);
  std::vector<ProfileRow> rows(n);
  parallel_for(n, threads, [&](std::size_t begin, std::size_t end) {
    for (std::size_t i = begin; i < end; ++i) {
      const double t = t_min + static_cast<double>(i) * step;
      const Point x = hyp2::point_at(pair.c1, t);
      // s -> d(x, c2(s)) is strictly convex with its minimum at the foot of
      // the perpendicular, so the minimiser is the projection parameter.
      const hyp2::Projection foot = hyp2::project(pair.c2, x);
      rows[i] = {t, foot.t, hyp2::dist(x, foot.foot)};
    }
  });
  return rows;
}

std::string profile_csv(const std::vector<ProfileRow>& rows) {
  std::string out = "t,s_star,d_min\n";
  for (const auto& r : rows) {
    out += format_g12(r.t) + "," + format_g12(r.s_star) + "," + format_g12(r.d_min) + "\n";
  }
  return out;
}

double properness_threshold(const mcg::MappingClass& m1, const mcg::MappingClass& m2,
                            double delta, double horizon, double step, unsigned threads) {
  if (!(delta > 0.0)) fail(ErrorKind::invalid_input, "properness level must be positive");
  const auto rows = divergence_profile(m1, m2, -horizon, horizon, step, threads);
  double last_below = -1.0;
  for (const auto& r : rows) {
    if (r.d_min < delta) last_below = std::max(last_below, std::abs(r.t));
  }
  if (last_below < 0.0) return 0.0;
  if (last_below >= horizon - step) {
    fail(ErrorKind::horizon_exceeded, "distance stays below " + format_g17(delta) +
                                          " out to |t| = " + format_g17(horizon));
  }
  return last_below + step;
}

Thresholds fast_divergence_thresholds(const mcg::MappingClass& m1, const mcg::MappingClass& m2,
                                      const ThresholdOptions& options, unsigned threads) {
  if (!(options.margin >= 0.0)) fail(ErrorKind::invalid_input, "margin must be nonnegative");
  const std::size_t n = sample_count(0.0, options.horizon, options.step);
  const CenteredPair pair = centered_pair(m1, m2);

  Thresholds out;
  out.t_O = pair.geometry.t_O;
  out.s_O = pair.geometry.s_O;
  out.step = options.step;
  out.horizon = options.horizon;
  out.margin = options.margin;

  double reach[2] = {0.0, 0.0};
  for (int side = 0; side < 2; ++side) {
    const double sign = side == 0 ? 1.0 : -1.0;
    std::vector<Point> xs(n);
    std::vector<Point> ys(n);
    for (std::size_t i = 0; i < n; ++i) {
      const double u = static_cast<double>(i) * options.step;
      xs[i] = hyp2::point_at(pair.c1, sign * u);
      ys[i] = hyp2::point_at(pair.c2, sign * u);
    }
    std::vector<double> row_reach(n, -1.0);
    std::vector<std::uint64_t> row_violations(n, 0);
    parallel_for(n, threads, [&](std::size_t begin, std::size_t end) {
      for (std::size_t i = begin; i < end; ++i) {
        const double u = static_cast<double>(i) * options.step;
        for (std::size_t j = 0; j < n; ++j) {
          const double v = static_cast<double>(j) * options.step;
          if (hyp2::dist(xs[i], ys[j]) <= std::max(u, v)) {
            ++row_violations[i];
            row_reach[i] = std::max(row_reach[i], std::min(u, v));
          }
        }
      }
    });
    double worst = -1.0;
    for (std::size_t i = 0; i < n; ++i) {
      worst = std::max(worst, row_reach[i]);
      out.grid_violations += row_violations[i];
    }
    out.grid_pairs += static_cast<std::uint64_t>(n) * n;
    reach[side] = (std::max(worst, 0.0) + options.step) * (1.0 + options.margin);
    if (reach[side] >= 0.5 * options.horizon) {
      fail(ErrorKind::horizon_exceeded,
           "fast-divergence threshold " + format_g17(reach[side]) +
               " reaches half the horizon " + format_g17(options.horizon));
    }
  }
  out.P_plus = out.t_O + reach[0];
  out.P_minus = out.t_O - reach[1];
  out.Q_plus = out.s_O + reach[0];
  out.Q_minus = out.s_O - reach[1];

  // Off-grid spot check beyond the thresholds.
  std::mt19937_64 rng(options.seed);
  for (int side = 0; side < 2; ++side) {
    const double sign = side == 0 ? 1.0 : -1.0;
    auto offset = [&] { return reach[side] + (options.horizon - reach[side]) * unit_uniform(rng); };
    const std::size_t count =
        options.validation_samples / 2 + (side == 0 ? options.validation_samples % 2 : 0);
    for (std::size_t k = 0; k < count; ++k) {
      const double u = offset();
      const double v = offset();
      const double d =
          hyp2::dist(hyp2::point_at(pair.c1, sign * u), hyp2::point_at(pair.c2, sign * v));
      ++out.validation_pairs;
      if (d <= std::max(u, v)) ++out.validation_violations;
    }
  }
  return out;
}

}  // namespace schottky::projection
