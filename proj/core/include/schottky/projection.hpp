#pragma once

#include <cstdint>
#include <string>
#include <tuple>
#include <utility>
#include <vector>

#include "schottky/hyp2.hpp"
#include "schottky/mcg.hpp"

namespace schottky::projection {

/// Nearest-point data for two axes. t_O and s_O are parameters on the axes as
/// returned by mcg::axis (origin at the summit).
struct PairGeometry {
  double D = 0.0;
  hyp2::Point O;
  hyp2::Point O_prime;
  double t_O = 0.0;
  double s_O = 0.0;
  bool crossing = false;
};

PairGeometry pair_geometry(const hyp2::Geodesic& c1, const hyp2::Geodesic& c2);
/// Throws not_independent when the two classes share an axis.
PairGeometry pair_geometry(const mcg::MappingClass& m1, const mcg::MappingClass& m2);

/// Parameters on `target` of the feet of both ideal endpoints of `source`,
/// sorted. Throws degenerate_input when the geodesics share an endpoint.
std::pair<double, double> projection_interval(const hyp2::Geodesic& target,
                                              const hyp2::Geodesic& source);

/// Diameter of the projection to c of the closed ball around x that reaches c.
double ball_projection_diameter(const hyp2::Geodesic& c, const hyp2::Point& x);

/// Numeric sup of ball_projection_diameter over x = e^{i theta} against the
/// axis (0, inf), times 1.05.
double derive_contraction_b();

/// Thin-triangle constant of the model plane: every side of a geodesic
/// triangle lies in the delta-neighbourhood of the other two.
double thin_triangle_delta();

/// Distance bound, in model units, between a (K, kappa)-quasi-geodesic segment
/// and the geodesic with the same endpoints. Zero for (1, 0); otherwise the
/// best value on a fixed grid of a closed-form excursion bound, so the result
/// is monotone in both arguments. Throws invalid_input for K < 1 or kappa < 0.
double derive_morse(double K, double kappa);

struct ModelConstants {
  double b = 0.0;
  double delta = 0.0;
  // (K, kappa, M) for the standard entries; other pairs go through derive_morse.
  std::vector<std::tuple<double, double, double>> morse_table;
};

/// Computed once per process; later calls return the cached value.
const ModelConstants& model_constants();

/// Row of a divergence profile. Both parameters are measured from the
/// nearest-point pair: t = 0 at O on the first axis, s = 0 at O' on the second.
struct ProfileRow {
  double t = 0.0;
  double s_star = 0.0;
  double d_min = 0.0;
};

/// Samples t = t_min + k * step for k = 0 .. floor((t_max - t_min) / step).
std::vector<ProfileRow> divergence_profile(const mcg::MappingClass& m1,
                                           const mcg::MappingClass& m2, double t_min,
                                           double t_max, double step, unsigned threads = 1);

/// CSV with header "t,s_star,d_min" and 12 significant digits.
std::string profile_csv(const std::vector<ProfileRow>& rows);

/// Smallest sampled T with d_min >= delta at every sampled |t| >= T within
/// [-horizon, horizon]. Throws horizon_exceeded if the last samples still
/// fall below delta.
double properness_threshold(const mcg::MappingClass& m1, const mcg::MappingClass& m2,
                            double delta, double horizon = 40.0, double step = 0.01,
                            unsigned threads = 1);

struct ThresholdOptions {
  double step = 0.01;
  double horizon = 20.0;
  double margin = 0.10;
  std::size_t validation_samples = 10000;
  std::uint64_t seed = 0;
};

/// P and Q are axis parameters; t_O and s_O are repeated for reference.
struct Thresholds {
  double P_plus = 0.0;
  double P_minus = 0.0;
  double Q_plus = 0.0;
  double Q_minus = 0.0;
  double t_O = 0.0;
  double s_O = 0.0;
  double step = 0.0;
  double horizon = 0.0;
  double margin = 0.0;
  std::uint64_t grid_pairs = 0;
  std::uint64_t grid_violations = 0;      // all of them sit inside the thresholds
  std::uint64_t validation_pairs = 0;     // off-grid pairs beyond the thresholds
  std::uint64_t validation_violations = 0;
};

/// Grid certification of d(x, y) > max(d(O, x), d(O', y)) for x, y beyond the
/// thresholds on the same side. On each side, T is one step past the largest
/// min(d(O, x), d(O', y)) over grid violations, and the threshold sits at
/// T * (1 + margin) from O or O'. Throws horizon_exceeded when that reaches
/// half the horizon.
Thresholds fast_divergence_thresholds(const mcg::MappingClass& m1, const mcg::MappingClass& m2,
                                      const ThresholdOptions& options = {},
                                      unsigned threads = 1);

}  // namespace schottky::projection
