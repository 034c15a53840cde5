#pragma once

// Reference computations that share no code with the library. They favour
// obviously-correct formulas and brute force over speed.

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstdint>
#include <functional>
#include <numbers>
#include <numeric>
#include <random>
#include <set>
#include <utility>
#include <vector>

#include "schottky/mcg.hpp"

namespace oracle_ref {

using cplx = std::complex<double>;

// Model distance through the cosh form, half the hyperbolic distance.
inline double dist(cplx z, cplx w) {
  const double arg = 1.0 + std::norm(z - w) / (2.0 * z.imag() * w.imag());
  return 0.5 * std::acosh(arg);
}

inline double golden_min(const std::function<double(double)>& f, double lo, double hi,
                         int iterations = 200) {
  const double g = (std::sqrt(5.0) - 1.0) / 2.0;
  double a = lo, b = hi;
  double x1 = b - g * (b - a), x2 = a + g * (b - a);
  double f1 = f(x1), f2 = f(x2);
  for (int i = 0; i < iterations && b - a > 1e-15 * (1.0 + std::abs(a) + std::abs(b)); ++i) {
    if (f1 <= f2) {
      b = x2;
      x2 = x1;
      f2 = f1;
      x1 = b - g * (b - a);
      f1 = f(x1);
    } else {
      a = x1;
      x1 = x2;
      f1 = f2;
      x2 = a + g * (b - a);
      f2 = f(x2);
    }
  }
  return std::min(f1, f2);
}

// Dense grid followed by golden refinement around the best grid cell.
inline double grid_min(const std::function<double(double)>& f, double lo, double hi,
                       int grid = 400) {
  int best = 0;
  double best_value = f(lo);
  for (int i = 1; i <= grid; ++i) {
    const double v = f(lo + (hi - lo) * i / grid);
    if (v < best_value) {
      best_value = v;
      best = i;
    }
  }
  const double a = lo + (hi - lo) * std::max(best - 1, 0) / grid;
  const double b = lo + (hi - lo) * std::min(best + 1, grid) / grid;
  return std::min(best_value, golden_min(f, a, b));
}

// Point on the semicircle over [a, b] at angle theta in (0, pi).
inline cplx on_semicircle(double a, double b, double theta) {
  const double c = 0.5 * (a + b), r = 0.5 * (b - a);
  return {c + r * std::cos(theta), r * std::sin(theta)};
}

// Distance from z to the semicircle geodesic over [a, b], by direct search.
inline double dist_to_semicircle(cplx z, double a, double b) {
  return grid_min([&](double th) { return dist(z, on_semicircle(a, b, th)); }, 1e-9,
                  std::numbers::pi - 1e-9, 600);
}

// Distance between two semicircle geodesics by nested search. The outer
// variable is the log of the tangent of half the angle, which spreads the
// ends of the circle out.
inline double dist_between_semicircles(double a1, double b1, double a2, double b2) {
  auto angle = [](double u) { return 2.0 * std::atan(std::exp(u)); };
  return grid_min(
      [&](double u) { return dist_to_semicircle(on_semicircle(a1, b1, angle(u)), a2, b2); }, -25.0,
      25.0, 400);
}

// Axis (0, inf) against the semicircle over [p, q] with 0 < p < q.
inline double perpendicular_length(double p, double q) {
  return 0.5 * std::acosh((q + p) / (q - p));
}

// Projection parameter onto the axis (0, inf) with origin i.
inline double vertical_parameter(cplx z) { return 0.5 * std::log(std::abs(z)); }

// Spread of vertical_parameter over the model ball B(x, r), from the
// boundary circle: a hyperbolic circle of radius 2r about x is the Euclidean
// circle centred at (x, y cosh 2r) of radius y sinh 2r.
inline double vertical_ball_spread(cplx x, double r) {
  if (r <= 0.0) return 0.0;
  const cplx centre{x.real(), x.imag() * std::cosh(2.0 * r)};
  const double rad = x.imag() * std::sinh(2.0 * r);
  auto at = [&](double th) { return centre + rad * cplx{std::cos(th), std::sin(th)}; };
  const double two_pi = 2.0 * std::numbers::pi;
  const double lo = grid_min([&](double th) { return vertical_parameter(at(th)); }, 0.0, two_pi,
                             4000);
  const double hi = -grid_min([&](double th) { return -vertical_parameter(at(th)); }, 0.0, two_pi,
                              4000);
  return hi - lo;
}

// Primitive lattice vectors p + q tau, one per +- pair, of flat length <= R.
inline std::vector<std::pair<std::int64_t, std::int64_t>> lattice_short(cplx tau, double R) {
  std::vector<std::pair<std::int64_t, std::int64_t>> out;
  const double y = tau.imag();
  const auto qmax = static_cast<std::int64_t>(std::ceil(R / std::sqrt(y))) + 1;
  const auto pmax =
      static_cast<std::int64_t>(std::ceil(R * std::sqrt(y) + qmax * std::abs(tau.real()))) + 1;
  for (std::int64_t q = 0; q <= qmax; ++q) {
    for (std::int64_t p = -pmax; p <= pmax; ++p) {
      if (q == 0 && p <= 0) continue;
      if (std::gcd(p, q) != 1) continue;
      const double len = std::abs(cplx(static_cast<double>(p)) + static_cast<double>(q) * tau) /
                         std::sqrt(y);
      if (len <= R * (1.0 + 1e-12)) out.emplace_back(p, q);
    }
  }
  return out;
}

// Largest ratio of extremal lengths by brute force over a box of slopes.
inline double kerckhoff_box(cplx t1, cplx t2, std::int64_t n) {
  double best = 1.0;
  for (std::int64_t q = 0; q <= n; ++q) {
    for (std::int64_t p = -n; p <= n; ++p) {
      if (q == 0 && p <= 0) continue;
      const cplx v1 = static_cast<double>(p) + static_cast<double>(q) * t1;
      const cplx v2 = static_cast<double>(p) + static_cast<double>(q) * t2;
      const double r = (std::norm(v2) / t2.imag()) / (std::norm(v1) / t1.imag());
      best = std::max(best, r);
    }
  }
  return 0.5 * std::log(best);
}

// Long-double roots of c x^2 + (d - a) x - b = 0, ascending.
inline std::pair<long double, long double> fixed_points(long double a, long double b,
                                                        long double c, long double d) {
  const long double B = d - a;
  const long double disc = std::sqrt(B * B + 4.0L * b * c);
  const long double r1 = (-B - disc) / (2.0L * c);
  const long double r2 = (-B + disc) / (2.0L * c);
  return {std::min(r1, r2), std::max(r1, r2)};
}

// Random SL(2,Z) elements as words in [[1,k],[0,1]] and [[1,0],[k,1]].
inline schottky::mcg::MappingClass random_element(std::mt19937_64& rng, int letters = 4,
                                                  int kmax = 3) {
  using schottky::mcg::MappingClass;
  std::uniform_int_distribution<int> pick(-kmax, kmax);
  MappingClass m = MappingClass::identity();
  for (int i = 0; i < letters; ++i) {
    int k = pick(rng);
    if (k == 0) k = 1;
    const MappingClass g = (i % 2 == 0) ? MappingClass(1, k, 0, 1) : MappingClass(1, 0, k, 1);
    m = m * g;
  }
  return m;
}

inline schottky::mcg::MappingClass random_pseudo_anosov(std::mt19937_64& rng, long max_trace) {
  for (;;) {
    const auto m = random_element(rng);
    const schottky::BigInt t = abs(m.trace());
    if (t > 2 && t <= max_trace) return m;
  }
}

// True when the commutator is +-identity; for pseudo-Anosovs this is the
// same as sharing an axis.
inline bool commute_projectively(const schottky::mcg::MappingClass& x,
                                 const schottky::mcg::MappingClass& y) {
  return (x * y * x.inverse() * y.inverse()).is_identity();
}

}  // namespace oracle_ref
