#include "schottky/torus.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <map>
#include <numeric>
#include <tuple>

#include "schottky/errors.hpp"

namespace schottky::torus {

namespace {

std::complex<double> lattice_vector(std::int64_t p, std::int64_t q, const hyp2::Point& tau) {
  return {static_cast<double>(p) + static_cast<double>(q) * tau.x,
          static_cast<double>(q) * tau.y};
}

void require_canonical(const Slope& s) {
  if (!is_canonical(s.p, s.q)) {
    fail(ErrorKind::invalid_input, "slope " + to_string(s) + " is not canonical");
  }
}

// Golden-section search for the minimum of a unimodal function on [lo, hi].
template <class F>
double golden_min(F&& f, double lo, double hi, double tol) {
  constexpr double inv_phi = 0.6180339887498949;
  double x1 = hi - inv_phi * (hi - lo);
  double x2 = lo + inv_phi * (hi - lo);
  double f1 = f(x1);
  double f2 = f(x2);
  while (hi - lo > tol) {
    if (f1 <= f2) {
      hi = x2;
      x2 = x1;
      f2 = f1;
      x1 = hi - inv_phi * (hi - lo);
      f1 = f(x1);
    } else {
      lo = x1;
      x1 = x2;
      f1 = f2;
      x2 = lo + inv_phi * (hi - lo);
      f2 = f(x2);
    }
  }
  return std::min(f1, f2);
}

}  // namespace

double curve_length(const Slope& s, const hyp2::Point& tau) {
  require_canonical(s);
  hyp2::validate(tau);
  return std::abs(lattice_vector(s.p, s.q, tau)) / std::sqrt(tau.y);
}

double extremal_length(const Slope& s, const hyp2::Point& tau) {
  const double l = curve_length(s, tau);
  return l * l;
}

double teich_dist(const hyp2::Point& tau1, const hyp2::Point& tau2) {
  return hyp2::dist(tau1, tau2);
}

double kerckhoff_dist(const hyp2::Point& tau1, const hyp2::Point& tau2, std::int64_t farey_depth,
                      unsigned threads) {
  hyp2::validate(tau1);
  hyp2::validate(tau2);
  if (farey_depth < 1) fail(ErrorKind::invalid_input, "farey depth must be at least 1");
  // The ratio is invariant under scaling (p, q), so imprimitive pairs repeat
  // values already seen and need no gcd filter.
  const double scale = tau1.y / tau2.y;
  auto ratio = [&](std::int64_t p, std::int64_t q) {
    return std::norm(lattice_vector(p, q, tau2)) / std::norm(lattice_vector(p, q, tau1)) * scale;
  };
  const auto rows = static_cast<std::size_t>(farey_depth);
  std::vector<double> row_max(rows + 1, 0.0);
  row_max[0] = ratio(1, 0);
  parallel_for(rows, threads, [&](std::size_t begin, std::size_t end) {
    for (std::size_t i = begin; i < end; ++i) {
      const auto q = static_cast<std::int64_t>(i + 1);
      double best = 0.0;
      for (std::int64_t p = -farey_depth; p <= farey_depth; ++p) best = std::max(best, ratio(p, q));
      row_max[i + 1] = best;
    }
  });
  return 0.5 * std::log(*std::max_element(row_max.begin(), row_max.end()));
}

double wolpert_check(const hyp2::Point& tau1, const hyp2::Point& tau2,
                     const std::vector<Slope>& slopes) {
  if (slopes.empty()) fail(ErrorKind::invalid_input, "wolpert_check needs at least one slope");
  double best = 0.0;
  for (const auto& s : slopes) best = std::max(best, curve_length(s, tau2) / curve_length(s, tau1));
  return best;
}

std::vector<Slope> short_curves(const hyp2::Point& tau, double R) {
  hyp2::validate(tau);
  if (!(R > 0.0) || !std::isfinite(R)) fail(ErrorKind::invalid_input, "radius must be positive");
  const double bound = R * R * tau.y * (1.0 + 2e-12);
  std::vector<Slope> out;
  if (1.0 <= bound) out.push_back(Slope{1, 0});
  const auto q_max = static_cast<std::int64_t>(std::floor(std::sqrt(bound) / tau.y));
  for (std::int64_t q = 1; q <= q_max; ++q) {
    const double qy = static_cast<double>(q) * tau.y;
    const double room = bound - qy * qy;
    if (room < 0.0) continue;
    const double center = -static_cast<double>(q) * tau.x;
    const double half = std::sqrt(room);
    const auto lo = static_cast<std::int64_t>(std::floor(center - half)) - 1;
    const auto hi = static_cast<std::int64_t>(std::ceil(center + half)) + 1;
    for (std::int64_t p = lo; p <= hi; ++p) {
      if (std::gcd(p, q) != 1) continue;
      if (std::norm(lattice_vector(p, q, tau)) <= bound) out.push_back(Slope{p, q});
    }
  }
  return out;
}

std::int64_t intersection_number(const Slope& s1, const Slope& s2) {
  require_canonical(s1);
  require_canonical(s2);
  return std::abs(s1.p * s2.q - s1.q * s2.p);
}

ReducedBasis reduce(const hyp2::Point& tau) {
  hyp2::validate(tau);
  std::int64_t up = 1, uq = 0, vp = 0, vq = 1;
  auto norm_of = [&](std::int64_t p, std::int64_t q) { return std::norm(lattice_vector(p, q, tau)); };
  for (int iteration = 0; iteration < 10000; ++iteration) {
    if (norm_of(vp, vq) < norm_of(up, uq)) {
      std::swap(up, vp);
      std::swap(uq, vq);
    }
    const auto u = lattice_vector(up, uq, tau);
    const auto v = lattice_vector(vp, vq, tau);
    const double mu = (v.real() * u.real() + v.imag() * u.imag()) / std::norm(u);
    if (std::abs(mu) <= 0.5 + 1e-12) break;
    const auto m = static_cast<std::int64_t>(std::llround(mu));
    vp -= m * up;
    vq -= m * uq;
  }
  ReducedBasis out;
  out.shortest = canonical_slope(up, uq);
  out.second = canonical_slope(vp, vq);
  out.shortest_length = std::sqrt(norm_of(up, uq) / tau.y);
  out.second_length = std::sqrt(norm_of(vp, vq) / tau.y);
  return out;
}

double systole(const hyp2::Point& tau) { return reduce(tau).shortest_length; }

bool is_thick(const hyp2::Point& tau, double epsilon) { return systole(tau) >= epsilon; }

std::pair<Slope, Slope> marking(const hyp2::Point& tau, double F) {
  const ReducedBasis basis = reduce(tau);
  if (basis.second_length > F * (1.0 + 1e-12)) {
    fail(ErrorKind::f_violation,
         "marking at " + hyp2::to_string(tau) + " has length " + format_g17(basis.second_length) +
             " > F = " + format_g17(F),
         hyp2::to_string(tau));
  }
  return {basis.shortest, basis.second};
}

std::vector<mcg::MappingClass> class_representatives(std::int64_t max_trace) {
  using Key = std::tuple<BigInt, BigInt, BigInt, BigInt>;
  auto key = [](const mcg::MappingClass& m) { return Key{m.a(), m.b(), m.c(), m.d()}; };

  std::vector<mcg::MappingClass> all;
  std::map<Key, std::size_t> index;
  for (std::int64_t t = 3; t <= max_trace; ++t) {
    for (std::int64_t c = -t; c <= t; ++c) {
      if (c == 0) continue;
      for (std::int64_t a = -t; a <= t; ++a) {
        const std::int64_t d = t - a;
        if (d < -t || d > t) continue;
        const std::int64_t bc = a * d - 1;
        if (bc % c != 0) continue;
        const std::int64_t b = bc / c;
        if (b < -t || b > t) continue;
        mcg::MappingClass m(a, b, c, d);
        if (index.emplace(key(m), all.size()).second) all.push_back(m);
      }
    }
  }

  std::vector<std::size_t> parent(all.size());
  std::iota(parent.begin(), parent.end(), std::size_t{0});
  auto find = [&](std::size_t i) {
    while (parent[i] != i) i = parent[i] = parent[parent[i]];
    return i;
  };
  const mcg::MappingClass conjugators[] = {mcg::MappingClass(0, -1, 1, 0),
                                           mcg::MappingClass(1, 1, 0, 1),
                                           mcg::MappingClass(1, -1, 0, 1)};
  for (std::size_t i = 0; i < all.size(); ++i) {
    for (const auto& g : conjugators) {
      const auto it = index.find(key(g * all[i] * g.inverse()));
      if (it == index.end()) continue;
      const std::size_t ri = find(i);
      const std::size_t rj = find(it->second);
      if (ri != rj) parent[std::max(ri, rj)] = std::min(ri, rj);
    }
  }
  std::vector<mcg::MappingClass> reps;
  for (std::size_t i = 0; i < all.size(); ++i) {
    if (find(i) == i) reps.push_back(all[i]);
  }
  return reps;
}

namespace {

constexpr std::int64_t kMaxTraceHorizon = 400;
constexpr std::size_t kAxisSamples = 512;
constexpr std::size_t kDomainColumns = 41;
constexpr std::size_t kDomainRows = 240;

double axis_min_systole(const mcg::MappingClass& m) {
  const mcg::AxisData data = mcg::axis(m);
  const double period = data.translation;
  std::vector<double> ts(kAxisSamples + 1);
  std::vector<ReducedBasis> bases(kAxisSamples + 1);
  std::size_t best = 0;
  for (std::size_t k = 0; k <= kAxisSamples; ++k) {
    ts[k] = period * static_cast<double>(k) / static_cast<double>(kAxisSamples);
    bases[k] = reduce(hyp2::point_at(data.axis, ts[k]));
    if (bases[k].shortest_length < bases[best].shortest_length) best = k;
  }
  double result = bases[best].shortest_length;
  const std::size_t lo = best == 0 ? 0 : best - 1;
  const std::size_t hi = std::min(kAxisSamples, best + 1);
  // Each slope's length is convex along a geodesic; refine every slope that
  // realised the systole next to the best sample.
  for (std::size_t k = lo; k <= hi; ++k) {
    const Slope s = bases[k].shortest;
    auto length_at = [&](double t) { return curve_length(s, hyp2::point_at(data.axis, t)); };
    result = std::min(result, golden_min(length_at, ts[lo], ts[hi], 1e-12));
  }
  return result;
}

}  // namespace

ThickParams derive_thick_params(double L) {
  if (!std::isfinite(L) || L < mcg::min_translation() - 1e-12) {
    fail(ErrorKind::invalid_input, "L = " + format_g17(L) + " is below the minimal translation");
  }
  ThickParams params;
  params.L = L;
  params.max_trace = static_cast<std::int64_t>(std::floor(2.0 * std::cosh(L) + 1e-9));
  if (params.max_trace > kMaxTraceHorizon) {
    fail(ErrorKind::horizon_exceeded, "conjugacy-class enumeration would need traces up to " +
                                          std::to_string(params.max_trace) + " (horizon " +
                                          std::to_string(kMaxTraceHorizon) + ")");
  }
  const auto reps = class_representatives(params.max_trace);
  params.classes = reps.size();
  params.axis_samples = kAxisSamples;
  double epsilon = std::numeric_limits<double>::infinity();
  for (const auto& m : reps) epsilon = std::min(epsilon, axis_min_systole(m));
  if (!(epsilon > 0.0) || !std::isfinite(epsilon)) {
    fail(ErrorKind::constant_derivation, "systole floor is not positive");
  }
  params.epsilon = epsilon;

  // Fundamental domain |x| <= 1/2, |tau| >= 1, cut off where the systole
  // 1/sqrt(y) drops to epsilon.
  const double y_max = 1.0 / (epsilon * epsilon);
  double f_raw = 0.0;
  double coeff_raw = 0.0;
  std::size_t points = 0;
  auto visit = [&](const hyp2::Point& tau) {
    const ReducedBasis basis = reduce(tau);
    f_raw = std::max(f_raw, basis.second_length);
    const double reach = std::max(3.0, 1.5 * basis.second_length);
    std::vector<double> lengths;
    for (const auto& s : short_curves(tau, reach)) lengths.push_back(curve_length(s, tau));
    std::sort(lengths.begin(), lengths.end());
    for (std::size_t k = 0; k < lengths.size(); ++k) {
      coeff_raw = std::max(coeff_raw, static_cast<double>(k + 1) / (lengths[k] * lengths[k]));
    }
    ++points;
  };
  for (std::size_t i = 0; i < kDomainColumns; ++i) {
    const double x = -0.5 + static_cast<double>(i) / static_cast<double>(kDomainColumns - 1);
    const double y_min = std::sqrt(1.0 - x * x);
    if (y_min > y_max) continue;
    for (std::size_t j = 0; j < kDomainRows; ++j) {
      const double frac = static_cast<double>(j) / static_cast<double>(kDomainRows - 1);
      visit(hyp2::Point{x, y_min * std::pow(y_max / y_min, frac)});
    }
  }
  visit(hyp2::Point{0.0, 1.0});
  visit(hyp2::Point{0.5, std::sqrt(3.0) / 2.0});
  params.domain_points = points;
  params.F = f_raw * (1.0 + params.margin);
  params.short_curve_coeff = coeff_raw * (1.0 + params.margin);
  return params;
}

BigInt short_curve_bound(const ThickParams& params, const Real& R) {
  if (!(R > 0)) fail(ErrorKind::invalid_input, "radius must be positive");
  const Real coeff = std::nextafter(params.short_curve_coeff, HUGE_VAL);
  const Real value = ceil(coeff * R * R);
  return to_bigint(value);
}

BigInt short_curve_bound(const ThickParams& params, double R) {
  if (!std::isfinite(R)) fail(ErrorKind::invalid_input, "radius must be finite");
  return short_curve_bound(params, Real(R));
}

}  // namespace schottky::torus
