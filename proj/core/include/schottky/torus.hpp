#pragma once

#include <cstdint>
#include <utility>
#include <vector>

#include "schottky/hyp2.hpp"
#include "schottky/mcg.hpp"
#include "schottky/numeric.hpp"
#include "schottky/slope.hpp"

namespace schottky::torus {

// A point tau of the upper half-plane is the flat torus C / (Z + tau Z) scaled
// to unit area. The slope (p, q) is the closed geodesic in the class of
// p + q tau; its flat length is |p + q tau| / sqrt(Im tau) and its extremal
// length is the square of that.

double curve_length(const Slope& s, const hyp2::Point& tau);
double extremal_length(const Slope& s, const hyp2::Point& tau);

/// The model identification: Teichmuller distance is the model distance.
double teich_dist(const hyp2::Point& tau1, const hyp2::Point& tau2);

/// 1/2 log of the largest extremal-length ratio over primitive slopes with
/// |p|, q <= farey_depth. Increases with depth toward teich_dist.
double kerckhoff_dist(const hyp2::Point& tau1, const hyp2::Point& tau2, std::int64_t farey_depth,
                      unsigned threads = 1);

/// max over `slopes` of curve_length(s, tau2) / curve_length(s, tau1).
double wolpert_check(const hyp2::Point& tau1, const hyp2::Point& tau2,
                     const std::vector<Slope>& slopes);

/// All canonical slopes of length at most R, sorted by (q, p).
std::vector<Slope> short_curves(const hyp2::Point& tau, double R);

std::int64_t intersection_number(const Slope& s1, const Slope& s2);

/// Lagrange-Gauss reduced basis of the lattice Z + tau Z: `shortest` realises
/// the systole and `second` is the shortest slope not equal to it.
struct ReducedBasis {
  Slope shortest;
  Slope second;
  double shortest_length = 0.0;
  double second_length = 0.0;
};

ReducedBasis reduce(const hyp2::Point& tau);
double systole(const hyp2::Point& tau);
bool is_thick(const hyp2::Point& tau, double epsilon);

/// The torus marking: a shortest curve and the shortest curve crossing it.
/// Throws f_violation if the longer one exceeds F.
std::pair<Slope, Slope> marking(const hyp2::Point& tau, double F);

/// Conjugacy-class representatives of pseudo-Anosov classes with |trace| in
/// [3, max_trace]. Reduced forms have entries bounded by the trace, so every
/// class meets the searched box; classes are merged under the conjugations by
/// S and T that stay in the box. Duplicates that survive only cost time.
std::vector<mcg::MappingClass> class_representatives(std::int64_t max_trace);

struct ThickParams {
  double L = 0.0;
  std::int64_t max_trace = 0;
  std::size_t classes = 0;
  double epsilon = 0.0;
  double F = 0.0;
  double short_curve_coeff = 0.0;
  // Grid description, kept so reports can be reproduced.
  std::size_t axis_samples = 0;
  std::size_t domain_points = 0;
  double margin = 0.05;
};

/// epsilon: the smallest systole met along the axis of any pseudo-Anosov with
/// translation distance <= L. F: the longest marking curve over the
/// epsilon-thick part of the fundamental domain, plus the margin.
/// short_curve_coeff: sup of k / l_k^2 over the same points, where l_k is the
/// k-th shortest length, plus the margin; then |S_R| <= coeff R^2.
ThickParams derive_thick_params(double L);

/// ceil(short_curve_coeff * R^2), with R taken as an exact upper bound.
BigInt short_curve_bound(const ThickParams& params, const Real& R);
BigInt short_curve_bound(const ThickParams& params, double R);

}  // namespace schottky::torus
