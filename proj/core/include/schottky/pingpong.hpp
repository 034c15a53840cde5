#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "schottky/hyp2.hpp"
#include "schottky/mcg.hpp"
#include "schottky/numeric.hpp"
#include "schottky/torus.hpp"

namespace schottky::pingpong {

enum class Sign { plus, minus };

/// Pi(c, R): points projecting to c([R, inf)) for plus, c((-inf, -R]) for minus.
struct PiSet {
  hyp2::Geodesic axis;
  double R = 0.0;
  Sign sign = Sign::plus;
};

/// Throws invalid_input unless R > 0.
PiSet make_pi_set(const hyp2::Geodesic& axis, double R, Sign sign);
bool pi_membership(const PiSet& set, const hyp2::Point& x);

/// Sampling region: x uniform on [x_min, x_max], log y uniform on
/// [log y_min, log y_max].
struct SampleBox {
  double x_min = -10.0;
  double x_max = 10.0;
  double y_min = 0.05;
  double y_max = 10.0;
};

/// Drawn sequentially from mt19937_64(seed), so the list depends only on the
/// arguments.
std::vector<hyp2::Point> sample_points(const SampleBox& box, std::size_t count,
                                       std::uint64_t seed);

/// Throws unless there are at least two generators, all pseudo-Anosov and
/// pairwise independent.
void require_generators(const std::vector<mcg::MappingClass>& generators);

struct PairInterval {
  std::size_t target = 0;
  std::size_t source = 0;
  double lo = 0.0;
  double hi = 0.0;
};

struct RadiusReport {
  double R = 0.0;
  double step = 0.01;
  double margin = 0.05;
  std::vector<double> per_axis;  // radius each axis alone would need
  std::vector<PairInterval> intervals;
};

/// Per axis i, the smallest R on the step grid with every projection interval
/// of another axis inside (-(R + 4b), R + 4b) about the axis origin, then the
/// margin. The certificate radius is the largest over axes.
RadiusReport certified_radius(const std::vector<mcg::MappingClass>& generators, double b);

/// max{B! + 2, ceil((B! + 2) L)}; exact when B <= cap, otherwise held as a
/// digit count and a log10 enclosure.
HugeInt paper_radius(const BigInt& B, const BigRational& L, std::uint64_t cap = 100000);

/// floor((2R + 12b) / l_min) + 1.
HugeInt power_bound(const HugeInt& R, const BigRational& b, const BigRational& l_min);
BigInt power_bound(double R, double b, double l_min);

struct PaperConstants {
  double L = 0.0;
  double D_max = 0.0;
  double M = 0.0;
  torus::ThickParams thick;
  Real short_radius;  // e^{2(M+L)} F, rounded up
  BigInt B;
  HugeInt R_paper = HugeInt::exact(1);
  HugeInt N_paper = HugeInt::exact(1);
};

/// Derives the thick-part parameters and the Morse constant itself.
PaperConstants paper_constants(const std::vector<mcg::MappingClass>& generators, double b,
                               double l_min);
/// Same with those two inputs supplied, e.g. from a cache.
PaperConstants paper_constants(const std::vector<mcg::MappingClass>& generators, double b,
                               double l_min, const torus::ThickParams& thick, double M);

enum class Mode { paper_formula, certified_search };
std::string_view to_string(Mode mode);
Mode parse_mode(std::string_view text);

struct CheckRecord {
  std::string name;
  bool passed = false;
  std::uint64_t samples = 0;
  std::string detail;
};

struct VerificationReport {
  bool passed = false;
  std::uint64_t seed = 0;
  SampleBox box;
  std::vector<CheckRecord> checks;
};

struct PingPongCertificate {
  std::vector<mcg::MappingClass> generators;
  Mode mode = Mode::certified_search;
  double b = 0.0;
  double l_min = 0.0;
  bool per_input_l_min = false;
  std::vector<double> translations;
  RadiusReport radius;   // certified radius; a cross-check in paper mode
  double R = 0.0;        // certified mode
  double S = 0.0;        // R + 6b, certified mode
  BigInt N;              // certified mode
  std::optional<PaperConstants> paper;
  VerificationReport verification;
};

struct CertificateOptions {
  Mode mode = Mode::certified_search;
  bool per_input_l_min = false;
  std::size_t samples = 100000;
  std::uint64_t seed = 0;
  unsigned threads = 1;
  SampleBox box;
  // Optional precomputed inputs for paper mode.
  std::optional<torus::ThickParams> thick;
  std::optional<double> morse;
};

/// Builds the certificate and runs verify_pingpong on it.
PingPongCertificate certify(const std::vector<mcg::MappingClass>& generators, double b,
                            const CertificateOptions& options);

/// Certified mode: (a) N Tr_i >= 2S + 1e-12 for every generator, (b) the 2n
/// Pi sets at radius S are pairwise disjoint, checked exactly on their ideal
/// arcs and on the samples, (c) phi_i^{+-N} maps every sample outside the
/// opposite set into the matching set, in exact integer and high-precision
/// arithmetic. Paper mode records R_paper >= R_cert and skips (c).
/// Throws certificate_invalid with a witness on the first failed check.
VerificationReport verify_pingpong(const PingPongCertificate& cert, std::size_t sample_budget,
                                   std::uint64_t seed, unsigned threads = 1,
                                   const SampleBox& box = {});

}  // namespace schottky::pingpong
