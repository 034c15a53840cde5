#include "schottky/mcg.hpp"

#include <cmath>
#include <limits>
#include <vector>

#include "schottky/errors.hpp"

namespace schottky::mcg {

namespace {

BigInt parse_integer(std::string_view text, std::string_view whole) {
  std::size_t i = 0;
  if (i < text.size() && (text[i] == '+' || text[i] == '-')) ++i;
  if (i == text.size()) {
    fail(ErrorKind::invalid_input, "malformed matrix '" + std::string(whole) + "'");
  }
  for (std::size_t j = i; j < text.size(); ++j) {
    if (text[j] < '0' || text[j] > '9') {
      fail(ErrorKind::invalid_input, "malformed matrix '" + std::string(whole) + "'");
    }
  }
  std::string digits(text.substr(text[0] == '+' ? 1 : 0));
  return BigInt(digits);
}

std::int64_t narrow(const BigInt& v) {
  static const BigInt lo = std::numeric_limits<std::int64_t>::min();
  static const BigInt hi = std::numeric_limits<std::int64_t>::max();
  if (v < lo || v > hi) fail(ErrorKind::invalid_input, "slope coordinate exceeds 64 bits");
  return v.convert_to<std::int64_t>();
}

Real to_real(const BigInt& v) { return Real(v); }

}  // namespace

MappingClass::MappingClass(BigInt a, BigInt b, BigInt c, BigInt d)
    : a_(std::move(a)), b_(std::move(b)), c_(std::move(c)), d_(std::move(d)) {
  if (a_ * d_ - b_ * c_ != 1) {
    fail(ErrorKind::invalid_input, "matrix " + to_string(*this) + " does not have determinant 1");
  }
  canonicalize();
}

MappingClass::MappingClass(Unchecked, BigInt a, BigInt b, BigInt c, BigInt d)
    : a_(std::move(a)), b_(std::move(b)), c_(std::move(c)), d_(std::move(d)) {
  canonicalize();
}

void MappingClass::canonicalize() {
  const BigInt* first = &a_;
  if (a_ == 0) first = b_ != 0 ? &b_ : &c_;
  if (*first < 0) {
    a_ = -a_;
    b_ = -b_;
    c_ = -c_;
    d_ = -d_;
  }
}

MappingClass MappingClass::identity() { return MappingClass(Unchecked{}, 1, 0, 0, 1); }

MappingClass MappingClass::parse(std::string_view text) {
  std::vector<std::string_view> parts;
  std::size_t start = 0;
  while (true) {
    const auto comma = text.find(',', start);
    parts.push_back(text.substr(start, comma == std::string_view::npos ? comma : comma - start));
    if (comma == std::string_view::npos) break;
    start = comma + 1;
  }
  if (parts.size() != 4) {
    fail(ErrorKind::invalid_input,
         "malformed matrix '" + std::string(text) + "': expected a,b,c,d");
  }
  return MappingClass(parse_integer(parts[0], text), parse_integer(parts[1], text),
                      parse_integer(parts[2], text), parse_integer(parts[3], text));
}

MappingClass MappingClass::inverse() const { return MappingClass(Unchecked{}, d_, -b_, -c_, a_); }

MappingClass operator*(const MappingClass& l, const MappingClass& r) {
  return MappingClass(MappingClass::Unchecked{}, l.a_ * r.a_ + l.b_ * r.c_,
                      l.a_ * r.b_ + l.b_ * r.d_, l.c_ * r.a_ + l.d_ * r.c_,
                      l.c_ * r.b_ + l.d_ * r.d_);
}

MappingClass MappingClass::pow(std::uint64_t n) const {
  MappingClass result = identity();
  MappingClass base = *this;
  while (n > 0) {
    if (n & 1U) result = result * base;
    n >>= 1U;
    if (n > 0) base = base * base;
  }
  return result;
}

bool MappingClass::is_identity() const { return a_ == 1 && b_ == 0 && c_ == 0 && d_ == 1; }

hyp2::Mobius MappingClass::to_mobius() const {
  return {to_double(a_), to_double(b_), to_double(c_), to_double(d_)};
}

std::string to_string(const MappingClass& m) {
  return m.a().str() + "," + m.b().str() + "," + m.c().str() + "," + m.d().str();
}

std::string_view to_string(Kind kind) {
  switch (kind) {
    case Kind::elliptic: return "elliptic";
    case Kind::parabolic: return "parabolic";
    case Kind::pseudo_anosov: return "pseudo_anosov";
  }
  return "unknown";
}

Kind classify(const MappingClass& m) {
  const BigInt t = abs(m.trace());
  if (t > 2) return Kind::pseudo_anosov;
  if (t == 2) return Kind::parabolic;
  return Kind::elliptic;
}

void require_pseudo_anosov(const MappingClass& m) {
  const Kind kind = classify(m);
  if (kind != Kind::pseudo_anosov) {
    fail(ErrorKind::classification, "matrix " + to_string(m) + " is " +
                                        std::string(to_string(kind)) + ", not pseudo_anosov");
  }
}

AxisData axis(const MappingClass& m) {
  require_pseudo_anosov(m);
  const BigInt t = m.trace();
  const Real root = sqrt(to_real(t * t - 4));
  const Real amd = to_real(m.a() - m.d());
  const Real two_c = 2 * to_real(m.c());
  // Roots of c x^2 + (d - a) x - b; their product is -b/c. Take the root
  // without cancellation first.
  Real plus;
  Real minus;
  const Real product = -to_real(m.b()) / to_real(m.c());
  if (amd >= 0) {
    plus = (amd + root) / two_c;
    minus = product / plus;
  } else {
    minus = (amd - root) / two_c;
    plus = product / minus;
  }
  // The fixed point x carries eigenvector (x, 1) with eigenvalue c x + d; for
  // `plus` that is (t + root) / 2.
  const bool plus_attracts = t > 0;
  const double x_att = (plus_attracts ? plus : minus).convert_to<double>();
  const double x_rep = (plus_attracts ? minus : plus).convert_to<double>();
  const Real lambda = (to_real(abs(t)) + root) / 2;

  const double center = 0.5 * (x_att + x_rep);
  const double radius = 0.5 * std::abs(x_att - x_rep);
  const auto att = hyp2::BoundaryPoint::at(x_att);
  const auto rep = hyp2::BoundaryPoint::at(x_rep);
  AxisData out{hyp2::Geodesic(rep, att, hyp2::Point{center, radius}), rep, att, 0.0, 0.0};
  out.translation = log(lambda).convert_to<double>();
  out.dilatation = lambda.convert_to<double>();
  return out;
}

double translation_distance(const MappingClass& m) {
  require_pseudo_anosov(m);
  const BigInt t = abs(m.trace());
  const Real lambda = (to_real(t) + sqrt(to_real(t * t - 4))) / 2;
  return log(lambda).convert_to<double>();
}

double min_translation() {
  static const double value = [] {
    const Real five = 5;
    return log((3 + sqrt(five)) / 2).convert_to<double>();
  }();
  return value;
}

bool independent(const MappingClass& m1, const MappingClass& m2) {
  require_pseudo_anosov(m1);
  require_pseudo_anosov(m2);
  const bool commute = (m1 * m2 * m1.inverse() * m2.inverse()).is_identity();

  // Fixed points are the roots of f_i = c x^2 + (d - a) x - b.
  const BigInt f1[3] = {m1.c(), m1.d() - m1.a(), -m1.b()};
  const BigInt f2[3] = {m2.c(), m2.d() - m2.a(), -m2.b()};
  const BigInt ab = f1[0] * f2[1] - f2[0] * f1[1];
  const BigInt ac = f1[0] * f2[2] - f2[0] * f1[2];
  const BigInt bc = f1[1] * f2[2] - f2[1] * f1[2];
  const bool same_fixed_set = ab == 0 && ac == 0 && bc == 0;
  const BigInt resultant = ac * ac - ab * bc;

  if (commute != same_fixed_set) {
    fail(ErrorKind::internal, "commutator and fixed-point tests disagree for " + to_string(m1) +
                                  " and " + to_string(m2));
  }
  if (!same_fixed_set && resultant == 0) {
    fail(ErrorKind::internal, "axes of " + to_string(m1) + " and " + to_string(m2) +
                                  " share exactly one endpoint");
  }
  return !commute;
}

Slope act(const MappingClass& m, const Slope& s) {
  const BigInt p = m.a() * s.p - m.b() * s.q;
  const BigInt q = -m.c() * s.p + m.d() * s.q;
  return canonical_slope(narrow(p), narrow(q));
}

std::optional<Slope> fixed_slope_test(const MappingClass& m) {
  if (classify(m) != Kind::parabolic) return std::nullopt;
  const int eps = m.trace() > 0 ? 1 : -1;
  // act(m, v) = eps v for v in the kernel of [[a - eps, -b], [-c, d - eps]].
  const BigInt r1 = m.a() - eps;
  const BigInt r2 = m.d() - eps;
  if (r1 != 0 || m.b() != 0) return canonical_slope(narrow(m.b()), narrow(r1));
  if (m.c() != 0 || r2 != 0) return canonical_slope(narrow(r2), narrow(m.c()));
  return Slope{1, 0};
}

}  // namespace schottky::mcg
