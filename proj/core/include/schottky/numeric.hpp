#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <random>
#include <string>

#include <boost/multiprecision/gmp.hpp>
#include <boost/multiprecision/mpfr.hpp>

namespace schottky {

using BigInt = boost::multiprecision::mpz_int;
using BigRational = boost::multiprecision::mpq_rational;

/// 100 significant decimal digits. Fixed precision, so it never touches the
/// process-wide MPFR default precision and is safe to use from worker threads.
using Real = boost::multiprecision::number<boost::multiprecision::mpfr_float_backend<100>>;

double to_double(const BigInt& value);

/// The exact binary value of a finite double as a rational.
BigRational exact_rational(double value);

BigInt floor_div(const BigRational& value);
BigInt ceil_div(const BigRational& value);
/// Exact conversion of an integer-valued Real.
BigInt to_bigint(const Real& integral);

/// Decimal digit count of a nonzero integer (sign ignored).
BigInt decimal_digits(const BigInt& value);

/// Shortest "%.17g" rendering; round-trips every double.
std::string format_g17(double value);
std::string format_g12(double value);

/// A positive integer that may be far too large to write out. The decimal
/// digit count and an enclosure [log10_lo, log10_hi] of its base-10 logarithm
/// are always known; the exact value is kept when it was materialized.
class HugeInt {
 public:
  static HugeInt exact(BigInt value);
  /// Throws constant_derivation if the enclosure straddles an integer, since
  /// the digit count would then be ambiguous.
  static HugeInt from_log10(Real log10_lo, Real log10_hi);

  bool is_materialized() const noexcept { return materialized_; }
  const BigInt& value() const;
  const BigInt& digits() const noexcept { return digits_; }
  const Real& log10_lo() const noexcept { return log10_lo_; }
  const Real& log10_hi() const noexcept { return log10_hi_; }
  double log10() const;

  /// Decimal expansion if materialized, otherwise "10^<log10>".
  std::string to_string() const;

  /// Guaranteed comparisons against an ordinary real.
  bool certainly_at_least(double x) const;

 private:
  HugeInt() = default;

  bool materialized_ = false;
  BigInt value_;
  BigInt digits_;
  Real log10_lo_;
  Real log10_hi_;
};

/// (rng() >> 11) * 2^-53: a uniform draw in [0, 1) that does not depend on the
/// standard library's distribution implementations.
double unit_uniform(std::mt19937_64& rng);

/// Runs `body(begin, end)` over [0, count) split into contiguous chunks, one
/// per worker. With threads <= 1 it runs inline. Chunk boundaries depend only on
/// (count, threads), so callers that merge per-index results stay deterministic.
void parallel_for(std::size_t count, unsigned threads,
                  const std::function<void(std::size_t, std::size_t)>& body);

}  // namespace schottky
