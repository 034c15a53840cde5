#include "schottky/numeric.hpp"

#include <cmath>
#include <cstdio>
#include <thread>
#include <vector>

#include <gmp.h>

#include "schottky/errors.hpp"

namespace schottky {

double to_double(const BigInt& value) { return value.convert_to<double>(); }

BigRational exact_rational(double value) {
  if (!std::isfinite(value)) fail(ErrorKind::invalid_input, "non-finite value has no rational form");
  if (value == 0.0) return BigRational(0);
  int exponent = 0;
  const double mantissa = std::frexp(value, &exponent);
  // mantissa * 2^53 is an integer for every finite double
  const auto scaled = static_cast<std::int64_t>(std::ldexp(mantissa, 53));
  exponent -= 53;
  BigRational result{BigInt(scaled)};
  if (exponent >= 0) {
    result *= BigRational(BigInt(1) << exponent);
  } else {
    result /= BigRational(BigInt(1) << (-exponent));
  }
  return result;
}

BigInt floor_div(const BigRational& value) {
  const BigInt num = boost::multiprecision::numerator(value);
  const BigInt den = boost::multiprecision::denominator(value);
  BigInt q = num / den;  // truncates toward zero
  if (num % den != 0 && num < 0) q -= 1;
  return q;
}

BigInt ceil_div(const BigRational& value) { return -floor_div(-value); }

BigInt decimal_digits(const BigInt& value) {
  if (value == 0) return BigInt(1);
  const BigInt magnitude = abs(value);
  // mpz_sizeinbase is exact or one too large
  const std::size_t guess = mpz_sizeinbase(magnitude.backend().data(), 10);
  BigInt power;
  mpz_ui_pow_ui(power.backend().data(), 10, guess - 1);
  return BigInt(magnitude < power ? guess - 1 : guess);
}

std::string format_g17(double value) {
  char buffer[40];
  std::snprintf(buffer, sizeof buffer, "%.17g", value);
  return buffer;
}

std::string format_g12(double value) {
  char buffer[40];
  std::snprintf(buffer, sizeof buffer, "%.12g", value);
  return buffer;
}

HugeInt HugeInt::exact(BigInt value) {
  if (value <= 0) fail(ErrorKind::internal, "HugeInt holds positive integers only");
  HugeInt h;
  h.materialized_ = true;
  h.digits_ = decimal_digits(value);
  const Real log10_value = boost::multiprecision::log10(Real(value));
  const Real slack = Real("1e-90") * (1 + abs(log10_value));
  h.log10_lo_ = log10_value - slack;
  h.log10_hi_ = log10_value + slack;
  h.value_ = std::move(value);
  return h;
}

BigInt to_bigint(const Real& integral) {
  std::string text = integral.str(0, std::ios_base::fixed);
  const auto dot = text.find('.');
  if (dot != std::string::npos) {
    if (text.find_first_not_of('0', dot + 1) != std::string::npos) {
      fail(ErrorKind::internal, "to_bigint on a non-integer");
    }
    text.resize(dot);
  }
  return BigInt(text);
}

HugeInt HugeInt::from_log10(Real log10_lo, Real log10_hi) {
  if (log10_lo > log10_hi || log10_lo < 0) {
    fail(ErrorKind::internal, "invalid log10 enclosure");
  }
  const Real lo_floor = boost::multiprecision::floor(log10_lo);
  const Real hi_floor = boost::multiprecision::floor(log10_hi);
  if (lo_floor != hi_floor) {
    fail(ErrorKind::constant_derivation,
         "digit count is ambiguous: log10 enclosure straddles an integer");
  }
  HugeInt h;
  h.digits_ = to_bigint(lo_floor) + 1;
  h.log10_lo_ = std::move(log10_lo);
  h.log10_hi_ = std::move(log10_hi);
  return h;
}

const BigInt& HugeInt::value() const {
  if (!materialized_) {
    fail(ErrorKind::horizon_exceeded,
         "integer with " + digits_.str() + " digits was not materialized");
  }
  return value_;
}

double HugeInt::log10() const {
  return ((log10_lo_ + log10_hi_) / 2).convert_to<double>();
}

std::string HugeInt::to_string() const {
  if (materialized_) return value_.str();
  const Real mid = (log10_lo_ + log10_hi_) / 2;
  return "10^" + mid.str(20);
}

bool HugeInt::certainly_at_least(double x) const {
  if (x <= 1.0) return true;
  if (materialized_) return BigRational(value_) >= exact_rational(x);
  return log10_lo_ >= boost::multiprecision::log10(Real(x));
}

double unit_uniform(std::mt19937_64& rng) {
  return static_cast<double>(rng() >> 11U) * 0x1.0p-53;
}

void parallel_for(std::size_t count, unsigned threads,
                  const std::function<void(std::size_t, std::size_t)>& body) {
  if (count == 0) return;
  if (threads <= 1 || count < 2) {
    body(0, count);
    return;
  }
  const std::size_t workers = std::min<std::size_t>(threads, count);
  const std::size_t chunk = (count + workers - 1) / workers;
  std::vector<std::thread> pool;
  std::vector<std::exception_ptr> errors(workers);
  for (std::size_t w = 0; w < workers; ++w) {
    const std::size_t begin = w * chunk;
    const std::size_t end = std::min(count, begin + chunk);
    if (begin >= end) break;
    pool.emplace_back([&, w, begin, end] {
      try {
        body(begin, end);
      } catch (...) {
        errors[w] = std::current_exception();
      }
    });
  }
  for (auto& t : pool) t.join();
  for (auto& e : errors) {
    if (e) std::rethrow_exception(e);
  }
}

}  // namespace schottky
