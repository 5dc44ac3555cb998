#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <limits>
#include <stdexcept>
#include <string>

namespace clusterlab {

using Integer = mpz_class;
using Rational = mpq_class;

// Exponents of Laurent monomials. Coefficients are arbitrary precision, but
// exponents stay machine width and every operation on them is checked.
using Exponent = std::int32_t;

inline Exponent checked_add(Exponent a, Exponent b) {
  Exponent r;
  if (__builtin_add_overflow(a, b, &r)) throw std::overflow_error("exponent overflow");
  return r;
}

inline Exponent checked_sub(Exponent a, Exponent b) {
  Exponent r;
  if (__builtin_sub_overflow(a, b, &r)) throw std::overflow_error("exponent overflow");
  return r;
}

inline Exponent checked_mul(Exponent a, Exponent b) {
  Exponent r;
  if (__builtin_mul_overflow(a, b, &r)) throw std::overflow_error("exponent overflow");
  return r;
}

inline std::int64_t to_int64(const Integer& v) {
  if (!v.fits_slong_p()) throw std::overflow_error("integer does not fit in 64 bits: " + v.get_str());
  return v.get_si();
}

inline Exponent to_exponent(const Integer& v) {
  if (!v.fits_sint_p()) throw std::overflow_error("exponent out of range: " + v.get_str());
  return static_cast<Exponent>(v.get_si());
}

inline Integer abs_value(const Integer& v) { return v < 0 ? Integer(-v) : v; }

inline Integer max_zero(const Integer& v) { return v > 0 ? v : Integer(0); }

}  // namespace clusterlab
