#pragma once

#include "pc/integer.hpp"

#include <string>

namespace pc {

/**
 * Element of Q_p known to finite absolute precision.
 *
 * A nonzero element is p^valuation * unit with the unit reduced modulo
 * p^(abs_precision - valuation). An element whose known digits are all zero is
 * "zero-to-precision": it lies in p^abs_precision Z_p and nothing more is
 * known. Precision is propagated pessimistically, so a reported digit is
 * always a true digit of every value the inputs could stand for.
 *
 * kExact marks values known exactly (only representable for zero, e.g. the
 * constant term of a formal integral).
 */
class PadicNumber {
 public:
  static constexpr int kExact = kPlusInfinity;

  PadicNumber() = default;

  static PadicNumber make(long p, const Integer& num, const Integer& den, int abs_precision);
  static PadicNumber from_integer(long p, const Integer& n, int abs_precision);
  static PadicNumber zero(long p, int abs_precision = kExact);

  long prime() const noexcept { return p_; }
  bool is_zero() const noexcept { return zero_; }
  int abs_precision() const noexcept { return abs_precision_; }
  int rel_precision() const noexcept { return zero_ ? 0 : abs_precision_ - valuation_; }

  // Exact valuation; raises for zero-to-precision.
  int valuation() const;
  // Valuation for nonzero elements, the precision floor for zero-to-precision.
  int valuation_bound() const noexcept { return zero_ ? abs_precision_ : valuation_; }
  const Integer& unit() const noexcept { return unit_; }

  // Representative in [0, p^k) of this element modulo p^k. Requires the
  // element to be integral and known modulo p^k.
  Integer residue(int k) const;
  Rational to_rational() const;

  PadicNumber with_precision(int abs_precision) const;
  // Exact multiplication by p^k.
  PadicNumber shifted(int k) const;
  // Exact multiplication / division by a nonzero integer.
  PadicNumber times(const Integer& n) const;
  PadicNumber divided_by(const Integer& n) const;

  PadicNumber operator-() const;
  friend PadicNumber operator+(const PadicNumber& a, const PadicNumber& b);
  friend PadicNumber operator-(const PadicNumber& a, const PadicNumber& b);
  friend PadicNumber operator*(const PadicNumber& a, const PadicNumber& b);
  friend PadicNumber operator/(const PadicNumber& a, const PadicNumber& b);
  PadicNumber& operator+=(const PadicNumber& b) { return *this = *this + b; }
  PadicNumber& operator-=(const PadicNumber& b) { return *this = *this - b; }
  PadicNumber& operator*=(const PadicNumber& b) { return *this = *this * b; }

  // Representation equality (same digits, same precision).
  friend bool operator==(const PadicNumber& a, const PadicNumber& b);

  // True when a and b agree to the smaller of their precisions.
  friend bool congruent(const PadicNumber& a, const PadicNumber& b);

  std::string to_string() const;

 private:
  static PadicNumber normalized(long p, int valuation, Integer value, int abs_precision);

  long p_ = 2;
  bool zero_ = true;
  int valuation_ = 0;
  Integer unit_ = 0;
  int abs_precision_ = kExact;
};

// Canonical square root: for odd p the root whose unit residue mod p lies in
// {1, ..., (p-1)/2}; for p = 2 the root congruent to 1 mod 4.
PadicNumber padic_sqrt(const PadicNumber& x);

// Square root of a unit modulo an odd prime p (a a nonzero square mod p).
long sqrt_mod_prime(long a, long p);

}  // namespace pc
