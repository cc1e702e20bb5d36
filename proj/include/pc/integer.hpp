#pragma once

#include <gmpxx.h>

#include <climits>
#include <cstdint>
#include <string>

namespace pc {

using Integer = mpz_class;
using Rational = mpq_class;

// Saturating "infinite" valuations used by precision bookkeeping.
inline constexpr int kPlusInfinity = INT_MAX / 4;
inline constexpr int kMinusInfinity = INT_MIN / 4;

inline int sat_add(int a, int b) noexcept {
  if (a >= kPlusInfinity || b >= kPlusInfinity) return kPlusInfinity;
  if (a <= kMinusInfinity || b <= kMinusInfinity) return kMinusInfinity;
  long long s = static_cast<long long>(a) + b;
  if (s >= kPlusInfinity) return kPlusInfinity;
  if (s <= kMinusInfinity) return kMinusInfinity;
  return static_cast<int>(s);
}

bool is_prime(long n);

// v_p(n) for n != 0.
int valuation(const Integer& n, long p);
int valuation(long long n, long p);

// p^k for k >= 0.
Integer power(long p, int k);

// Non-negative residue of n modulo m (m > 0).
Integer mod(const Integer& n, const Integer& m);

// Inverse of a unit modulo m.
Integer inverse_mod(const Integer& a, const Integer& m);

// floor(log_p(n)) for n >= 1.
int floor_log(long p, long n);

long legendre(long a, long p);

Integer parse_integer(const std::string& text);
Rational parse_rational(const std::string& text);

}  // namespace pc
