#pragma once

#include "pc/integer.hpp"
#include "pc/padic.hpp"

#include <string>
#include <vector>

namespace pc {

// Polynomial over Q_p, coefficients in ascending order of degree.
struct PadicPoly {
  long prime = 2;
  std::vector<PadicNumber> coeffs;

  PadicPoly() = default;
  PadicPoly(long p, std::vector<PadicNumber> c) : prime(p), coeffs(std::move(c)) {}

  static PadicPoly from_integers(long p, const std::vector<Integer>& c, int abs_precision);
  static PadicPoly from_rationals(long p, const std::vector<Rational>& c, int abs_precision);

  // Highest index with a nonzero-to-precision coefficient; -1 if none.
  int degree() const;
  bool is_zero() const { return degree() < 0; }
  // Minimum coefficient valuation (precision floor for zero coefficients).
  int content() const;

  PadicNumber operator()(const PadicNumber& x) const;
  PadicNumber eval(const Integer& x) const;
};

// k-th Taylor coefficient of h at the integer c: sum_{i>=k} binom(i,k) c^(i-k) h_i.
PadicNumber taylor_coefficient(const PadicPoly& h, const Integer& c, int k);
// h(c + x).
PadicPoly taylor_shift(const PadicPoly& h, const Integer& c);
// h(p^k x).
PadicPoly scale_variable(const PadicPoly& h, int k);
// p^k h(x), exact.
PadicPoly shift_values(const PadicPoly& h, int k);
PadicPoly derivative(const PadicPoly& h);
PadicPoly multiply(const PadicPoly& a, const PadicPoly& b);

std::string to_string(const PadicPoly& h, char var = 'x');

// Dense polynomials over F_p with small p; ascending coefficients in [0, p).
namespace fp {

using Poly = std::vector<long>;

Poly reduce(const std::vector<Integer>& c, long p);
void trim(Poly& a);
long eval(const Poly& a, long x, long p);
Poly derivative(const Poly& a, long p);
Poly add(const Poly& a, const Poly& b, long p);
Poly sub(const Poly& a, const Poly& b, long p);
Poly mul(const Poly& a, const Poly& b, long p);
Poly rem(Poly a, const Poly& b, long p);
Poly gcd(Poly a, Poly b, long p);

}  // namespace fp

// Integer polynomial evaluation and helpers used by exact routines.
Integer eval(const std::vector<Integer>& c, const Integer& x);
std::vector<Integer> derivative(const std::vector<Integer>& c);
// Exact resultant of integer polynomials (ascending coefficients, trailing
// zeros ignored) via a fraction-free Sylvester determinant.
Integer resultant(std::vector<Integer> f, std::vector<Integer> g);
// Exact determinant by Bareiss elimination.
Integer determinant(std::vector<std::vector<Integer>> m);

}  // namespace pc
