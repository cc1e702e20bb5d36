#include "pc/integer.hpp"

#include "pc/error.hpp"

#include <cctype>

namespace pc {

bool is_prime(long n) {
  if (n < 2) return false;
  for (long d = 2; d * d <= n; ++d)
    if (n % d == 0) return false;
  return true;
}

int valuation(const Integer& n, long p) {
  if (n == 0) fail(ErrorCode::InvalidArgument, "valuation of zero");
  Integer rest;
  Integer pp(p);
  return static_cast<int>(mpz_remove(rest.get_mpz_t(), n.get_mpz_t(), pp.get_mpz_t()));
}

int valuation(long long n, long p) {
  if (n == 0) fail(ErrorCode::InvalidArgument, "valuation of zero");
  int v = 0;
  while (n % p == 0) {
    n /= p;
    ++v;
  }
  return v;
}

Integer power(long p, int k) {
  if (k < 0) fail(ErrorCode::InvalidArgument, "negative exponent");
  Integer r;
  mpz_ui_pow_ui(r.get_mpz_t(), static_cast<unsigned long>(p), static_cast<unsigned long>(k));
  return r;
}

Integer mod(const Integer& n, const Integer& m) {
  Integer r;
  mpz_mod(r.get_mpz_t(), n.get_mpz_t(), m.get_mpz_t());
  return r;
}

Integer inverse_mod(const Integer& a, const Integer& m) {
  Integer r;
  if (m == 1) return Integer(0);
  if (mpz_invert(r.get_mpz_t(), a.get_mpz_t(), m.get_mpz_t()) == 0)
    fail(ErrorCode::InvalidArgument, "element is not invertible");
  return r;
}

int floor_log(long p, long n) {
  int k = 0;
  long q = 1;
  while (q <= n / p) {
    q *= p;
    ++k;
  }
  return k;
}

long legendre(long a, long p) {
  a %= p;
  if (a < 0) a += p;
  if (a == 0) return 0;
  Integer r;
  Integer base(a), e((p - 1) / 2), m(p);
  mpz_powm(r.get_mpz_t(), base.get_mpz_t(), e.get_mpz_t(), m.get_mpz_t());
  return r == 1 ? 1 : -1;
}

Integer parse_integer(const std::string& text) {
  std::string s;
  for (char c : text)
    if (!std::isspace(static_cast<unsigned char>(c))) s += c;
  if (!s.empty() && s[0] == '+') s.erase(0, 1);
  Integer r;
  if (s.empty() || r.set_str(s, 10) != 0)
    fail(ErrorCode::InvalidArgument, "not an integer: '" + text + "'");
  return r;
}

Rational parse_rational(const std::string& text) {
  auto slash = text.find('/');
  if (slash == std::string::npos) return Rational(parse_integer(text));
  Integer num = parse_integer(text.substr(0, slash));
  Integer den = parse_integer(text.substr(slash + 1));
  if (den == 0) fail(ErrorCode::ZeroDenominator, "in '" + text + "'");
  Rational r(num, den);
  r.canonicalize();
  return r;
}

}  // namespace pc
