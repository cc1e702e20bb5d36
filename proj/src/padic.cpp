#include "pc/padic.hpp"

#include "pc/error.hpp"

#include <algorithm>
#include <sstream>

namespace pc {

namespace {

void require_same_prime(const PadicNumber& a, const PadicNumber& b) {
  if (a.prime() != b.prime())
    fail(ErrorCode::PrimeMismatch,
         "p = " + std::to_string(a.prime()) + " vs p = " + std::to_string(b.prime()));
}

long long mulmod(long long a, long long b, long long m) {
  return static_cast<long long>(static_cast<__int128>(a) * b % m);
}

long long powmod(long long b, long long e, long long m) {
  long long r = 1 % m;
  b %= m;
  while (e > 0) {
    if (e & 1) r = mulmod(r, b, m);
    b = mulmod(b, b, m);
    e >>= 1;
  }
  return r;
}

}  // namespace

PadicNumber PadicNumber::normalized(long p, int valuation, Integer value, int abs_precision) {
  PadicNumber r;
  r.p_ = p;
  r.abs_precision_ = abs_precision;
  if (value == 0) return r;
  int k = pc::valuation(value, p);
  if (k > 0) {
    Integer q;
    mpz_divexact(q.get_mpz_t(), value.get_mpz_t(), power(p, k).get_mpz_t());
    value = q;
  }
  valuation = sat_add(valuation, k);
  if (valuation >= abs_precision) return r;
  if (abs_precision >= kExact)
    fail(ErrorCode::InsufficientPrecision, "nonzero p-adic values need finite precision");
  r.zero_ = false;
  r.valuation_ = valuation;
  r.unit_ = mod(value, power(p, abs_precision - valuation));
  return r;
}

PadicNumber PadicNumber::make(long p, const Integer& num, const Integer& den, int abs_precision) {
  if (!is_prime(p)) fail(ErrorCode::NonPrime, std::to_string(p) + " is not prime");
  if (den == 0) fail(ErrorCode::ZeroDenominator, "padic_make with zero denominator");
  if (num == 0) return zero(p, abs_precision);
  int vn = pc::valuation(num, p);
  int vd = pc::valuation(den, p);
  int v = vn - vd;
  if (v >= abs_precision) return zero(p, abs_precision);
  Integer un = num / power(p, vn);
  Integer ud = den / power(p, vd);
  Integer m = power(p, abs_precision - v);
  return normalized(p, v, mod(un * inverse_mod(mod(ud, m), m), m), abs_precision);
}

PadicNumber PadicNumber::from_integer(long p, const Integer& n, int abs_precision) {
  return make(p, n, 1, abs_precision);
}

PadicNumber PadicNumber::zero(long p, int abs_precision) {
  PadicNumber r;
  r.p_ = p;
  r.abs_precision_ = std::min(abs_precision, kExact);
  return r;
}

int PadicNumber::valuation() const {
  if (zero_) fail(ErrorCode::InsufficientPrecision, "valuation of a zero-to-precision element");
  return valuation_;
}

Integer PadicNumber::residue(int k) const {
  if (k <= 0) return 0;
  if (abs_precision_ < k)
    fail(ErrorCode::InsufficientPrecision, "value known only modulo p^" +
                                               std::to_string(abs_precision_) + ", need p^" +
                                               std::to_string(k));
  if (zero_ || valuation_ >= k) return 0;
  if (valuation_ < 0) fail(ErrorCode::InvalidArgument, "residue of a non-integral element");
  return mod(unit_ * power(p_, valuation_), power(p_, k));
}

Rational PadicNumber::to_rational() const {
  if (zero_) return Rational(0);
  if (valuation_ >= 0) return Rational(unit_ * power(p_, valuation_));
  Rational r(unit_, power(p_, -valuation_));
  r.canonicalize();
  return r;
}

PadicNumber PadicNumber::with_precision(int abs_precision) const {
  if (abs_precision >= abs_precision_) return *this;
  if (zero_ || valuation_ >= abs_precision) return zero(p_, abs_precision);
  PadicNumber r = *this;
  r.abs_precision_ = abs_precision;
  r.unit_ = mod(unit_, power(p_, abs_precision - valuation_));
  return r;
}

PadicNumber PadicNumber::shifted(int k) const {
  PadicNumber r = *this;
  r.abs_precision_ = sat_add(abs_precision_, k);
  if (!zero_) r.valuation_ += k;
  return r;
}

PadicNumber PadicNumber::times(const Integer& n) const {
  if (n == 0) return zero(p_);
  int k = pc::valuation(n, p_);
  if (zero_) return zero(p_, sat_add(abs_precision_, k));
  Integer m = power(p_, rel_precision());
  Integer rest = n / power(p_, k);
  PadicNumber r = *this;
  r.valuation_ += k;
  r.abs_precision_ += k;
  r.unit_ = mod(unit_ * rest, m);
  return r;
}

PadicNumber PadicNumber::divided_by(const Integer& n) const {
  if (n == 0) fail(ErrorCode::ZeroDenominator, "division by the integer 0");
  int k = pc::valuation(n, p_);
  if (zero_) return zero(p_, sat_add(abs_precision_, -k));
  Integer m = power(p_, rel_precision());
  Integer rest = n / power(p_, k);
  PadicNumber r = *this;
  r.valuation_ -= k;
  r.abs_precision_ -= k;
  r.unit_ = mod(unit_ * inverse_mod(mod(rest, m), m), m);
  return r;
}

PadicNumber PadicNumber::operator-() const {
  if (zero_) return *this;
  PadicNumber r = *this;
  r.unit_ = mod(-unit_, power(p_, rel_precision()));
  return r;
}

PadicNumber operator+(const PadicNumber& a, const PadicNumber& b) {
  require_same_prime(a, b);
  const long p = a.p_;
  const int n = std::min(a.abs_precision_, b.abs_precision_);
  if (a.zero_ && b.zero_) return PadicNumber::zero(p, n);
  const int m = std::min(a.valuation_bound(), b.valuation_bound());
  if (m >= n) return PadicNumber::zero(p, n);
  const int r = n - m;
  Integer value = 0;
  for (const PadicNumber* x : {&a, &b}) {
    if (x->zero_) continue;
    int shift = x->valuation_ - m;
    if (shift < r) value += x->unit_ * power(p, shift);
  }
  return PadicNumber::normalized(p, m, mod(value, power(p, r)), n);
}

PadicNumber operator-(const PadicNumber& a, const PadicNumber& b) { return a + (-b); }

PadicNumber operator*(const PadicNumber& a, const PadicNumber& b) {
  require_same_prime(a, b);
  const long p = a.p_;
  if (a.zero_ || b.zero_) {
    int bound = sat_add(a.valuation_bound(), b.valuation_bound());
    return PadicNumber::zero(p, bound);
  }
  const int r = std::min(a.rel_precision(), b.rel_precision());
  PadicNumber out;
  out.p_ = p;
  out.zero_ = false;
  out.valuation_ = a.valuation_ + b.valuation_;
  out.abs_precision_ = out.valuation_ + r;
  out.unit_ = mod(a.unit_ * b.unit_, power(p, r));
  return out;
}

PadicNumber operator/(const PadicNumber& a, const PadicNumber& b) {
  require_same_prime(a, b);
  const long p = a.p_;
  if (b.zero_) fail(ErrorCode::DivisionByZeroToPrecision, "divisor is zero to precision");
  if (a.zero_) return PadicNumber::zero(p, sat_add(a.abs_precision_, -b.valuation_));
  const int r = std::min(a.rel_precision(), b.rel_precision());
  Integer m = power(p, r);
  PadicNumber out;
  out.p_ = p;
  out.zero_ = false;
  out.valuation_ = a.valuation_ - b.valuation_;
  out.abs_precision_ = out.valuation_ + r;
  out.unit_ = mod(a.unit_ * inverse_mod(mod(b.unit_, m), m), m);
  return out;
}

bool operator==(const PadicNumber& a, const PadicNumber& b) {
  if (a.p_ != b.p_ || a.zero_ != b.zero_ || a.abs_precision_ != b.abs_precision_) return false;
  return a.zero_ || (a.valuation_ == b.valuation_ && a.unit_ == b.unit_);
}

bool congruent(const PadicNumber& a, const PadicNumber& b) { return (a - b).is_zero(); }

std::string PadicNumber::to_string() const {
  std::ostringstream os;
  if (zero_) {
    os << "0";
  } else {
    os << unit_.get_str();
    if (valuation_ != 0) os << "*" << p_ << "^" << valuation_;
  }
  if (abs_precision_ < kExact) os << " + O(" << p_ << "^" << abs_precision_ << ")";
  return os.str();
}

long sqrt_mod_prime(long a, long p) {
  a %= p;
  if (a < 0) a += p;
  if (a == 0) return 0;
  if (p == 2) return 1;
  if (powmod(a, (p - 1) / 2, p) != 1) fail(ErrorCode::NotASquare, "not a square mod p");
  if (p % 4 == 3) return static_cast<long>(powmod(a, (p + 1) / 4, p));
  long long q = p - 1;
  int s = 0;
  while (q % 2 == 0) {
    q /= 2;
    ++s;
  }
  long long z = 2;
  while (powmod(z, (p - 1) / 2, p) != p - 1) ++z;
  long long m = s;
  long long c = powmod(z, q, p);
  long long t = powmod(a, q, p);
  long long r = powmod(a, (q + 1) / 2, p);
  while (t != 1) {
    long long i = 0, t2 = t;
    while (t2 != 1) {
      t2 = mulmod(t2, t2, p);
      ++i;
    }
    long long b = c;
    for (long long j = 0; j < m - i - 1; ++j) b = mulmod(b, b, p);
    m = i;
    c = mulmod(b, b, p);
    t = mulmod(t, c, p);
    r = mulmod(r, b, p);
  }
  return static_cast<long>(r);
}

PadicNumber padic_sqrt(const PadicNumber& x) {
  if (x.is_zero())
    fail(ErrorCode::InsufficientPrecision, "square root of a zero-to-precision element");
  const long p = x.prime();
  const int v = x.valuation();
  if (v % 2 != 0) fail(ErrorCode::OddValuation, "valuation " + std::to_string(v) + " is odd");
  const int r = x.rel_precision();
  const Integer& u = x.unit();

  if (p == 2) {
    if (r < 3) fail(ErrorCode::InsufficientPrecision, "2-adic unit known modulo less than 8");
    if (mod(u, 8) != 1) fail(ErrorCode::NotASquare, "2-adic unit is not 1 mod 8");
    Integer root = 1;
    for (int k = 3; k < r; ++k) {
      if (mod(root * root - u, power(2, k + 1)) != 0) root += power(2, k - 1);
    }
    Integer m = power(2, r - 1);
    root = mod(root, m);
    if (mod(root, 4) == 3) root = mod(-root, m);
    return PadicNumber::make(2, root, 1, r - 1).shifted(v / 2);
  }

  long u0 = mpz_fdiv_ui(u.get_mpz_t(), static_cast<unsigned long>(p));
  if (legendre(u0, p) != 1) fail(ErrorCode::NotASquare, "unit is not a square mod p");
  Integer root = sqrt_mod_prime(u0, p);
  for (int k = 1; k < r;) {
    int k2 = std::min(2 * k, r);
    Integer m = power(p, k2);
    root = mod(root - (root * root - u) * inverse_mod(mod(2 * root, m), m), m);
    k = k2;
  }
  Integer m = power(p, r);
  if (mpz_fdiv_ui(root.get_mpz_t(), static_cast<unsigned long>(p)) >
      static_cast<unsigned long>((p - 1) / 2))
    root = mod(-root, m);
  return PadicNumber::make(p, root, 1, r).shifted(v / 2);
}

}  // namespace pc
