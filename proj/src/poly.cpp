#include "pc/poly.hpp"

#include "pc/error.hpp"

#include <algorithm>
#include <sstream>

namespace pc {

PadicPoly PadicPoly::from_integers(long p, const std::vector<Integer>& c, int abs_precision) {
  PadicPoly h;
  h.prime = p;
  for (const auto& x : c) h.coeffs.push_back(PadicNumber::from_integer(p, x, abs_precision));
  return h;
}

PadicPoly PadicPoly::from_rationals(long p, const std::vector<Rational>& c, int abs_precision) {
  PadicPoly h;
  h.prime = p;
  for (const auto& x : c)
    h.coeffs.push_back(PadicNumber::make(p, x.get_num(), x.get_den(), abs_precision));
  return h;
}

int PadicPoly::degree() const {
  for (int i = static_cast<int>(coeffs.size()) - 1; i >= 0; --i)
    if (!coeffs[i].is_zero()) return i;
  return -1;
}

int PadicPoly::content() const {
  int m = kPlusInfinity;
  for (const auto& c : coeffs) m = std::min(m, c.valuation_bound());
  return m;
}

PadicNumber PadicPoly::operator()(const PadicNumber& x) const {
  PadicNumber acc = PadicNumber::zero(prime);
  for (auto it = coeffs.rbegin(); it != coeffs.rend(); ++it) acc = acc * x + *it;
  return acc;
}

PadicNumber PadicPoly::eval(const Integer& x) const {
  PadicNumber acc = PadicNumber::zero(prime);
  for (auto it = coeffs.rbegin(); it != coeffs.rend(); ++it) acc = acc.times(x) + *it;
  return acc;
}

PadicNumber taylor_coefficient(const PadicPoly& h, const Integer& c, int k) {
  PadicNumber acc = PadicNumber::zero(h.prime);
  Integer binom = 1;  // binom(i, k)
  Integer cpow = 1;   // c^(i-k)
  for (int i = k; i < static_cast<int>(h.coeffs.size()); ++i) {
    if (i > k) {
      binom = binom * i / (i - k);
      cpow *= c;
    }
    acc += h.coeffs[i].times(binom * cpow);
  }
  return acc;
}

PadicPoly taylor_shift(const PadicPoly& h, const Integer& c) {
  PadicPoly out;
  out.prime = h.prime;
  if (c == 0) {
    out.coeffs = h.coeffs;
    return out;
  }
  // Horner: out = (...((h_n) x' + h_{n-1}) ...) with x' = c + x.
  std::vector<PadicNumber> acc;
  for (auto it = h.coeffs.rbegin(); it != h.coeffs.rend(); ++it) {
    // acc *= (c + x)
    std::vector<PadicNumber> next(acc.size() + 1, PadicNumber::zero(h.prime));
    for (size_t i = 0; i < acc.size(); ++i) {
      next[i] += acc[i].times(c);
      next[i + 1] += acc[i];
    }
    if (next.empty()) next.push_back(PadicNumber::zero(h.prime));
    next[0] += *it;
    if (acc.empty()) next.resize(1);
    acc = std::move(next);
  }
  out.coeffs = std::move(acc);
  out.coeffs.resize(h.coeffs.size(), PadicNumber::zero(h.prime));
  return out;
}

PadicPoly scale_variable(const PadicPoly& h, int k) {
  PadicPoly out = h;
  for (size_t i = 0; i < out.coeffs.size(); ++i)
    out.coeffs[i] = out.coeffs[i].shifted(static_cast<int>(i) * k);
  return out;
}

PadicPoly shift_values(const PadicPoly& h, int k) {
  PadicPoly out = h;
  for (auto& c : out.coeffs) c = c.shifted(k);
  return out;
}

PadicPoly derivative(const PadicPoly& h) {
  PadicPoly out;
  out.prime = h.prime;
  for (size_t i = 1; i < h.coeffs.size(); ++i)
    out.coeffs.push_back(h.coeffs[i].times(static_cast<long>(i)));
  if (out.coeffs.empty()) out.coeffs.push_back(PadicNumber::zero(h.prime));
  return out;
}

PadicPoly multiply(const PadicPoly& a, const PadicPoly& b) {
  if (a.prime != b.prime) fail(ErrorCode::PrimeMismatch, "polynomial product");
  PadicPoly out;
  out.prime = a.prime;
  if (a.coeffs.empty() || b.coeffs.empty()) return out;
  out.coeffs.assign(a.coeffs.size() + b.coeffs.size() - 1, PadicNumber::zero(a.prime));
  for (size_t i = 0; i < a.coeffs.size(); ++i)
    for (size_t j = 0; j < b.coeffs.size(); ++j) out.coeffs[i + j] += a.coeffs[i] * b.coeffs[j];
  return out;
}

std::string to_string(const PadicPoly& h, char var) {
  std::ostringstream os;
  bool first = true;
  for (size_t i = 0; i < h.coeffs.size(); ++i) {
    if (h.coeffs[i].is_zero()) continue;
    if (!first) os << " + ";
    first = false;
    const PadicNumber& c = h.coeffs[i];
    Rational v = c.to_rational();
    if (c.abs_precision() < PadicNumber::kExact) {
      // Print the representative of least absolute value.
      Integer m = power(c.prime(), c.rel_precision());
      Integer u = c.unit();
      if (2 * u > m) u -= m;
      v = Rational(u) * (c.valuation() >= 0 ? Rational(power(c.prime(), c.valuation()))
                                            : 1 / Rational(power(c.prime(), -c.valuation())));
      v.canonicalize();
    }
    os << "(" << v.get_str() << ")";
    if (i > 0) os << "*" << var << "^" << i;
  }
  if (first) os << "0";
  return os.str();
}

namespace fp {

void trim(Poly& a) {
  while (!a.empty() && a.back() == 0) a.pop_back();
}

Poly reduce(const std::vector<Integer>& c, long p) {
  Poly out;
  for (const auto& x : c) out.push_back(static_cast<long>(mpz_fdiv_ui(x.get_mpz_t(), p)));
  trim(out);
  return out;
}

long eval(const Poly& a, long x, long p) {
  long long acc = 0;
  for (auto it = a.rbegin(); it != a.rend(); ++it) acc = (acc * x + *it) % p;
  return static_cast<long>((acc % p + p) % p);
}

Poly derivative(const Poly& a, long p) {
  Poly out;
  for (size_t i = 1; i < a.size(); ++i) out.push_back(static_cast<long>((i % p) * a[i] % p));
  trim(out);
  return out;
}

Poly add(const Poly& a, const Poly& b, long p) {
  Poly out(std::max(a.size(), b.size()), 0);
  for (size_t i = 0; i < a.size(); ++i) out[i] = (out[i] + a[i]) % p;
  for (size_t i = 0; i < b.size(); ++i) out[i] = (out[i] + b[i]) % p;
  trim(out);
  return out;
}

Poly sub(const Poly& a, const Poly& b, long p) {
  Poly out(std::max(a.size(), b.size()), 0);
  for (size_t i = 0; i < a.size(); ++i) out[i] = (out[i] + a[i]) % p;
  for (size_t i = 0; i < b.size(); ++i) out[i] = ((out[i] - b[i]) % p + p) % p;
  trim(out);
  return out;
}

Poly mul(const Poly& a, const Poly& b, long p) {
  if (a.empty() || b.empty()) return {};
  Poly out(a.size() + b.size() - 1, 0);
  for (size_t i = 0; i < a.size(); ++i)
    for (size_t j = 0; j < b.size(); ++j) out[i + j] = (out[i + j] + a[i] * b[j]) % p;
  trim(out);
  return out;
}

namespace {
long inv_mod(long a, long p) {
  long long r = 1, b = a % p, e = p - 2;
  while (e > 0) {
    if (e & 1) r = r * b % p;
    b = b * b % p;
    e >>= 1;
  }
  return static_cast<long>(r);
}
}  // namespace

Poly rem(Poly a, const Poly& b, long p) {
  if (b.empty()) fail(ErrorCode::InvalidArgument, "polynomial division by zero");
  trim(a);
  long inv = inv_mod(b.back(), p);
  while (a.size() >= b.size()) {
    long factor = a.back() * inv % p;
    size_t shift = a.size() - b.size();
    for (size_t i = 0; i < b.size(); ++i)
      a[shift + i] = ((a[shift + i] - factor * b[i]) % p + p) % p;
    trim(a);
  }
  return a;
}

Poly gcd(Poly a, Poly b, long p) {
  trim(a);
  trim(b);
  while (!b.empty()) {
    Poly r = rem(a, b, p);
    a = std::move(b);
    b = std::move(r);
  }
  if (!a.empty()) {
    long inv = inv_mod(a.back(), p);
    for (auto& c : a) c = c * inv % p;
  }
  return a;
}

}  // namespace fp

Integer eval(const std::vector<Integer>& c, const Integer& x) {
  Integer acc = 0;
  for (auto it = c.rbegin(); it != c.rend(); ++it) acc = acc * x + *it;
  return acc;
}

std::vector<Integer> derivative(const std::vector<Integer>& c) {
  std::vector<Integer> out;
  for (size_t i = 1; i < c.size(); ++i) out.push_back(c[i] * static_cast<long>(i));
  return out;
}

Integer determinant(std::vector<std::vector<Integer>> m) {
  const size_t n = m.size();
  if (n == 0) return 1;
  Integer prev = 1;
  int sign = 1;
  for (size_t k = 0; k + 1 < n; ++k) {
    if (m[k][k] == 0) {
      size_t r = k + 1;
      while (r < n && m[r][k] == 0) ++r;
      if (r == n) return 0;
      std::swap(m[k], m[r]);
      sign = -sign;
    }
    for (size_t i = k + 1; i < n; ++i) {
      for (size_t j = k + 1; j < n; ++j) {
        Integer t = m[i][j] * m[k][k] - m[i][k] * m[k][j];
        mpz_divexact(m[i][j].get_mpz_t(), t.get_mpz_t(), prev.get_mpz_t());
      }
      m[i][k] = 0;
    }
    prev = m[k][k];
  }
  return sign * m[n - 1][n - 1];
}

Integer resultant(std::vector<Integer> f, std::vector<Integer> g) {
  while (!f.empty() && f.back() == 0) f.pop_back();
  while (!g.empty() && g.back() == 0) g.pop_back();
  if (f.empty() || g.empty()) return 0;
  const size_t m = f.size() - 1, n = g.size() - 1;
  if (m == 0) {
    Integer r;
    mpz_pow_ui(r.get_mpz_t(), f[0].get_mpz_t(), n);
    return r;
  }
  if (n == 0) {
    Integer r;
    mpz_pow_ui(r.get_mpz_t(), g[0].get_mpz_t(), m);
    return r;
  }
  const size_t size = m + n;
  std::vector<std::vector<Integer>> s(size, std::vector<Integer>(size, 0));
  // Rows hold descending coefficients, shifted one column per row.
  for (size_t r = 0; r < n; ++r)
    for (size_t i = 0; i <= m; ++i) s[r][r + i] = f[m - i];
  for (size_t r = 0; r < m; ++r)
    for (size_t i = 0; i <= n; ++i) s[n + r][r + i] = g[n - i];
  return determinant(std::move(s));
}

}  // namespace pc
