#include "pc/series.hpp"

#include "pc/error.hpp"

#include <algorithm>

namespace pc {

namespace {

int clamp_ll(long long x) {
  if (x >= kPlusInfinity) return kPlusInfinity;
  if (x <= kMinusInfinity) return kMinusInfinity;
  return static_cast<int>(x);
}

// Combine two tails into one that bounds both.
TailBound tail_min(const TailBound& a, const TailBound& b) {
  if (!a.known || !b.known) return TailBound::unknown();
  if (a.exact) return b;
  if (b.exact) return a;
  return TailBound::linear(std::min(a.offset, b.offset), std::min(a.slope, b.slope),
                           std::max(a.log_loss, b.log_loss));
}

// Lower bound for every coefficient, truncated part and tail together.
int overall_min(const TruncatedSeries& s) {
  return std::min(s.min_valuation(), s.tail().min_from(s.prime(), s.truncation()));
}

// Extended rational used for hull slopes: kind -1 = -inf, +1 = +inf.
struct Slope {
  int kind = 0;
  Rational value = 0;
  static Slope minus_inf() { return {-1, 0}; }
  static Slope plus_inf() { return {1, 0}; }
  static Slope of(const Rational& q) { return {0, q}; }
};

bool less(const Slope& a, const Slope& b) {
  if (a.kind != b.kind) return a.kind < b.kind;
  if (a.kind != 0) return false;
  return a.value < b.value;
}

Slope min_slope(const Slope& a, const Slope& b) { return less(b, a) ? b : a; }
Slope max_slope(const Slope& a, const Slope& b) { return less(a, b) ? b : a; }

// inf over m >= T of (tail(m) - v) / (m - n), where n < T.
Slope tail_ratio_inf(const TailBound& tail, long p, long T, long n, int v) {
  if (!tail.known) return Slope::minus_inf();
  if (tail.exact) return Slope::plus_inf();
  auto ratio = [&](const Integer& m, int logs) {
    Integer num = Integer(tail.offset) + Integer(tail.slope) * m - Integer(tail.log_loss) * logs - v;
    return Rational(num, m - n);
  };
  Slope best = Slope::of(Rational(tail.slope));
  best = min_slope(best, Slope::of(ratio(Integer(T), floor_log(p, T))));
  if (tail.log_loss > 0) {
    Integer pj = p;
    for (int j = 1; j < 200; ++j, pj *= p) {
      if (pj <= T) continue;
      best = min_slope(best, Slope::of(ratio(pj, j)));
      if (pj > Integer(1) << 80) break;
    }
  }
  best.value.canonicalize();
  return best;
}

}  // namespace

int TailBound::at(long p, long n) const {
  if (!known) return kMinusInfinity;
  if (exact) return kPlusInfinity;
  long long logs = log_loss > 0 ? floor_log(p, std::max(n, 1L)) : 0;
  return clamp_ll(static_cast<long long>(offset) + static_cast<long long>(slope) * n -
                  static_cast<long long>(log_loss) * logs);
}

int TailBound::min_from(long p, long from) const {
  if (!known) return kMinusInfinity;
  if (exact) return kPlusInfinity;
  from = std::max(from, 1L);
  if (slope < 0 || (slope == 0 && log_loss > 0)) return kMinusInfinity;
  int best = at(p, from);
  if (log_loss == 0) return best;
  // Between powers of p the bound increases; drops happen only at p^j.
  long long pj = p;
  for (int j = 1; pj < (1LL << 50); ++j, pj *= p) {
    if (pj <= from) continue;
    best = std::min(best, at(p, static_cast<long>(pj)));
  }
  return best;
}

TruncatedSeries::TruncatedSeries(long p, std::vector<PadicNumber> coeffs, TailBound tail)
    : p_(p), coeffs_(std::move(coeffs)), tail_(tail) {
  if (coeffs_.empty()) fail(ErrorCode::InvalidArgument, "truncation order must be at least 1");
  for (const auto& c : coeffs_)
    if (c.prime() != p_) fail(ErrorCode::PrimeMismatch, "series coefficient prime");
}

TruncatedSeries TruncatedSeries::from_integers(long p, const std::vector<Integer>& c,
                                               int abs_precision, TailBound tail) {
  std::vector<PadicNumber> out;
  for (const auto& x : c) out.push_back(PadicNumber::from_integer(p, x, abs_precision));
  return TruncatedSeries(p, std::move(out), tail);
}

TruncatedSeries TruncatedSeries::from_rationals(long p, const std::vector<Rational>& c,
                                                int abs_precision, TailBound tail) {
  std::vector<PadicNumber> out;
  for (const auto& x : c)
    out.push_back(PadicNumber::make(p, x.get_num(), x.get_den(), abs_precision));
  return TruncatedSeries(p, std::move(out), tail);
}

bool TruncatedSeries::all_zero() const {
  return std::all_of(coeffs_.begin(), coeffs_.end(), [](const PadicNumber& c) { return c.is_zero(); });
}

int TruncatedSeries::min_valuation() const {
  int m = kPlusInfinity;
  for (const auto& c : coeffs_) m = std::min(m, c.valuation_bound());
  return m;
}

TruncatedSeries TruncatedSeries::substitute_scaled(int k) const {
  TruncatedSeries out = *this;
  for (size_t n = 0; n < out.coeffs_.size(); ++n)
    out.coeffs_[n] = out.coeffs_[n].shifted(static_cast<int>(n) * k);
  if (out.tail_.known && !out.tail_.exact) out.tail_.slope += k;
  return out;
}

TruncatedSeries TruncatedSeries::shifted(int k) const {
  TruncatedSeries out = *this;
  for (auto& c : out.coeffs_) c = c.shifted(k);
  if (out.tail_.known && !out.tail_.exact) out.tail_.offset += k;
  return out;
}

TruncatedSeries TruncatedSeries::divided_by_t() const {
  if (!coeffs_[0].is_zero() || coeffs_[0].abs_precision() < PadicNumber::kExact)
    fail(ErrorCode::InvalidArgument, "division by t needs an exactly zero constant term");
  if (coeffs_.size() < 2) fail(ErrorCode::InsufficientTruncation, "nothing left after division by t");
  TruncatedSeries out = *this;
  out.coeffs_.erase(out.coeffs_.begin());
  if (out.tail_.known && !out.tail_.exact)
    out.tail_.offset = out.tail_.offset + out.tail_.slope - out.tail_.log_loss;
  return out;
}

TruncatedSeries TruncatedSeries::truncated(int T) const {
  if (T >= truncation()) return *this;
  if (T < 1) fail(ErrorCode::InvalidArgument, "truncation order must be at least 1");
  TruncatedSeries out = *this;
  out.coeffs_.resize(static_cast<size_t>(T));
  if (!tail_.known) return out;
  TailBound t = tail_;
  bool dropped_nonzero = false;
  int dropped_min = kPlusInfinity;
  for (int n = T; n < truncation(); ++n) {
    const auto& c = coeffs_[static_cast<size_t>(n)];
    if (c.is_zero() && c.abs_precision() >= PadicNumber::kExact) continue;
    dropped_nonzero = true;
    int lo = c.valuation_bound();
    if (!t.exact) {
      long long logs = t.log_loss > 0 ? floor_log(p_, n) : 0;
      lo = clamp_ll(static_cast<long long>(lo) - static_cast<long long>(t.slope) * n +
                    static_cast<long long>(t.log_loss) * logs);
    }
    dropped_min = std::min(dropped_min, lo);
  }
  if (!dropped_nonzero) return out;
  if (t.exact)
    t = TailBound::linear(dropped_min, 0);
  else
    t.offset = std::min(t.offset, dropped_min);
  out.tail_ = t;
  return out;
}

TruncatedSeries operator+(const TruncatedSeries& a0, const TruncatedSeries& b0) {
  if (a0.p_ != b0.p_) fail(ErrorCode::PrimeMismatch, "series sum");
  int T = std::min(a0.truncation(), b0.truncation());
  TruncatedSeries a = a0.truncated(T), b = b0.truncated(T);
  std::vector<PadicNumber> c;
  for (int n = 0; n < T; ++n) c.push_back(a[n] + b[n]);
  return TruncatedSeries(a.p_, std::move(c), tail_min(a.tail_, b.tail_));
}

TruncatedSeries operator-(const TruncatedSeries& a, const TruncatedSeries& b) {
  TruncatedSeries neg = b;
  for (auto& c : neg.coeffs_) c = -c;
  return a + neg;
}

TruncatedSeries operator*(const TruncatedSeries& a0, const TruncatedSeries& b0) {
  if (a0.p_ != b0.p_) fail(ErrorCode::PrimeMismatch, "series product");
  const long p = a0.p_;
  // The product's truncation is limited by the shorter factor unless the
  // shorter factor is an exact polynomial.
  int T = std::min(a0.truncation(), b0.truncation());
  if (a0.tail_.exact && b0.tail_.exact) T = std::max(a0.truncation(), b0.truncation());
  else if (a0.tail_.exact) T = b0.truncation();
  else if (b0.tail_.exact) T = a0.truncation();
  std::vector<PadicNumber> c(static_cast<size_t>(T), PadicNumber::zero(p));
  for (int i = 0; i < std::min(T, a0.truncation()); ++i)
    for (int j = 0; j < b0.truncation() && i + j < T; ++j)
      c[static_cast<size_t>(i + j)] += a0[i] * b0[j];
  TailBound tail;
  if (a0.tail_.exact && b0.tail_.exact && a0.truncation() + b0.truncation() - 1 <= T) {
    tail = TailBound::polynomial();
  } else {
    int ma = overall_min(a0), mb = overall_min(b0);
    if (ma > kMinusInfinity && mb > kMinusInfinity)
      tail = TailBound::linear(sat_add(ma, mb), 0);
  }
  return TruncatedSeries(p, std::move(c), tail);
}

int NewtonPolygon::lower_bound_at(long n) const {
  if (n < truncation) {
    for (const auto& pt : points)
      if (pt.n == n) return pt.lo;
    return kPlusInfinity;
  }
  int m = kPlusInfinity;
  for (const auto& t : tails) m = std::min(m, t.at(prime, n));
  return m;
}

NewtonPolygon newton_polygon(const SeriesVector& w0) {
  if (w0.empty()) fail(ErrorCode::InvalidArgument, "empty series vector");
  const long p = w0.front().prime();
  int T = w0.front().truncation();
  for (const auto& s : w0) {
    if (s.prime() != p) fail(ErrorCode::PrimeMismatch, "series vector prime");
    T = std::min(T, s.truncation());
  }
  SeriesVector w;
  for (const auto& s : w0) w.push_back(s.truncated(T));

  NewtonPolygon np;
  np.prime = p;
  np.truncation = T;
  for (const auto& s : w) np.tails.push_back(s.tail());

  for (int n = 0; n < T; ++n) {
    int lo = kPlusInfinity, hi = kPlusInfinity;
    for (const auto& s : w) {
      const auto& c = s[n];
      lo = std::min(lo, c.valuation_bound());
      if (!c.is_zero()) hi = std::min(hi, c.valuation());
    }
    if (lo < kPlusInfinity) np.points.push_back({n, lo, hi});
  }

  std::vector<std::pair<int, int>> known;
  for (const auto& pt : np.points)
    if (pt.hi < kPlusInfinity) known.emplace_back(pt.n, pt.hi);
  if (known.empty()) fail(ErrorCode::AllZeroToPrecision, "every coefficient is zero to precision");

  // Lower convex hull by monotone chain; collinear interior points removed.
  std::vector<std::pair<int, int>> hull;
  for (const auto& c : known) {
    while (hull.size() >= 2) {
      const auto& a = hull[hull.size() - 2];
      const auto& b = hull.back();
      long long lhs = static_cast<long long>(b.second - a.second) * (c.first - a.first);
      long long rhs = static_cast<long long>(c.second - a.second) * (b.first - a.first);
      if (lhs >= rhs)
        hull.pop_back();
      else
        break;
    }
    hull.push_back(c);
  }

  // A vertex is stable when some line through it lies strictly below every
  // other possible point, whatever the unknown digits turn out to be.
  bool any_stable = false;
  for (const auto& [n, v] : hull) {
    bool exact_here = false;
    Slope low = Slope::minus_inf(), high = Slope::plus_inf();
    for (const auto& pt : np.points) {
      if (pt.n == n) {
        exact_here = pt.lo == pt.hi;
        continue;
      }
      if (pt.n < n)
        low = max_slope(low, Slope::of(Rational(v - pt.lo, n - pt.n)));
      else
        high = min_slope(high, Slope::of(Rational(pt.lo - v, pt.n - n)));
    }
    for (const auto& t : np.tails) high = min_slope(high, tail_ratio_inf(t, p, T, n, v));
    bool stable = exact_here && less(low, high);
    any_stable = any_stable || stable;
    np.vertices.push_back({n, v, stable});
  }
  if (!any_stable) fail(ErrorCode::UncertifiableHull, "no hull vertex is certified by the coefficient precision");
  return np;
}

NAndN n_and_N(const NewtonPolygon& np) {
  if (np.vertices.empty()) fail(ErrorCode::MinimumNotAttained, "empty Newton polygon");
  int y = kPlusInfinity;
  for (const auto& v : np.vertices) y = std::min(y, v.v);
  int n = -1;
  for (const auto& v : np.vertices)
    if (v.v == y) {
      n = v.n;
      break;
    }
  int tail_min = kPlusInfinity;
  for (const auto& t : np.tails) tail_min = std::min(tail_min, t.min_from(np.prime, np.truncation));

  for (const auto& pt : np.points) {
    if (pt.n == n && pt.lo != pt.hi)
      fail(ErrorCode::MinimumNotAttained, "minimum point is not known exactly");
    if (pt.n < n && pt.lo <= y)
      fail(ErrorCode::MinimumNotAttained, "a lower point before the minimum cannot be excluded");
    if (pt.n > n && pt.lo < y)
      fail(ErrorCode::MinimumNotAttained, "a lower point after the minimum cannot be excluded");
  }
  if (tail_min < y) fail(ErrorCode::MinimumNotAttained, "the tail may dip below the minimum");

  int N = n;
  for (const auto& pt : np.points)
    if (pt.hi == y) N = std::max(N, pt.n);
  bool certified = tail_min > y;
  for (const auto& pt : np.points)
    if (pt.n > N && pt.lo <= y) certified = false;
  NAndN out{n, std::nullopt, y};
  if (certified) out.N = N;
  return out;
}

int count_zeros_unit_disk(const TruncatedSeries& w) { return n_and_N(newton_polygon(w)).n; }

WeierstrassFactorization weierstrass_prepare(const TruncatedSeries& L, int M, int T) {
  const long p = L.prime();
  if (T < 1 || T > L.truncation())
    fail(ErrorCode::InsufficientTruncation, "t-precision exceeds the series truncation");
  NAndN nn = n_and_N(newton_polygon(L));
  if (!nn.N) fail(ErrorCode::NUndefined, "N_L is not certified within the truncation");
  const int N = *nn.N;
  const int m = nn.height;
  if (N >= T) fail(ErrorCode::InsufficientTruncation, "t-precision must exceed N_L");
  if (M <= m) fail(ErrorCode::PrecisionExhausted, "p-precision does not exceed the content");
  for (int n = 0; n < T; ++n)
    if (L[n].abs_precision() < M)
      fail(ErrorCode::PrecisionExhausted,
           "coefficient " + std::to_string(n) + " is known only modulo p^" +
               std::to_string(L[n].abs_precision()));

  const int R = M - m;
  const Integer modulus = power(p, R);
  std::vector<Integer> P(static_cast<size_t>(T));
  for (int n = 0; n < T; ++n) P[n] = L[n].shifted(-m).residue(R);

  const Integer a = P[N];
  const Integer ainv = inverse_mod(a, modulus);
  std::vector<Integer> f(static_cast<size_t>(N + 1));
  for (int i = 0; i <= N; ++i) f[i] = mod(P[i] * ainv, modulus);
  std::vector<Integer> u(static_cast<size_t>(T), 0);
  u[0] = a;

  // Linear Hensel iteration: each step gains one p-adic digit.
  bool converged = false;
  for (int iter = 0; iter <= R + 5; ++iter) {
    std::vector<Integer> E = P;
    for (int i = 0; i <= N; ++i)
      for (int j = 0; i + j < T; ++j) E[i + j] -= f[i] * u[j];
    bool zero = true;
    for (auto& e : E) {
      e = mod(e, modulus);
      if (e != 0) zero = false;
    }
    if (zero) {
      converged = true;
      break;
    }
    std::vector<Integer> q(static_cast<size_t>(T), 0);
    for (int i = T - 1; i >= N; --i) {
      Integer c = E[i];
      if (c == 0) continue;
      q[i - N] = c;
      for (int k = 0; k <= N; ++k) E[i - N + k] = mod(E[i - N + k] - c * f[k], modulus);
    }
    for (int i = 0; i < N; ++i) f[i] = mod(f[i] + E[i] * ainv, modulus);
    for (int i = 0; i < T; ++i) u[i] = mod(u[i] + q[i], modulus);
  }
  if (!converged) fail(ErrorCode::PrecisionExhausted, "preparation iteration did not converge");

  const Integer c0 = u[0];
  const Integer c0inv = inverse_mod(c0, modulus);
  for (auto& x : u) x = mod(x * c0inv, modulus);
  for (auto& x : f) x = mod(x * c0, modulus);

  WeierstrassFactorization out;
  out.M = M;
  out.T = T;
  out.degree = N;
  out.poly_part.prime = p;
  for (const auto& x : f) out.poly_part.coeffs.push_back(PadicNumber::from_integer(p, x, R).shifted(m));
  std::vector<PadicNumber> uc;
  for (const auto& x : u) uc.push_back(PadicNumber::from_integer(p, x, R));
  out.unit_part = TruncatedSeries(p, std::move(uc), TailBound::linear(1, 0));
  return out;
}

TruncatedSeries formal_integrate(const TruncatedSeries& w) {
  const long p = w.prime();
  std::vector<PadicNumber> c;
  c.push_back(PadicNumber::zero(p));
  for (int n = 0; n < w.truncation(); ++n) c.push_back(w[n].divided_by(n + 1));
  TailBound t = w.tail();
  if (t.known && !t.exact) t = TailBound::linear(t.offset - t.slope, t.slope, t.log_loss + 1);
  return TruncatedSeries(p, std::move(c), t);
}

SeriesVector formal_integrate(const SeriesVector& w) {
  SeriesVector out;
  for (const auto& s : w) out.push_back(formal_integrate(s));
  return out;
}

int delta(long p, long n) {
  if (n < 0) fail(ErrorCode::InvalidArgument, "delta needs n >= 0");
  const int base = valuation(static_cast<long long>(n + 1), p);
  int best = 0;
  // v_p(n+d+1) >= d forces p^d <= n+d+1.
  for (long d = 0; d <= floor_log(p, n + d + 1); ++d)
    if (base + d <= valuation(static_cast<long long>(n + d + 1), p)) best = static_cast<int>(d);
  return best;
}

}  // namespace pc
