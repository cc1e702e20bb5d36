#include "pc/chabauty.hpp"

#include "pc/bounds.hpp"
#include "pc/error.hpp"
#include "pc/poly.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>

namespace pc {

namespace {

// Integer power series modulo (p^K, t^T).
struct Ring {
  Integer P;
  int T;

  using S = std::vector<Integer>;

  S constant(const Integer& c) const {
    S s(static_cast<size_t>(T), 0);
    s[0] = mod(c, P);
    return s;
  }
  S linear(const Integer& c) const {
    S s = constant(c);
    if (T > 1) s[1] = 1;
    return s;
  }
  S add(const S& a, const S& b) const {
    S s(static_cast<size_t>(T));
    for (int i = 0; i < T; ++i) s[i] = mod(a[i] + b[i], P);
    return s;
  }
  S sub(const S& a, const S& b) const {
    S s(static_cast<size_t>(T));
    for (int i = 0; i < T; ++i) s[i] = mod(a[i] - b[i], P);
    return s;
  }
  S scale(const S& a, const Integer& c) const {
    S s(static_cast<size_t>(T));
    for (int i = 0; i < T; ++i) s[i] = mod(a[i] * c, P);
    return s;
  }
  S mul(const S& a, const S& b) const {
    S s(static_cast<size_t>(T), 0);
    for (int i = 0; i < T; ++i) {
      if (a[i] == 0) continue;
      for (int j = 0; i + j < T; ++j) s[i + j] += a[i] * b[j];
    }
    for (auto& x : s) x = mod(x, P);
    return s;
  }
  // Inverse of a series with unit constant term.
  S inverse(const S& a) const {
    S s(static_cast<size_t>(T), 0);
    Integer c0 = inverse_mod(a[0], P);
    s[0] = c0;
    for (int n = 1; n < T; ++n) {
      Integer acc = 0;
      for (int i = 1; i <= n; ++i) acc += a[i] * s[n - i];
      s[n] = mod(-acc * c0, P);
    }
    return s;
  }
  S pow(const S& a, int e) const {
    S s = constant(1);
    for (int i = 0; i < e; ++i) s = mul(s, a);
    return s;
  }
  // poly(x(t)) by Horner.
  S compose(const std::vector<Integer>& poly, const S& x) const {
    S s = constant(0);
    for (auto it = poly.rbegin(); it != poly.rend(); ++it) s = add(mul(s, x), constant(*it));
    return s;
  }
};

std::vector<Integer> reversed_padded(const std::vector<Integer>& c, size_t n) {
  // s^n c(1/s)
  std::vector<Integer> out(n + 1, 0);
  for (size_t i = 0; i < c.size() && i <= n; ++i) out[n - i] = c[i];
  return out;
}

// F(x, y) = y^2 + q(x) y - r(x) modulo p and its partials.
struct FiberAt {
  long F, Fx, Fy;
};

FiberAt fiber_at(const GoodReductionCurve& c, long x, long y) {
  const long p = c.prime;
  Integer X = x, Y = y;
  Integer F = Y * Y + eval(c.q, X) * Y - eval(c.r, X);
  Integer Fx = eval(derivative(c.q), X) * Y - eval(derivative(c.r), X);
  Integer Fy = 2 * Y + eval(c.q, X);
  return {mod(F, p).get_si(), mod(Fx, p).get_si(), mod(Fy, p).get_si()};
}

// Smallest-height fraction n/d congruent to a modulo m with |n|, d <= sqrt(m/2),
// or nullopt when none exists.
std::optional<Rational> reconstruct(const Integer& a, const Integer& m) {
  Integer bound = sqrt(Integer(m / 2));
  Integer r0 = m, r1 = mod(a, m), t0 = 0, t1 = 1;
  while (r1 > bound) {
    Integer q = r0 / r1;
    Integer r2 = r0 - q * r1, t2 = t0 - q * t1;
    r0 = r1;
    r1 = r2;
    t0 = t1;
    t1 = t2;
  }
  if (t1 == 0 || abs(t1) > bound) return std::nullopt;
  Rational out(r1, t1);
  out.canonicalize();
  return out;
}

// The coefficient is a residue of a rational number of small height, so it is
// reported as that rational when reconstruction succeeds.
LeadingTerm leading(const TruncatedSeries& s) {
  for (int n = 0; n < s.truncation(); ++n) {
    const PadicNumber& c = s[n];
    if (c.is_zero()) continue;
    Rational value = c.to_rational();
    if (auto r = reconstruct(c.unit(), power(c.prime(), c.rel_precision()))) {
      value = *r;
      if (c.valuation() >= 0)
        value *= Rational(power(c.prime(), c.valuation()));
      else
        value /= Rational(power(c.prime(), -c.valuation()));
      value.canonicalize();
    }
    return {n, value};
  }
  return {};
}

std::vector<Integer> trimmed(std::vector<Integer> v) {
  while (!v.empty() && v.back() == 0) v.pop_back();
  return v;
}

}  // namespace

const char* to_string(Uniformizer u) noexcept {
  switch (u) {
    case Uniformizer::X: return "x - x0";
    case Uniformizer::Y: return "y - y0";
    case Uniformizer::InfinityT: return "t = y/x^(g+1)";
  }
  return "?";
}

const char* to_string(CheckStatus s) noexcept {
  switch (s) {
    case CheckStatus::Pass: return "pass";
    case CheckStatus::Fail: return "fail";
    case CheckStatus::Inconclusive: return "inconclusive";
  }
  return "?";
}

std::string ResidueDisk::to_string() const {
  if (infinity) return "infinity";
  std::ostringstream os;
  os << "(" << x << "," << y << ")";
  return os.str();
}

GoodReductionCurve GoodReductionCurve::make(long p, int g, std::vector<Integer> q, std::vector<Integer> r) {
  if (!is_prime(p)) fail(ErrorCode::NonPrime, std::to_string(p) + " is not prime");
  if (g < 1) fail(ErrorCode::InvalidArgument, "genus must be at least 1");
  q = trimmed(std::move(q));
  r = trimmed(std::move(r));
  if (static_cast<int>(r.size()) != 2 * g + 2 || r.back() != 1)
    fail(ErrorCode::InvalidArgument, "r must be monic of degree 2g+1 = " + std::to_string(2 * g + 1));
  if (static_cast<int>(q.size()) > g + 1)
    fail(ErrorCode::InvalidArgument, "q must have degree at most g = " + std::to_string(g));
  GoodReductionCurve c;
  c.prime = p;
  c.genus = g;
  c.q = std::move(q);
  c.r = std::move(r);
  return c;
}

bool GoodReductionCurve::has_good_reduction() const {
  const long p = prime;
  if (p == 2) {
    // Singular points lie over common roots of q and q'^2 r + r'^2.
    fp::Poly qb = fp::reduce(q, 2);
    if (qb.empty()) return false;
    fp::Poly rb = fp::reduce(r, 2);
    fp::Poly dq = fp::derivative(qb, 2), dr = fp::derivative(rb, 2);
    fp::Poly h = fp::add(fp::mul(fp::mul(dq, dq, 2), rb, 2), fp::mul(dr, dr, 2), 2);
    fp::Poly g = fp::gcd(qb, h, 2);
    return g.size() == 1;
  }
  // f = r + q^2/4 must be separable mod p (infinity is always smooth).
  std::vector<Integer> f = r;
  Integer inv4 = inverse_mod(4, p);
  std::vector<Integer> q2(q.size() * 2, 0);
  for (size_t i = 0; i < q.size(); ++i)
    for (size_t j = 0; j < q.size(); ++j) q2[i + j] += q[i] * q[j];
  if (f.size() < q2.size()) f.resize(q2.size(), 0);
  for (size_t i = 0; i < q2.size(); ++i) f[i] += q2[i] * inv4;
  fp::Poly fb = fp::reduce(f, p);
  fp::Poly g = fp::gcd(fb, fp::derivative(fb, p), p);
  return static_cast<int>(fb.size()) == 2 * genus + 2 && g.size() == 1;
}

void GoodReductionCurve::require_good_reduction() const {
  if (!has_good_reduction())
    fail(ErrorCode::BadReduction, "the special fiber at p = " + std::to_string(prime) + " is singular");
}

std::vector<ResidueDisk> residue_disks(const GoodReductionCurve& curve) {
  curve.require_good_reduction();
  const long p = curve.prime;
  std::vector<ResidueDisk> out;
  for (long x = 0; x < p; ++x)
    for (long y = 0; y < p; ++y) {
      FiberAt f = fiber_at(curve, x, y);
      if (f.F != 0) continue;
      ResidueDisk d;
      d.x = x;
      d.y = y;
      d.uniformizer = f.Fy != 0 ? Uniformizer::X : Uniformizer::Y;
      out.push_back(d);
    }
  ResidueDisk inf;
  inf.infinity = true;
  inf.uniformizer = Uniformizer::InfinityT;
  out.push_back(inf);
  return out;
}

DiskExpansion expand_at_disk(const GoodReductionCurve& curve, const ResidueDisk& disk, int T, int precision) {
  const long p = curve.prime;
  const int g = curve.genus;
  if (T < 2 * g + 2)
    fail(ErrorCode::InsufficientTruncation, "truncation must be at least 2g+2 = " + std::to_string(2 * g + 2));
  const int K = precision > 0 ? precision : T + 16;
  Ring R{power(p, K), T};
  using S = Ring::S;

  DiskExpansion out;
  out.disk = disk;
  out.truncation = T;
  out.precision = K;
  std::vector<S> w;
  const int max_iter = 80;

  auto converge = [&](auto step, S start) {
    S cur = std::move(start);
    for (int i = 0; i < max_iter; ++i) {
      S next = step(cur);
      if (next == cur) return cur;
      cur = std::move(next);
    }
    fail(ErrorCode::PrecisionExhausted, "Newton iteration for the disk parametrization did not settle");
  };

  if (disk.infinity) {
    const size_t n = static_cast<size_t>(2 * g + 2);
    std::vector<Integer> Qinf = reversed_padded(curve.q, static_cast<size_t>(g + 1));
    std::vector<Integer> Rinf = reversed_padded(curve.r, n);
    std::vector<Integer> dQ = derivative(Qinf), dR = derivative(Rinf);
    S t = R.linear(0);
    S t2 = R.mul(t, t);
    auto Gs = [&](const S& s) { return R.sub(R.mul(R.compose(dQ, s), t), R.compose(dR, s)); };
    S s = converge(
        [&](const S& s) {
          S G = R.sub(R.add(t2, R.mul(R.compose(Qinf, s), t)), R.compose(Rinf, s));
          return R.sub(s, R.mul(G, R.inverse(Gs(s))));
        },
        R.constant(0));
    S inv = R.inverse(R.scale(Gs(s), -1));
    for (int j = 1; j <= g; ++j) w.push_back(R.mul(R.pow(s, j - 1), inv));
    out.coordinate = s;
  } else if (disk.uniformizer == Uniformizer::X) {
    S X = R.linear(disk.x);
    S qX = R.compose(curve.q, X), rX = R.compose(curve.r, X);
    auto Fy = [&](const S& y) { return R.add(R.scale(y, 2), qX); };
    S Y = converge(
        [&](const S& y) {
          S F = R.sub(R.add(R.mul(y, y), R.mul(qX, y)), rX);
          return R.sub(y, R.mul(F, R.inverse(Fy(y))));
        },
        R.constant(disk.y));
    S inv = R.scale(R.inverse(Fy(Y)), -1);
    for (int j = 1; j <= g; ++j) w.push_back(R.mul(R.pow(X, g - j), inv));
    out.coordinate = Y;
  } else {
    S Y = R.linear(disk.y);
    std::vector<Integer> dq = derivative(curve.q), dr = derivative(curve.r);
    auto Fx = [&](const S& x) { return R.sub(R.mul(R.compose(dq, x), Y), R.compose(dr, x)); };
    S X = converge(
        [&](const S& x) {
          S F = R.sub(R.add(R.mul(Y, Y), R.mul(R.compose(curve.q, x), Y)), R.compose(curve.r, x));
          return R.sub(x, R.mul(F, R.inverse(Fx(x))));
        },
        R.constant(disk.x));
    // dx/(2y+q) = -dy/F_x, so omega_j = x^(g-j) dy / F_x.
    S inv = R.inverse(Fx(X));
    for (int j = 1; j <= g; ++j) w.push_back(R.mul(R.pow(X, g - j), inv));
    out.coordinate = X;
  }

  for (const auto& c : w) out.w.push_back(TruncatedSeries::from_integers(p, c, K, TailBound::integral()));
  out.n_D = n_and_N(newton_polygon(out.w)).n;
  return out;
}

bool HypothesesReport::all_pass() const {
  return std::all_of(checks.begin(), checks.end(), [](const HypothesisCheck& c) { return c.status == CheckStatus::Pass; });
}

HypothesesReport verify_hypotheses(const GoodReductionCurve& curve) {
  if (curve.prime != 2) fail(ErrorCode::InvalidArgument, "hypothesis checks are stated for p = 2");
  HypothesesReport rep;
  const int g = curve.genus;

  bool smooth = curve.has_good_reduction();
  rep.checks.push_back({"SmoothSpecialFiber", smooth ? CheckStatus::Pass : CheckStatus::Fail,
                        smooth ? "special fiber is smooth" : "special fiber is singular"});

  std::vector<std::string> affine;
  for (long x = 0; x < 2; ++x)
    for (long y = 0; y < 2; ++y)
      if (fiber_at(curve, x, y).F == 0) affine.push_back("(" + std::to_string(x) + "," + std::to_string(y) + ")");
  {
    std::string detail = "C(F_2) = {infinity";
    for (const auto& s : affine) detail += ", " + s;
    detail += "}";
    rep.checks.push_back({"SingleDisk", affine.empty() ? CheckStatus::Pass : CheckStatus::Fail, detail});
  }

  fp::Poly qb = fp::reduce(curve.q, 2);
  bool involution_ok = qb.size() == 1;
  rep.checks.push_back({"InvolutionFixesOnlyInfinity", involution_ok ? CheckStatus::Pass : CheckStatus::Fail,
                        involution_ok ? "q is a nonzero constant mod 2"
                                      : "q mod 2 has a root over the algebraic closure of F_2"});

  // Completed square f = r + q^2/4 over Q_2.
  std::vector<Rational> f(curve.r.begin(), curve.r.end());
  for (size_t i = 0; i < curve.q.size(); ++i)
    for (size_t j = 0; j < curve.q.size(); ++j) {
      if (i + j >= f.size()) f.resize(i + j + 1, 0);
      f[i + j] += Rational(curve.q[i] * curve.q[j], 4);
    }
  for (auto& c : f) c.canonicalize();
  HypothesisCheck irr{"NewtonPolygonIrreducible", CheckStatus::Inconclusive, ""};
  if (f[0] != 0) {
    NewtonPolygon np = newton_polygon(TruncatedSeries::from_rationals(2, f, 64));
    std::ostringstream os;
    os << "Newton polygon vertices:";
    for (const auto& v : np.vertices) os << " (" << v.n << "," << v.v << ")";
    if (np.vertices.size() == 2 && np.vertices.front().n == 0 && np.vertices.back().n == 2 * g + 1) {
      int dx = np.vertices.back().n - np.vertices.front().n;
      int dy = std::abs(np.vertices.back().v - np.vertices.front().v);
      if (std::gcd(dx, dy) == 1) {
        irr.status = CheckStatus::Pass;
        os << "; single segment without interior lattice points";
      } else {
        os << "; segment has interior lattice points";
      }
    } else {
      os << "; more than one segment";
    }
    irr.detail = os.str();
  } else {
    irr.detail = "f has a root at 0";
  }
  rep.checks.push_back(irr);
  return rep;
}

DiskResult analyze_disk(const GoodReductionCurve& curve, const ResidueDisk& disk, const DiskOptions& options,
                        const std::vector<Rational>* constants) {
  const long p = curve.prime;
  const int g = curve.genus;
  int T = options.truncation > 0 ? options.truncation : 4 * g + 6;
  while (true) {
    try {
      DiskExpansion e = expand_at_disk(curve, disk, T);
      SeriesVector ell = formal_integrate(e.w);
      if (constants) {
        if (static_cast<int>(constants->size()) != g)
          fail(ErrorCode::InvalidArgument, "expected one integration constant per form");
        for (int j = 0; j < g; ++j) {
          std::vector<PadicNumber> c = ell[j].coeffs();
          const Rational& k = (*constants)[static_cast<size_t>(j)];
          // User constants are exact rationals; an exact zero keeps the common
          // factor t visible to the image computation.
          c[0] = k == 0 ? PadicNumber::zero(p) : PadicNumber::make(p, k.get_num(), k.get_den(), e.precision);
          ell[j] = TruncatedSeries(p, std::move(c), ell[j].tail());
        }
      }
      DiskResult r;
      r.disk = disk;
      r.n_D = e.n_D;
      r.bound = p * (e.n_D + 1 + delta(p, e.n_D)) + 1;
      r.truncation = T;
      for (const auto& s : ell) r.ell_leading.push_back(leading(s));
      r.image = image_of_series_on_pZp(ell, e.precision, ell.front().truncation());
      return r;
    } catch (const Error& err) {
      switch (err.code()) {
        case ErrorCode::UncertifiableHull:
        case ErrorCode::MinimumNotAttained:
        case ErrorCode::NUndefined:
        case ErrorCode::InsufficientTruncation:
        case ErrorCode::PrecisionExhausted:
        case ErrorCode::InsufficientPrecision:
          if (2 * T > options.max_truncation) throw;
          T *= 2;
          break;
        default:
          throw;
      }
    }
  }
}

RhoLogResult analyze_residue_disks(const GoodReductionCurve& curve, const DiskOptions& options) {
  std::vector<ResidueDisk> disks = residue_disks(curve);
  RhoLogResult res;
  res.prime = curve.prime;
  res.genus = curve.genus;
  for (size_t i = 0; i < disks.size(); ++i) {
    auto it = options.constants.find(i);
    res.disks.push_back(analyze_disk(curve, disks[i], options, it == options.constants.end() ? nullptr : &it->second));
  }
  for (const auto& d : res.disks) {
    res.sum_n_D += d.n_D;
    res.union_points.insert(res.union_points.end(), d.image.points.begin(), d.image.points.end());
  }
  std::sort(res.union_points.begin(), res.union_points.end());
  res.union_points.erase(std::unique(res.union_points.begin(), res.union_points.end()), res.union_points.end());
  res.curve_bound = curve_image_bound(curve.prime, static_cast<long>(disks.size()), curve.genus);
  res.full_image = disks.size() == 1;
  return res;
}

RhoLogResult rholog_single_disk_curve(const GoodReductionCurve& curve, const DiskOptions& options) {
  if (curve.prime != 2) fail(ErrorCode::InvalidArgument, "single-disk rho o log is implemented for p = 2");
  HypothesesReport rep = verify_hypotheses(curve);
  for (const auto& c : rep.checks)
    if (c.status == CheckStatus::Fail) {
      std::string name = c.name == "SingleDisk" ? "MultipleDisks" : c.name;
      fail(ErrorCode::HypothesisFailed, name + ": " + c.detail);
    }
  RhoLogResult res = analyze_residue_disks(curve, options);
  res.hypotheses = rep;
  return res;
}

}  // namespace pc
