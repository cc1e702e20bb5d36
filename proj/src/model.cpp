#include "pc/model.hpp"

#include "pc/error.hpp"

#include <cmath>
#include <sstream>

namespace pc {

const char* to_string(ColumnCase c) noexcept {
  switch (c) {
    case ColumnCase::UnitDerivative: return "UnitDerivative";
    case ColumnCase::UnitValue: return "UnitValue";
    case ColumnCase::SimpleZero: return "SimpleZero";
    case ColumnCase::Recurse: return "Recurse";
    case ColumnCase::GuardTruncated: return "GuardTruncated";
  }
  return "?";
}

const char* to_string(UnitSubcase s) noexcept {
  switch (s) {
    case UnitSubcase::None: return "None";
    case UnitSubcase::RegularNotSmooth: return "RegularNotSmooth";
    case UnitSubcase::BlownUpSmooth: return "BlownUpSmooth";
  }
  return "?";
}

CurveInput CurveInput::from_integers(long p, int g, const std::vector<Integer>& a, int precision) {
  std::vector<PadicNumber> coeffs;
  for (const auto& x : a) coeffs.push_back(PadicNumber::from_integer(p, x, precision));
  return from_padics(p, g, coeffs);
}

CurveInput CurveInput::from_padics(long p, int g, const std::vector<PadicNumber>& a) {
  if (!is_prime(p)) fail(ErrorCode::NonPrime, std::to_string(p) + " is not prime");
  if (g < 1) fail(ErrorCode::InvalidArgument, "genus must be at least 1");
  if (static_cast<int>(a.size()) != 2 * g + 1)
    fail(ErrorCode::InvalidArgument, "expected " + std::to_string(2 * g + 1) + " coefficients a_1..a_" +
                                         std::to_string(2 * g + 1) + ", got " + std::to_string(a.size()));
  int precision = kPlusInfinity;
  for (const auto& x : a) {
    if (x.prime() != p) fail(ErrorCode::PrimeMismatch, "curve coefficient prime");
    precision = std::min(precision, x.abs_precision());
  }
  if (precision >= kPlusInfinity) precision = 64;
  CurveInput c;
  c.prime = p;
  c.genus = g;
  c.f.prime = p;
  // a_m is the coefficient of x^(2g+1-m).
  for (int i = 2 * g; i >= 0; --i) c.f.coeffs.push_back(a[static_cast<size_t>(i)]);
  c.f.coeffs.push_back(PadicNumber::from_integer(p, 1, precision));
  return c;
}

CaseInfo classify_values(long p, long a, long b, long c2) {
  auto m = [](long x, long q) { return ((x % q) + q) % q; };
  CaseInfo out;
  const long ap = m(a, p);
  if (m(b, p) != 0) {
    out.kind = ColumnCase::UnitDerivative;
    out.smooth_count = (p == 2 || ap == 0) ? 1 : static_cast<int>(1 + legendre(ap, p));
    return out;
  }
  if (ap != 0) {
    out.kind = ColumnCase::UnitValue;
    if (p != 2) {
      out.smooth_count = static_cast<int>(1 + legendre(ap, p));
      return out;
    }
    if (m(a, 4) == 3) {
      out.subcase = UnitSubcase::RegularNotSmooth;
      return out;
    }
    out.subcase = UnitSubcase::BlownUpSmooth;
    out.patch.a0 = static_cast<int>(((m(a, 8) - 1) / 4) % 2);
    out.patch.b0 = static_cast<int>(m(b, 4) / 2);
    out.patch.c0 = static_cast<int>(m(c2, 2));
    int roots = 0;
    for (int x = 0; x < 2; ++x)
      if ((out.patch.a0 + out.patch.b0 * x + out.patch.c0 * x * x) % 2 == 0) ++roots;
    out.smooth_count = 2 * roots;
    return out;
  }
  if (m(a, p * p) != 0) {
    out.kind = ColumnCase::SimpleZero;
    return out;
  }
  out.kind = ColumnCase::Recurse;
  return out;
}

Integer discriminant(const std::vector<Integer>& f0) {
  std::vector<Integer> f = f0;
  while (!f.empty() && f.back() == 0) f.pop_back();
  if (f.size() < 2) fail(ErrorCode::InvalidArgument, "discriminant needs degree at least 1");
  const long n = static_cast<long>(f.size()) - 1;
  Integer r = resultant(f, derivative(f));
  Integer lead = f.back();
  mpz_divexact(r.get_mpz_t(), r.get_mpz_t(), lead.get_mpz_t());
  if ((n * (n - 1) / 2) % 2 != 0) r = -r;
  return r;
}

PadicNumber discriminant(const PadicPoly& f) {
  int K = kPlusInfinity;
  for (const auto& c : f.coeffs) {
    if (!c.is_zero() && c.valuation() < 0)
      fail(ErrorCode::InvalidArgument, "discriminant needs integral coefficients");
    if (!c.is_zero() || c.abs_precision() < PadicNumber::kExact) K = std::min(K, c.abs_precision());
  }
  if (K >= kPlusInfinity) fail(ErrorCode::InvalidArgument, "zero polynomial");
  std::vector<Integer> reps;
  for (const auto& c : f.coeffs) reps.push_back(c.residue(K));
  // Unit leading coefficient: the representative keeps the degree.
  return PadicNumber::from_integer(f.prime, discriminant(reps), K);
}

ColumnRecord classify_column(const PadicPoly& h, long c, long p) {
  const int need_a = p == 2 ? 3 : 2;
  const int need_b = p == 2 ? 2 : 1;
  const int need_c = p == 2 ? 1 : 0;
  PadicNumber A = taylor_coefficient(h, c, 0);
  PadicNumber B = taylor_coefficient(h, c, 1);
  long a = A.residue(need_a).get_si();
  long b = B.residue(need_b).get_si();
  long c2 = need_c > 0 ? taylor_coefficient(h, c, 2).residue(need_c).get_si() : 0;
  CaseInfo info = classify_values(p, a, b, c2);

  ColumnRecord rec;
  rec.column = c;
  rec.kind = info.kind;
  rec.subcase = info.subcase;
  if (info.subcase == UnitSubcase::BlownUpSmooth) rec.patch = info.patch;
  rec.smooth_count = info.smooth_count;
  rec.value_mod_p = a % p;
  if (info.kind == ColumnCase::Recurse) {
    auto child = std::make_shared<PatchNode>();
    child->h = shift_values(scale_variable(taylor_shift(h, c), 1), -2);
    child->parent_column = c;
    rec.child = child;
  }
  return rec;
}

int default_depth_guard(const CurveInput& curve) {
  PadicNumber d = discriminant(curve.f);
  if (d.is_zero()) fail(ErrorCode::DiscriminantZero, "discriminant vanishes to precision");
  return d.valuation() / 2 + 2;
}

namespace {

struct Builder {
  long p;
  int guard;
  GuardPolicy policy;
  DecentModel* model;

  void build(PatchNode& node) {
    model->max_depth_reached = std::max(model->max_depth_reached, node.depth);
    for (long c = 0; c < p; ++c) {
      ColumnRecord rec = classify_column(node.h, c, p);
      if (rec.kind == ColumnCase::Recurse) {
        if (node.depth + 1 > guard) {
          if (policy == GuardPolicy::Throw)
            fail(ErrorCode::DepthGuardExceeded,
                 "recursion needs depth " + std::to_string(node.depth + 1) + " > guard " +
                     std::to_string(guard));
          rec.kind = ColumnCase::GuardTruncated;
          rec.child.reset();
          ++model->guard_hits;
        } else {
          rec.child->depth = node.depth + 1;
          build(*rec.child);
        }
      }
      model->total_smooth += rec.smooth_count;
      node.columns.push_back(std::move(rec));
    }
  }
};

}  // namespace

DecentModel make_decent_model(const CurveInput& curve, std::optional<int> depth_guard, GuardPolicy policy) {
  if (curve.f.degree() != 2 * curve.genus + 1)
    fail(ErrorCode::InvalidArgument, "f must have degree 2g+1");
  DecentModel model;
  model.prime = curve.prime;
  model.genus = curve.genus;
  PadicNumber disc = discriminant(curve.f);
  if (disc.is_zero()) fail(ErrorCode::DiscriminantZero, "discriminant vanishes to precision");
  model.depth_guard = depth_guard ? *depth_guard : disc.valuation() / 2 + 2;
  model.root = std::make_shared<PatchNode>();
  model.root->h = curve.f;
  model.total_smooth = model.infinity_count;
  Builder b{curve.prime, model.depth_guard, policy, &model};
  b.build(*model.root);
  return model;
}

std::optional<CurvePoint> curve_point_at(const CurveInput& curve, const PadicNumber& x) {
  PadicNumber fx = curve.f(x);
  if (fx.is_zero() || fx.valuation() % 2 != 0) return std::nullopt;
  try {
    return CurvePoint{x, padic_sqrt(fx)};
  } catch (const Error& e) {
    if (e.code() == ErrorCode::NotASquare || e.code() == ErrorCode::InsufficientPrecision)
      return std::nullopt;
    throw;
  }
}

std::optional<CurvePoint> sample_curve_point(const CurveInput& curve, std::mt19937_64& rng, int digits) {
  const long p = curve.prime;
  std::uniform_int_distribution<long> digit(0, p - 1);
  Integer x = 0, scale = 1;
  for (int i = 0; i < digits; ++i) {
    x += scale * digit(rng);
    scale *= p;
  }
  return curve_point_at(curve, PadicNumber::from_integer(p, x, digits));
}

std::string ReducedPoint::to_string() const {
  if (at_infinity) return "infinity";
  std::ostringstream os;
  os << "path[";
  for (size_t i = 0; i < path.size(); ++i) os << (i ? "," : "") << path[i];
  os << "] " << (on_blowup ? "blowup" : "affine") << " (" << x << "," << y << ")";
  return os.str();
}

ReducedPoint reduce_point_at_infinity() {
  ReducedPoint r;
  r.at_infinity = true;
  return r;
}

ReducedPoint reduce_point(const DecentModel& model, const CurvePoint& pt) {
  const long p = model.prime;
  if (pt.x.valuation_bound() < 0) return reduce_point_at_infinity();
  auto off_smooth = [](const std::string& why) -> ReducedPoint {
    fail(ErrorCode::LandsOnNonSmooth, why);
  };
  const PatchNode* node = model.root.get();
  PadicNumber X = pt.x, Y = pt.y;
  ReducedPoint out;
  while (true) {
    long c = X.residue(1).get_si();
    const ColumnRecord& rec = node->columns.at(static_cast<size_t>(c));
    out.path.push_back(c);
    long ybar = Y.residue(1).get_si();
    switch (rec.kind) {
      case ColumnCase::UnitDerivative:
        if ((ybar * ybar - rec.value_mod_p) % p != 0) return off_smooth("point not on the special fiber");
        out.x = c;
        out.y = ybar;
        return out;
      case ColumnCase::UnitValue:
        if (rec.subcase == UnitSubcase::None) {
          if (ybar == 0 || (ybar * ybar - rec.value_mod_p) % p != 0 || rec.smooth_count == 0)
            return off_smooth("unit-value column point not counted");
          out.x = c;
          out.y = ybar;
          return out;
        }
        if (rec.subcase == UnitSubcase::RegularNotSmooth)
          return off_smooth("point on a regular non-smooth column");
        {
          PadicNumber xp = (X - PadicNumber::from_integer(p, c, X.abs_precision())).shifted(-1);
          PadicNumber yp = (Y - PadicNumber::from_integer(p, 1, Y.abs_precision())).shifted(-1);
          long u = xp.residue(1).get_si();
          long w = yp.residue(1).get_si();
          const BlowUpPatch& b = *rec.patch;
          if ((b.a0 + b.b0 * u + b.c0 * u * u) % 2 != 0) return off_smooth("blow-up chart point not counted");
          out.on_blowup = true;
          out.x = u;
          out.y = w;
          return out;
        }
      case ColumnCase::SimpleZero:
        return off_smooth("point on a simple-zero column");
      case ColumnCase::GuardTruncated:
        fail(ErrorCode::DepthGuardExceeded, "point reduces into a truncated column");
      case ColumnCase::Recurse:
        X = (X - PadicNumber::from_integer(p, c, X.abs_precision())).shifted(-1);
        Y = Y.shifted(-1);
        node = rec.child.get();
        break;
    }
  }
}

double height(const std::vector<Integer>& a) {
  double h = 0.0;
  for (size_t m = 1; m <= a.size(); ++m) {
    double v = std::fabs(a[m - 1].get_d());
    if (v > 0) h = std::max(h, std::pow(v, 1.0 / static_cast<double>(m)));
  }
  return h;
}

}  // namespace pc
