#include "pc/projred.hpp"

#include <algorithm>
#include <sstream>

namespace pc {

ProjPointFp ProjPointFp::normalized(long p, std::vector<long> coords) {
  for (auto& c : coords) c = ((c % p) + p) % p;
  auto first = std::find_if(coords.begin(), coords.end(), [](long c) { return c != 0; });
  if (first == coords.end()) fail(ErrorCode::AllZeroToPrecision, "zero vector has no projective reduction");
  long inv = static_cast<long>(mpz_class(inverse_mod(*first, p)).get_si());
  for (auto& c : coords) c = static_cast<long>((static_cast<long long>(c) * inv) % p);
  return {p, std::move(coords)};
}

std::string ProjPointFp::to_string() const {
  std::ostringstream os;
  os << "(";
  for (size_t i = 0; i < coords.size(); ++i) os << (i ? ":" : "") << coords[i];
  os << ")";
  return os.str();
}

ProjPointFp rho(const std::vector<PadicNumber>& v) {
  if (v.empty()) fail(ErrorCode::InvalidArgument, "rho of an empty vector");
  const long p = v.front().prime();
  int mu = kPlusInfinity;
  for (const auto& x : v) {
    if (x.prime() != p) fail(ErrorCode::PrimeMismatch, "rho");
    if (!x.is_zero()) mu = std::min(mu, x.valuation());
  }
  if (mu == kPlusInfinity) fail(ErrorCode::AllZeroToPrecision, "every entry is zero to precision");
  std::vector<long> coords;
  for (const auto& x : v) {
    if (x.abs_precision() <= mu)
      fail(ErrorCode::InsufficientPrecision, "an entry is not known past the minimal valuation");
    coords.push_back(static_cast<long>(x.shifted(-mu).residue(1).get_si()));
  }
  return ProjPointFp::normalized(p, std::move(coords));
}

const char* to_string(Domain d) noexcept {
  switch (d) {
    case Domain::P1: return "P1";
    case Domain::Zp: return "Zp";
    case Domain::pZp: return "pZp";
  }
  return "?";
}

const char* to_string(Chart c) noexcept { return c == Chart::Affine ? "affine" : "infinity"; }

namespace {

struct Disk {
  std::vector<PadicPoly> local;  // components in the local coordinate of the disk
  Integer center;
  int radius;
};

// Largest valuation among nonzero pairwise resultants of the integrally
// rescaled components; nullopt when every pairwise resultant vanishes.
std::optional<int> max_resultant_valuation(long p, const std::vector<PadicPoly>& f) {
  int lowest = kPlusInfinity, precision = kPlusInfinity;
  for (const auto& h : f)
    for (const auto& c : h.coeffs) {
      lowest = std::min(lowest, c.valuation_bound());
      if (!c.is_zero() || c.abs_precision() < PadicNumber::kExact)
        precision = std::min(precision, c.abs_precision());
    }
  if (lowest == kPlusInfinity) return std::nullopt;
  // Digits known after rescaling so the smallest coefficient is a unit.
  int K = precision >= kPlusInfinity ? 64 : precision - lowest;
  K = std::max(K, 1);
  const Integer modulus = power(p, K);
  std::vector<std::vector<Integer>> reps;
  for (const auto& h : f) {
    std::vector<Integer> r;
    for (const auto& c : h.coeffs) {
      PadicNumber s = c.shifted(-lowest);
      r.push_back(s.is_zero() ? Integer(0) : mod(s.to_rational().get_num(), modulus));
    }
    reps.push_back(std::move(r));
  }
  std::optional<int> best;
  for (size_t i = 0; i < reps.size(); ++i)
    for (size_t j = i + 1; j < reps.size(); ++j) {
      Integer r = mod(resultant(reps[i], reps[j]), modulus);
      if (r == 0) continue;
      int v = valuation(r, p);
      if (!best || v > *best) best = v;
    }
  return best;
}

long eval_mod_p(const std::vector<long>& c, long s, long p) {
  long long acc = 0;
  for (auto it = c.rbegin(); it != c.rend(); ++it) acc = (acc * s + *it) % p;
  return static_cast<long>(acc);
}

// Subdivide the chart starting from the disk center0 + p^radius0 Z_p.
void subdivide(long p, const std::vector<PadicPoly>& F, Chart chart, int radius0, int guard,
               ReductionImage& out, bool& exceeded) {
  std::vector<Disk> stack;
  stack.push_back({{}, 0, radius0});
  for (const auto& h : F) stack.back().local.push_back(scale_variable(h, radius0));

  while (!stack.empty()) {
    Disk d = std::move(stack.back());
    stack.pop_back();
    out.max_depth_used = std::max(out.max_depth_used, d.radius);

    int mu = kPlusInfinity;
    for (const auto& h : d.local)
      for (const auto& c : h.coeffs)
        if (!c.is_zero()) mu = std::min(mu, c.valuation());
    if (mu == kPlusInfinity)
      fail(ErrorCode::InsufficientPrecision, "all components vanish to precision on a disk");
    std::vector<std::vector<long>> red;
    bool constant = true;
    for (auto& h : d.local) {
      h = shift_values(h, -mu);
      std::vector<long> r;
      for (const auto& c : h.coeffs) {
        if (c.abs_precision() < 1)
          fail(ErrorCode::InsufficientPrecision,
               "coefficient precision too low to reduce on disk of radius p^-" + std::to_string(d.radius));
        r.push_back(static_cast<long>(c.residue(1).get_si()));
      }
      while (!r.empty() && r.back() == 0) r.pop_back();
      if (r.size() > 1) constant = false;
      red.push_back(std::move(r));
    }
    if (constant) {
      std::vector<long> v;
      for (const auto& r : red) v.push_back(r.empty() ? 0 : r[0]);
      out.certificate.push_back({chart, d.center, d.radius, ProjPointFp::normalized(p, v)});
      continue;
    }
    const Integer step = power(p, d.radius);
    for (long s = p - 1; s >= 0; --s) {
      std::vector<long> v;
      bool nonzero = false;
      for (const auto& r : red) {
        v.push_back(eval_mod_p(r, s, p));
        nonzero = nonzero || v.back() != 0;
      }
      Integer center = d.center + step * s;
      if (nonzero) {
        out.certificate.push_back({chart, center, d.radius + 1, ProjPointFp::normalized(p, v)});
        continue;
      }
      if (d.radius + 1 > guard) {
        exceeded = true;
        continue;
      }
      Disk child{{}, center, d.radius + 1};
      for (const auto& h : d.local) child.local.push_back(scale_variable(taylor_shift(h, s), 1));
      stack.push_back(std::move(child));
    }
  }
}

void finish(ReductionImage& img) {
  img.points.clear();
  for (const auto& c : img.certificate) img.points.push_back(c.value);
  std::sort(img.points.begin(), img.points.end());
  img.points.erase(std::unique(img.points.begin(), img.points.end()), img.points.end());
}

// Insert zero coordinates for excluded components.
ProjPointFp embed(const ProjPointFp& q, const std::vector<size_t>& kept, size_t total) {
  std::vector<long> c(total, 0);
  for (size_t i = 0; i < kept.size(); ++i) c[kept[i]] = q.coords[i];
  return {q.prime, c};
}

ReductionImage single_component(long p, size_t index, size_t total, Domain domain) {
  std::vector<long> c(total, 0);
  c[index] = 1;
  ProjPointFp e{p, c};
  ReductionImage img;
  if (domain == Domain::P1) {
    img.certificate.push_back({Chart::Affine, 0, 0, e});
    img.certificate.push_back({Chart::Infinity, 0, 1, e});
  } else {
    img.certificate.push_back({Chart::Affine, 0, domain == Domain::pZp ? 1 : 0, e});
  }
  img.max_depth_used = domain == Domain::Zp ? 0 : 1;
  finish(img);
  return img;
}

int chart_guard(long p, const std::vector<PadicPoly>& F, int start) {
  auto v = max_resultant_valuation(p, F);
  if (!v) fail(ErrorCode::CommonRoot, "every pair of components has a common root");
  return start + 2 * (1 + *v);
}

}  // namespace

ReductionImage image_of_poly_map(long p, const std::vector<PadicPoly>& f, Domain domain,
                                 std::optional<int> max_depth) {
  if (!is_prime(p)) fail(ErrorCode::NonPrime, std::to_string(p) + " is not prime");
  if (f.empty()) fail(ErrorCode::InvalidArgument, "empty polynomial map");
  std::vector<size_t> kept;
  std::vector<PadicPoly> F;
  for (size_t i = 0; i < f.size(); ++i) {
    if (f[i].prime != p) fail(ErrorCode::PrimeMismatch, "polynomial map prime");
    if (f[i].is_zero()) continue;
    kept.push_back(i);
    PadicPoly h = f[i];
    h.coeffs.resize(static_cast<size_t>(h.degree() + 1));
    F.push_back(std::move(h));
  }
  if (F.empty()) fail(ErrorCode::InvalidArgument, "the map is identically zero");
  if (F.size() == 1) return single_component(p, kept[0], f.size(), domain);

  ReductionImage img;
  bool exceeded = false;
  const int start = domain == Domain::pZp ? 1 : 0;
  {
    int guard = max_depth ? *max_depth : chart_guard(p, F, start);
    subdivide(p, F, Chart::Affine, start, guard, img, exceeded);
  }
  if (domain == Domain::P1) {
    int n = 0;
    for (const auto& h : F) n = std::max(n, h.degree());
    std::vector<PadicPoly> Finf;
    for (const auto& h : F) {
      PadicPoly r;
      r.prime = p;
      for (int j = 0; j <= n; ++j) {
        int i = n - j;
        r.coeffs.push_back(i < static_cast<int>(h.coeffs.size()) ? h.coeffs[i] : PadicNumber::zero(p));
      }
      Finf.push_back(std::move(r));
    }
    int guard = max_depth ? *max_depth : chart_guard(p, Finf, 1);
    subdivide(p, Finf, Chart::Infinity, 1, guard, img, exceeded);
  }
  for (auto& c : img.certificate) c.value = embed(c.value, kept, f.size());
  finish(img);
  if (exceeded)
    throw MaxDepthExceededError("subdivision exceeded the depth guard", img);
  return img;
}

ReductionImage image_of_series_on_pZp(const SeriesVector& l, int M, int T) {
  if (l.empty()) fail(ErrorCode::InvalidArgument, "empty series vector");
  const long p = l.front().prime();
  std::vector<size_t> kept;
  SeriesVector L;
  for (size_t i = 0; i < l.size(); ++i) {
    if (l[i].prime() != p) fail(ErrorCode::PrimeMismatch, "series vector prime");
    if (l[i].all_zero()) continue;
    kept.push_back(i);
    L.push_back(l[i].substitute_scaled(1));
  }
  if (L.empty()) fail(ErrorCode::AllZeroToPrecision, "every component is zero to precision");
  if (L.size() == 1) return single_component(p, kept[0], l.size(), Domain::pZp);

  // A common factor t^r changes no value of rho away from t = 0 and extends
  // rho o L continuously to t = 0.
  auto exact_zero = [](const PadicNumber& c) { return c.is_zero() && c.abs_precision() >= PadicNumber::kExact; };
  while (std::all_of(L.begin(), L.end(), [&](const TruncatedSeries& s) {
    return s.truncation() > 1 && exact_zero(s[0]);
  })) {
    for (auto& s : L) s = s.divided_by_t();
  }

  NewtonPolygon np = newton_polygon(L);
  NAndN nn = n_and_N(np);
  if (!nn.N) fail(ErrorCode::NUndefined, "N_L is not certified within the truncation");
  const int N = *nn.N, m = nn.height;

  // Make the lattice point (N, m) a vertex of every component by adding the
  // component that attains it.
  const size_t r = L.size();
  size_t j = r;
  for (size_t i = 0; i < r && j == r; ++i)
    if (!L[i][N].is_zero() && L[i][N].valuation() == m) j = i;
  std::vector<std::vector<long>> A(r, std::vector<long>(r, 0));
  for (size_t i = 0; i < r; ++i) A[i][i] = 1;
  bool changed = false;
  for (size_t i = 0; i < r; ++i) {
    if (i == j) continue;
    if (L[i][N].is_zero() || L[i][N].valuation() > m) {
      L[i] = L[i] + L[j];
      A[i][j] = 1;
      changed = true;
    }
  }

  int trunc = L.front().truncation();
  for (const auto& s : L) trunc = std::min(trunc, s.truncation());
  int Teff = std::min(T, trunc);
  // Polynomials can be extended by exact zeros to any t-precision.
  if (Teff < 2 * N + 1 && std::all_of(L.begin(), L.end(), [](const TruncatedSeries& s) { return s.tail().exact; })) {
    Teff = 2 * N + 1;
    for (auto& s : L) {
      std::vector<PadicNumber> c = s.coeffs();
      while (static_cast<int>(c.size()) < Teff) c.push_back(PadicNumber::zero(p));
      s = TruncatedSeries(p, std::move(c));
    }
  }
  if (Teff < 2 * N + 1)
    fail(ErrorCode::InsufficientTruncation,
         "t-precision " + std::to_string(Teff) + " cannot pin a degree-" + std::to_string(N) +
             " polynomial part");
  // The prepared polynomial is correct modulo p^Meff only if everything that
  // the truncation discards is divisible by p^Meff.
  int Meff = M;
  for (const auto& s : L) {
    for (int n = 0; n < Teff; ++n) Meff = std::min(Meff, s[n].abs_precision());
    for (int n = Teff; n < s.truncation(); ++n) Meff = std::min(Meff, s[n].valuation_bound());
    Meff = std::min(Meff, s.tail().min_from(p, s.truncation()));
  }
  if (Meff <= m)
    fail(ErrorCode::PrecisionExhausted, "series precision does not exceed the hull height");

  std::vector<PadicPoly> polys;
  for (const auto& s : L) polys.push_back(weierstrass_prepare(s, Meff, Teff).poly_part);

  ReductionImage img = image_of_poly_map(p, polys, Domain::Zp);

  // Back to input coordinates: the inverse of A subtracts column j.
  for (auto& c : img.certificate) {
    std::vector<long> y = c.value.coords;
    if (changed) {
      for (size_t i = 0; i < r; ++i)
        if (i != j && A[i][j] != 0) y[i] = y[i] - y[j];
    }
    c.value = embed(ProjPointFp::normalized(p, y), kept, l.size());
    c.center *= p;
    c.radius += 1;
  }
  img.max_depth_used += 1;
  if (changed) img.coordinate_change = A;
  finish(img);
  return img;
}

}  // namespace pc
