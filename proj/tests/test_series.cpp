#include <doctest.h>

#include "oracles.hpp"
#include "pc/error.hpp"
#include "pc/series.hpp"

#include <random>

using namespace pc;

namespace {

TruncatedSeries ints(long p, std::vector<long> c, int prec = 40) {
  std::vector<Integer> z(c.begin(), c.end());
  return TruncatedSeries::from_integers(p, z, prec);
}

std::vector<std::pair<int, int>> verts(const NewtonPolygon& np) {
  std::vector<std::pair<int, int>> out;
  for (const auto& v : np.vertices) out.emplace_back(v.n, v.v);
  return out;
}

ErrorCode code_of(const std::function<void()>& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.code();
  }
  FAIL("expected an error");
  return ErrorCode::InvalidArgument;
}

// Product of two integer coefficient lists truncated at T.
std::vector<oracle::Z> mul_trunc(const std::vector<oracle::Z>& a, const std::vector<oracle::Z>& b, size_t T) {
  std::vector<oracle::Z> c(T, 0);
  for (size_t i = 0; i < a.size() && i < T; ++i)
    for (size_t j = 0; j < b.size() && i + j < T; ++j) c[i + j] += a[i] * b[j];
  return c;
}

}  // namespace

TEST_CASE("newton polygon examples") {
  CHECK(verts(newton_polygon(ints(2, {2, 1, 0, 0}))) == std::vector<std::pair<int, int>>{{0, 1}, {1, 0}});
  // Flat segment from (2,0) to the end of the truncation: the vertex (3,1) of
  // the plotted set belongs to the hull as well.
  CHECK(verts(newton_polygon(ints(2, {0, 0, 1, 2, 0}))) == std::vector<std::pair<int, int>>{{2, 0}, {3, 1}});
  SeriesVector v{ints(3, {3, 1, 0}), ints(3, {0, 0, 1})};
  CHECK(verts(newton_polygon(v)) == std::vector<std::pair<int, int>>{{0, 1}, {1, 0}, {2, 0}});
  for (const auto& x : newton_polygon(v).vertices) CHECK(x.stable);
  CHECK(code_of([] { newton_polygon(ints(2, {0, 0, 0})); }) == ErrorCode::AllZeroToPrecision);
}

TEST_CASE("newton polygon matches brute-force hull") {
  std::mt19937_64 rng(5);
  for (long p : {2L, 3L, 5L})
    for (int trial = 0; trial < 200; ++trial) {
      const int T = 3 + static_cast<int>(rng() % 10);
      std::vector<Integer> c(static_cast<size_t>(T));
      std::map<int, int> pts;
      for (int n = 0; n < T; ++n) {
        if (rng() % 4 == 0) continue;
        int v = static_cast<int>(rng() % 6);
        c[n] = oracle::pw(p, v) * (1 + static_cast<long>(rng() % 50) * p);
        pts[n] = v;
      }
      if (pts.empty()) continue;
      NewtonPolygon np = newton_polygon(TruncatedSeries::from_integers(p, c, 60));
      CHECK(verts(np) == oracle::lower_hull(pts));
    }
}

TEST_CASE("n and N") {
  NAndN a = n_and_N(newton_polygon(ints(2, {2, 1, 0, 0})));
  CHECK(a.n == 1);
  CHECK(a.N == 1);
  NAndN b = n_and_N(newton_polygon(ints(3, {0, 0, 1})));
  CHECK(b.n == 2);
  CHECK(b.N == 2);
  NAndN c = n_and_N(newton_polygon(ints(5, {1, 1})));
  CHECK(c.n == 0);
  CHECK(c.N == 1);
  // A unit coefficient in an unknown tail could continue the flat part.
  TruncatedSeries open(2, ints(2, {1, 1}).coeffs(), TailBound::integral());
  CHECK_FALSE(n_and_N(newton_polygon(open)).N.has_value());
}

TEST_CASE("zeros on the open unit disk") {
  CHECK(count_zeros_unit_disk(ints(3, {-3, 0, 1})) == 2);
  CHECK(count_zeros_unit_disk(ints(7, {1, 1})) == 0);
  // t (t - 1)(t - 2) = t^3 - 3t^2 + 2t
  CHECK(count_zeros_unit_disk(ints(2, {0, 2, -3, 1})) == 2);

  std::mt19937_64 rng(9);
  for (long p : {2L, 3L, 5L})
    for (int trial = 0; trial < 200; ++trial) {
      // prod (t - a_i) with v(a_i) > 0 times prod (t - b_j) with b_j units.
      int inside = static_cast<int>(rng() % 4), outside = static_cast<int>(rng() % 3);
      std::vector<oracle::Z> poly{1};
      auto times_linear = [&](const oracle::Z& root) {
        std::vector<oracle::Z> next(poly.size() + 1, 0);
        for (size_t i = 0; i < poly.size(); ++i) {
          next[i + 1] += poly[i];
          next[i] -= root * poly[i];
        }
        poly = next;
      };
      for (int i = 0; i < inside; ++i) times_linear(oracle::pw(p, 1 + static_cast<int>(rng() % 3)) * (1 + static_cast<long>(rng() % 5) * p));
      for (int j = 0; j < outside; ++j) times_linear(1 + static_cast<long>(rng() % 20) * p);
      std::vector<Integer> c(poly.begin(), poly.end());
      CHECK(count_zeros_unit_disk(TruncatedSeries::from_integers(p, c, 60)) == inside);
    }
}

TEST_CASE("formal integration") {
  SeriesVector w{ints(2, {1}), ints(3, {0, 0, 1})};
  TruncatedSeries l1 = formal_integrate(ints(2, {1}));
  CHECK(l1[0].is_zero());
  CHECK(l1[0].abs_precision() == PadicNumber::kExact);
  CHECK(l1[1].to_rational() == 1);
  TruncatedSeries l2 = formal_integrate(ints(3, {0, 0, 1}));
  CHECK(l2[3].to_rational() == Rational(1, 3));
  CHECK(l2[3].valuation() == -1);
  // Precision drops by v_p(n + 1).
  CHECK(l2[3].abs_precision() == ints(3, {0, 0, 1})[2].abs_precision() - 1);
  CHECK(formal_integrate(SeriesVector{ints(3, {1}), ints(3, {0, 0, 1})}).size() == 2);
}

TEST_CASE("delta") {
  CHECK(delta(2, 0) == 1);
  CHECK(delta(2, 1) == 0);
  CHECK(delta(2, 2) == 1);
  for (long p : {2L, 3L, 5L, 7L})
    for (long n = 0; n <= 3000; ++n) REQUIRE(delta(p, n) == oracle::delta(p, n));
}

TEST_CASE("weierstrass preparation examples") {
  WeierstrassFactorization a = weierstrass_prepare(ints(3, {-3, 0, 1, 0, 0, 0}, 20), 20, 6);
  CHECK(a.degree == 2);
  CHECK(a.poly_part.coeffs[0].residue(20) == oracle::pw(3, 20) - 3);
  CHECK(a.unit_part[0].to_rational() == 1);
  for (int n = 1; n < 6; ++n) CHECK(a.unit_part[n].is_zero());

  // (t - 2)(1 + 2t + 4t^2 + ...)
  const int T = 10, M = 12;
  std::vector<oracle::Z> geo(T), lin{-2, 1};
  for (int n = 0; n < T; ++n) geo[n] = oracle::pw(2, n);
  auto prod = mul_trunc(lin, geo, T);
  std::vector<Integer> pc(prod.begin(), prod.end());
  WeierstrassFactorization b = weierstrass_prepare(TruncatedSeries::from_integers(2, pc, M), M, T);
  CHECK(b.degree == 1);
  CHECK(b.poly_part.coeffs[0].residue(M) == oracle::md(-2, oracle::pw(2, M)));
  // The truncated input pins the unit part down only up to the effect of the
  // discarded terms of size 2^T.
  for (int n = 0; n < T; ++n) CHECK(b.unit_part[n].residue(T - 2) == oracle::md(geo[n], oracle::pw(2, T - 2)));

  // 2 + 4t + 4t^2 has content 2 and its minimum is attained only at t^0.
  WeierstrassFactorization c = weierstrass_prepare(ints(2, {2, 4, 4, 0, 0, 0}, 16), 16, 6);
  CHECK(c.degree == 0);
}

TEST_CASE("weierstrass preparation reconstructs its input") {
  std::mt19937_64 rng(21);
  for (long p : {2L, 3L, 5L})
    for (int trial = 0; trial < 100; ++trial) {
      const int T = 12, M = 15;
      const int N = static_cast<int>(rng() % 5);
      const int m = static_cast<int>(rng() % 3);
      std::vector<oracle::Z> c(T);
      for (int n = 0; n < T; ++n) {
        int extra = n < N ? static_cast<int>(rng() % 3) : n == N ? 0 : 1 + static_cast<int>(rng() % 3);
        c[n] = oracle::pw(p, m + extra) * static_cast<long>(rng() % 1000 + 1);
        if (n == N) c[n] = oracle::pw(p, m) * (1 + p * static_cast<long>(rng() % 100));
      }
      std::vector<Integer> z(c.begin(), c.end());
      WeierstrassFactorization w = weierstrass_prepare(TruncatedSeries::from_integers(p, z, M), M, T);
      CHECK(w.degree == N);
      std::vector<oracle::Z> f, u;
      for (const auto& x : w.poly_part.coeffs) f.push_back(oracle::residue(x.to_rational(), oracle::pw(p, M)));
      for (const auto& x : w.unit_part.coeffs()) u.push_back(oracle::residue(x.to_rational(), oracle::pw(p, M)));
      CHECK(u[0] == 1);
      for (size_t n = 1; n < u.size(); ++n) CHECK(oracle::md(u[n], p) == 0);
      auto prod = mul_trunc(f, u, T);
      for (int n = 0; n < T; ++n) CHECK(oracle::md(prod[n] - c[n], oracle::pw(p, M)) == 0);
    }
}
