#include <doctest.h>

#include "oracles.hpp"
#include "pc/error.hpp"
#include "pc/model.hpp"

#include <cmath>
#include <functional>
#include <random>

using namespace pc;
using oracle::Z;

namespace {

// f = x^(2g+1) + a_1 x^(2g) + ... as an ascending integer list.
std::vector<Z> ascending(const std::vector<long>& a) {
  std::vector<Z> f;
  for (auto it = a.rbegin(); it != a.rend(); ++it) f.emplace_back(*it);
  f.emplace_back(1);
  return f;
}

CurveInput curve(long p, const std::vector<long>& a, int prec = 40) {
  std::vector<Integer> z(a.begin(), a.end());
  return CurveInput::from_integers(p, static_cast<int>(a.size() - 1) / 2, z, prec);
}

PadicPoly poly(long p, const std::vector<long>& asc, int prec = 40) {
  std::vector<Integer> z(asc.begin(), asc.end());
  return PadicPoly::from_integers(p, z, prec);
}

void walk(const PatchNode& node, long p, const std::function<void(const PatchNode&, const ColumnRecord&)>& fn) {
  for (const auto& c : node.columns) {
    fn(node, c);
    if (c.child) walk(*c.child, p, fn);
  }
}

std::vector<long> random_coeffs(std::mt19937_64& rng, long p, int g) {
  std::vector<long> a;
  for (int i = 0; i < 2 * g + 1; ++i) {
    long x = static_cast<long>(rng() % 2000) - 1000;
    // Bias towards high valuations so that recursion actually happens.
    if (rng() % 2) x *= static_cast<long>(std::pow(p, static_cast<double>(rng() % 4)));
    a.push_back(x);
  }
  return a;
}

}  // namespace

TEST_CASE("discriminant") {
  CHECK(discriminant(std::vector<Integer>{0, -1, 0, 1}) == 4);
  CHECK(discriminant(std::vector<Integer>{0, 0, 0, 1}) == 0);
  CHECK(discriminant(std::vector<Integer>{1, 1, 0, 1}) == -31);
  std::mt19937_64 rng(1);
  for (int i = 0; i < 100; ++i) {
    long a = static_cast<long>(rng() % 41) - 20, b = static_cast<long>(rng() % 41) - 20;
    Integer expected = Integer(-4) * a * a * a - Integer(27) * b * b;
    CHECK(discriminant(std::vector<Integer>{b, a, 0, 1}) == expected);
    for (long p : {2L, 3L, 5L}) {
      PadicNumber d = discriminant(poly(p, {b, a, 0, 1}));
      if (expected == 0)
        CHECK(d.is_zero());
      else
        CHECK(d.residue(std::min(d.abs_precision(), 10)) == oracle::md(expected, oracle::pw(p, std::min(d.abs_precision(), 10))));
    }
  }
}

TEST_CASE("classify_column examples") {
  ColumnRecord r0 = classify_column(poly(2, {1, 1, 0, 1}), 0, 2);
  CHECK(r0.kind == ColumnCase::UnitDerivative);
  CHECK(r0.smooth_count == 1);
  ColumnRecord r1 = classify_column(poly(2, {1, 1, 0, 1}), 1, 2);
  CHECK(r1.kind == ColumnCase::UnitValue);
  CHECK(r1.subcase == UnitSubcase::RegularNotSmooth);
  CHECK(r1.smooth_count == 0);
  ColumnRecord r2 = classify_column(poly(2, {0, -1, 0, 1}), 1, 2);
  REQUIRE(r2.kind == ColumnCase::Recurse);
  REQUIRE(r2.child);
  // h_1 = 2x^3 + 3x^2 + x
  const auto& h = r2.child->h.coeffs;
  REQUIRE(h.size() >= 4);
  CHECK(h[0].residue(10) == 0);
  CHECK(h[1].residue(10) == 1);
  CHECK(h[2].residue(10) == 3);
  CHECK(h[3].residue(10) == 2);
}

TEST_CASE("column cases partition the residues") {
  for (long p : {2L, 3L, 5L}) {
    const long p2 = p * p, p3 = p2 * p;
    for (long a = 0; a < p3; ++a)
      for (long b = 0; b < p2; ++b)
        for (long c2 = 0; c2 < p; ++c2) {
          CaseInfo info = classify_values(p, a, b, c2);
          if (b % p != 0) {
            long n = 0;
            for (long y = 0; y < p; ++y) n += (y * y - a) % p == 0;
            REQUIRE(info.kind == ColumnCase::UnitDerivative);
            REQUIRE(info.smooth_count == n);
          } else if (a % p != 0) {
            REQUIRE(info.kind == ColumnCase::UnitValue);
            if (p == 2) {
              REQUIRE(info.subcase == (a % 4 == 3 ? UnitSubcase::RegularNotSmooth : UnitSubcase::BlownUpSmooth));
            } else {
              long n = 0;
              for (long y = 1; y < p; ++y) n += (y * y - a) % p == 0;
              REQUIRE(info.smooth_count == n);
            }
          } else if (a % p2 != 0) {
            REQUIRE(info.kind == ColumnCase::SimpleZero);
            REQUIRE(info.smooth_count == 0);
          } else {
            REQUIRE(info.kind == ColumnCase::Recurse);
          }
        }
  }
}

TEST_CASE("decent model examples") {
  CHECK(make_decent_model(curve(2, {0, 1, 1})).total_smooth == 2);
  DecentModel m = make_decent_model(curve(2, {0, -1, 0}));
  CHECK(m.total_smooth == 4);
  CHECK(m.max_depth_reached == 1);
  CHECK(m.infinity_count == 1);
  try {
    make_decent_model(curve(2, {0, 0, 0}));
    FAIL("expected DiscriminantZero");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::DiscriminantZero);
  }
}

TEST_CASE("decent model agrees with the direct column process") {
  std::mt19937_64 rng(17);
  for (long p : {2L, 3L, 5L})
    for (int g = 1; g <= 3; ++g)
      for (int trial = 0; trial < 60; ++trial) {
        std::vector<long> a = random_coeffs(rng, p, g);
        std::vector<Z> f = ascending(a);
        if (discriminant(std::vector<Integer>(f.begin(), f.end())) == 0) continue;
        DecentModel m = make_decent_model(curve(p, a, 80));
        CHECK(m.total_smooth == 1 + oracle::column_process(f, p, 80, 0, 1000));
        // Child-patch law p^2 h_child(x) = h(c + p x).
        walk(*m.root, p, [&](const PatchNode& node, const ColumnRecord& rec) {
          if (!rec.child) return;
          PadicPoly lhs = shift_values(rec.child->h, 2);
          PadicPoly rhs = scale_variable(taylor_shift(node.h, rec.column), 1);
          const size_t n = std::max(lhs.coeffs.size(), rhs.coeffs.size());
          for (size_t i = 0; i < n; ++i) {
            PadicNumber l = i < lhs.coeffs.size() ? lhs.coeffs[i] : PadicNumber::zero(p);
            PadicNumber r = i < rhs.coeffs.size() ? rhs.coeffs[i] : PadicNumber::zero(p);
            CHECK(congruent(l, r));
          }
        });
        // Recursion depth is bounded by v_p(disc).
        Integer d = discriminant(std::vector<Integer>(f.begin(), f.end()));
        CHECK(m.max_depth_reached <= valuation(d, p));
      }
}

TEST_CASE("good reduction: model count equals the Jacobian criterion count") {
  std::mt19937_64 rng(23);
  for (long p : {3L, 5L, 7L})
    for (int g = 1; g <= 3; ++g) {
      int tested = 0;
      while (tested < 30) {
        std::vector<long> a;
        for (int i = 0; i < 2 * g + 1; ++i) a.push_back(static_cast<long>(rng() % 100) - 50);
        std::vector<Z> f = ascending(a);
        Integer d = discriminant(std::vector<Integer>(f.begin(), f.end()));
        if (d == 0 || valuation(d, p) != 0) continue;
        CHECK(make_decent_model(curve(p, a)).total_smooth == oracle::jacobian_smooth_count(f, p));
        ++tested;
      }
    }
}

TEST_CASE("sampling curve points") {
  CurveInput c = curve(2, {0, 1, 1});
  auto pt = curve_point_at(c, PadicNumber::from_integer(2, 0, 20));
  REQUIRE(pt);
  CHECK(pt->y.residue(2) == 1);
  CHECK_FALSE(curve_point_at(c, PadicNumber::from_integer(2, 1, 20)));
  CurveInput d = curve(5, {0, -1, 0});
  CHECK(curve_point_at(d, PadicNumber::from_integer(5, 2, 20)).has_value());
  std::mt19937_64 rng(4);
  int found = 0;
  for (int i = 0; i < 100; ++i)
    if (auto q = sample_curve_point(d, rng, 12)) {
      ++found;
      CHECK(congruent(q->y * q->y, d.f(q->x)));
    }
  CHECK(found > 10);
}

TEST_CASE("reduce_point examples") {
  DecentModel m = make_decent_model(curve(2, {0, 1, 1}));
  auto pt = curve_point_at(curve(2, {0, 1, 1}), PadicNumber::from_integer(2, 0, 20));
  ReducedPoint r = reduce_point(m, *pt);
  CHECK(r.path == std::vector<long>{0});
  CHECK(r.x == 0);
  CHECK(r.y == 1);

  CurveInput e = curve(2, {0, -1, 0});
  DecentModel me = make_decent_model(e);
  for (long u : {0L, 1L, 2L, 3L}) {
    long x = 1 + 2 * (u + 4 * 5);
    auto q = curve_point_at(e, PadicNumber::from_integer(2, x, 30));
    if (!q) continue;
    ReducedPoint rq = reduce_point(me, *q);
    REQUIRE(rq.path.size() == 2);
    CHECK(rq.path[0] == 1);
    CHECK(rq.path[1] == (u % 2));
  }
  CHECK(reduce_point_at_infinity().at_infinity);
  CurvePoint far{PadicNumber::make(2, 1, 4, 20), PadicNumber::make(2, 1, 8, 20)};
  CHECK(reduce_point(m, far).at_infinity);
}

TEST_CASE("decency on random curves") {
  std::mt19937_64 rng(31);
  for (long p : {2L, 3L})
    for (int trial = 0; trial < 80; ++trial) {
      const int g = 1 + static_cast<int>(rng() % 3);
      std::vector<long> a = random_coeffs(rng, p, g);
      std::vector<Z> f = ascending(a);
      Integer d = discriminant(std::vector<Integer>(f.begin(), f.end()));
      if (d == 0) continue;
      const int prec = 2 * valuation(d, p) + 30;
      CurveInput c = curve(p, a, prec);
      DecentModel m = make_decent_model(c);
      for (int i = 0; i < 20; ++i)
        if (auto q = sample_curve_point(c, rng, prec)) CHECK_NOTHROW(reduce_point(m, *q));
    }
}

TEST_CASE("height") {
  CHECK(height({0, 0, 0, 0, 32}) == doctest::Approx(2.0));
  CHECK(height({3, 0, 0}) == doctest::Approx(3.0));
  CHECK(height({0, 0, 0}) == 0.0);
  CHECK(height({1, 16, 0}) == doctest::Approx(4.0));
}
