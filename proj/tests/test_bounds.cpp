#include <doctest.h>

#include "oracles.hpp"
#include "pc/bounds.hpp"
#include "pc/error.hpp"
#include "pc/series.hpp"

using namespace pc;

namespace {

ErrorCode code_of(const std::function<void()>& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.code();
  }
  FAIL("expected an error");
  return ErrorCode::InvalidArgument;
}

Rational q(long n, long d = 1) {
  Rational r(n, d);
  r.canonicalize();
  return r;
}

}  // namespace

TEST_CASE("exact Delta") {
  for (long p : {3L, 5L, 7L})
    for (long d = 0; d <= 4; ++d) CHECK(exact_Delta(p, d, 0) == d * oracle::delta(p, 0));
  long best = 0;
  for (long n = 0; n <= 2; ++n) best = std::max<long>(best, oracle::delta(3, n));
  CHECK(exact_Delta(3, 1, 2) == best);
  for (long p : {3L, 5L, 7L})
    for (int d = 1; d <= 4; ++d)
      for (int N = 0; N <= 14; ++N) CHECK(exact_Delta(p, d, N) == oracle::Delta(p, d, N));
  CHECK(code_of([] { exact_Delta(2, 1, 1); }) == ErrorCode::InvalidArgument);
  CHECK(code_of([] { exact_Delta(3, -1, 1); }) == ErrorCode::InvalidArgument);
}

TEST_CASE("exact Delta stays below N/(p-2)") {
  for (long p : {3L, 5L, 7L})
    for (long d = 0; d <= 8; ++d)
      for (long N = 0; N <= 40; ++N) REQUIRE(exact_Delta(p, d, N) * (p - 2) <= N);
}

TEST_CASE("curve image bound") {
  CHECK(curve_image_bound(2, 1, 2) == 11);
  CHECK(curve_image_bound(3, 4, 2) == 28);
  CHECK(code_of([] { curve_image_bound(2, 0, 2); }) == ErrorCode::InvalidArgument);
  CHECK(code_of([] { curve_image_bound(4, 1, 2); }) == ErrorCode::NonPrime);
  for (int g = 1; g <= 12; ++g)
    for (long d = 1; d <= 12; ++d) {
      // p = 2: the constant folding of the decomposition
      // p(2g-2) + (p+1)d + p * sum delta with delta(2, n) <= 1 + n/2.
      CHECK(curve_image_bound(2, d, g) == 2 * (2 * g - 2) + 3 * d + 2 * (d + Rational(2 * g - 2, 2)));
      CHECK(oracle::Delta(2, static_cast<int>(d), 2 * g - 2) <= d + g - 1);
      for (long p : {3L, 5L, 7L, 11L}) {
        Rational folded = Rational(p * (2 * g - 2)) + (p + 1) * d + p * q(2 * g - 2, p - 2);
        CHECK(curve_image_bound(p, d, g) == folded);
        CHECK(p * exact_Delta(p, d, 2 * g - 2) <= folded - p * (2 * g - 2) - (p + 1) * d);
      }
    }
}

TEST_CASE("average image bounds") {
  CHECK(avg_rholog_bound(2, 3, false) == 27);
  CHECK(avg_rholog_bound(2, 3, true) == q(27, 2));
  CHECK(avg_rholog_bound(3, 2, false) == 28);
  CHECK(avg_rholog_bound(3, 2, true) == 14);
  CHECK(avg_rholog_bound(5, 3, false) == q(20, 3) * 4 + 36);
}

TEST_CASE("density bounds") {
  CHECK(density_main(7) == q(3, 16));
  CHECK(density_main(10) == q(221, 256));
  for (int g = 2; g <= 30; ++g) CHECK((density_main(g) > 0) == (g >= 7));
  CHECK(density_general_excluded(3, 2, 1) == q(1, 2));
  CHECK(density_odd(3, 3) == 1 - (1 + 16 + Rational(6) * 4) / 9);
  for (int g = 2; g <= 30; ++g) CHECK(density_refined(g) >= density_main(g));

  auto two = density_bounds(4, 2);
  REQUIRE(two.size() == 2);
  CHECK(two[0].formula == "density_main");
  CHECK(two[0].value == density_main(4));
  CHECK(two[1].formula == "density_refined");
  auto odd = density_bounds(5, 3, 2);
  REQUIRE(odd.size() == 2);
  CHECK(odd[0].formula == "density_odd");
  CHECK(odd[1].formula == "density_general_excluded");
  CHECK(odd[1].value == q(3, 81));
  CHECK(code_of([] { density_bounds(1, 2); }) == ErrorCode::InvalidArgument);
  CHECK(code_of([] { density_odd(3, 2); }) == ErrorCode::InvalidArgument);
}

TEST_CASE("delta growth at p = 2") {
  for (long n = 0; n <= 10000; ++n) REQUIRE(2 * delta(2, n) <= 2 + n);
}
