#include "pc/bounds.hpp"

#include "pc/error.hpp"
#include "pc/series.hpp"

#include <algorithm>

namespace pc {

namespace {

void require_prime(long p) {
  if (!is_prime(p)) fail(ErrorCode::NonPrime, std::to_string(p) + " is not prime");
}

Rational pow_rational(long p, long e) {
  Rational r(power(p, static_cast<int>(e < 0 ? -e : e)));
  return e < 0 ? 1 / r : r;
}

// (p^2 - p) / (p - 2) for odd p.
Rational odd_factor(long p) {
  Rational r(p * p - p, p - 2);
  r.canonicalize();
  return r;
}

}  // namespace

long exact_Delta(long p, long d, long N) {
  require_prime(p);
  if (p == 2) fail(ErrorCode::InvalidArgument, "exact_Delta needs p > 2");
  if (d < 0 || N < 0) fail(ErrorCode::InvalidArgument, "exact_Delta needs d, N >= 0");
  std::vector<long> dt(static_cast<size_t>(N + 1));
  for (long n = 0; n <= N; ++n) dt[static_cast<size_t>(n)] = delta(p, n);
  // best[m]: maximum over the parts chosen so far with total at most m.
  std::vector<long> best(static_cast<size_t>(N + 1), 0);
  for (long j = 0; j < d; ++j) {
    std::vector<long> next(static_cast<size_t>(N + 1), 0);
    for (long m = 0; m <= N; ++m)
      for (long n = 0; n <= m; ++n)
        next[static_cast<size_t>(m)] =
            std::max(next[static_cast<size_t>(m)], best[static_cast<size_t>(m - n)] + dt[static_cast<size_t>(n)]);
    best = std::move(next);
  }
  long value = best[static_cast<size_t>(N)];
  if (value * (p - 2) > N)
    fail(ErrorCode::InvalidArgument, "exact_Delta exceeded N/(p-2); the delta table is inconsistent");
  return value;
}

Rational curve_image_bound(long p, long d, int g) {
  require_prime(p);
  if (d < 1) fail(ErrorCode::InvalidArgument, "curve_image_bound needs d >= 1");
  if (g < 1) fail(ErrorCode::InvalidArgument, "curve_image_bound needs g >= 1");
  if (p == 2) return Rational(5 * d + 6 * g - 6);
  Rational r = Rational((p + 1) * d) + odd_factor(p) * (2 * g - 2);
  r.canonicalize();
  return r;
}

Rational avg_rholog_bound(long p, int g, bool refined) {
  require_prime(p);
  if (g < 1) fail(ErrorCode::InvalidArgument, "avg_rholog_bound needs g >= 1");
  Rational r;
  if (p == 2)
    r = refined ? Rational(6 * g + 9, 2) : Rational(6 * g + 9);
  else if (refined)
    r = odd_factor(p) * (g - 1) + Rational((p + 1) * (p + 1), 2);
  else
    r = odd_factor(p) * (2 * g - 2) + (p + 1) * (p + 1);
  r.canonicalize();
  return r;
}

Rational density_main(int g) {
  if (g < 2) fail(ErrorCode::InvalidArgument, "density bounds need g > 1");
  Rational r = 1 - Rational(12 * g + 20) * pow_rational(2, -g);
  r.canonicalize();
  return r;
}

Rational density_refined(int g) {
  if (g < 2) fail(ErrorCode::InvalidArgument, "density bounds need g > 1");
  Rational r = 1 - Rational(6 * g + 11) * pow_rational(2, -g);
  r.canonicalize();
  return r;
}

Rational density_odd(int g, long p) {
  require_prime(p);
  if (p == 2) fail(ErrorCode::InvalidArgument, "density_odd needs an odd prime");
  if (g < 2) fail(ErrorCode::InvalidArgument, "density bounds need g > 1");
  Rational r = 1 - (1 + Rational((p + 1) * (p + 1)) + odd_factor(p) * (2 * g - 2)) * pow_rational(p, 1 - g);
  r.canonicalize();
  return r;
}

Rational density_general_excluded(int g, long p, long excluded) {
  require_prime(p);
  if (g < 2) fail(ErrorCode::InvalidArgument, "density bounds need g > 1");
  if (excluded < 0) fail(ErrorCode::InvalidArgument, "#I must be non-negative");
  Rational r = Rational(1 + excluded) * pow_rational(p, 1 - g);
  r.canonicalize();
  return r;
}

std::vector<BoundReport> density_bounds(int g, long p, std::optional<long> excluded) {
  require_prime(p);
  if (g < 2) fail(ErrorCode::InvalidArgument, "density bounds need g > 1");
  std::vector<BoundReport> out;
  auto add = [&](std::string id, Rational v) {
    BoundReport b;
    b.formula = std::move(id);
    b.prime = p;
    b.genus = g;
    b.excluded = excluded;
    b.value = std::move(v);
    out.push_back(std::move(b));
  };
  if (p == 2) {
    add("density_main", density_main(g));
    add("density_refined", density_refined(g));
  } else {
    add("density_odd", density_odd(g, p));
  }
  if (excluded) add("density_general_excluded", density_general_excluded(g, p, *excluded));
  return out;
}

}  // namespace pc
