#include <doctest.h>

#include "oracles.hpp"
#include "pc/error.hpp"
#include "pc/expectation.hpp"

#include <cmath>

using namespace pc;
using oracle::Z;

namespace {

// Closed form of the truncated expectation: 1 + p (1 - p^(-2(k+1))).
Rational closed_form(long p, int k) {
  Rational r = 1 + Rational(p) * (1 - Rational(1, oracle::pw(p, 2 * (k + 1))));
  r.canonicalize();
  return r;
}

// Haar average of 1 + column_process over all monic models of degree 2g+1
// with coefficients modulo p^prec.
Rational enumerated_average(long p, int g, int prec, int k) {
  const int n = 2 * g + 1;
  const long m = oracle::pw(p, prec).get_si();
  std::vector<long> idx(static_cast<size_t>(n), 0);
  Z sum = 0, count = 0;
  while (true) {
    std::vector<Z> f;
    for (long c : idx) f.emplace_back(c);
    f.emplace_back(1);
    sum += 1 + oracle::column_process(f, p, prec, 0, k);
    ++count;
    size_t i = 0;
    while (i < idx.size() && ++idx[i] == m) idx[i++] = 0;
    if (i == idx.size()) break;
  }
  Rational r(sum, count);
  r.canonicalize();
  return r;
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

}  // namespace

TEST_CASE("exact truncated averages: examples and closed form") {
  CHECK(exact_truncated_average(2, 2, 0).value == Rational(5, 2));
  CHECK(exact_truncated_average(2, 2, 1).value == Rational(23, 8));
  CHECK(exact_truncated_average(3, 1, 0).value == Rational(11, 3));
  for (long p : {2L, 3L, 5L})
    for (int g = 1; g <= 3; ++g)
      for (int k = 0; k <= 2; ++k) {
        EnumResult r = exact_truncated_average(p, g, k);
        CHECK(r.k == k);
        CHECK(r.value == closed_form(p, k));
        // Monotone in k and below p + 1.
        CHECK(r.value < p + 1);
        if (k > 0) CHECK(r.value > exact_truncated_average(p, g, k - 1).value);
      }
  CHECK(code_of([] { exact_truncated_average(4, 1, 0); }) == ErrorCode::NonPrime);
  CHECK(code_of([] { exact_truncated_average(2, 1, -1); }) == ErrorCode::InvalidArgument);
}

TEST_CASE("exact truncated averages match brute-force enumeration") {
  CHECK(enumerated_average(2, 1, 3, 0) == exact_truncated_average(2, 1, 0).value);
  CHECK(enumerated_average(2, 1, 5, 1) == exact_truncated_average(2, 1, 1).value);
  CHECK(enumerated_average(3, 1, 3, 0) == exact_truncated_average(3, 1, 0).value);
}

TEST_CASE("digit stream") {
  for (long p : {2L, 3L, 7L})
    for (int i = 0; i < 200; ++i) {
      long d = sample_digit(99, i, i % 5, i % 7, p);
      CHECK(d >= 0);
      CHECK(d < p);
      CHECK(d == sample_digit(99, i, i % 5, i % 7, p));
    }
  // Extending the precision keeps the earlier digits.
  SampleConfig cfg;
  cfg.prime = 3;
  cfg.genus = 2;
  cfg.seed = 5;
  auto a = sample_coefficients(cfg, 7, 6), b = sample_coefficients(cfg, 7, 12);
  REQUIRE(a.size() == 5);
  for (size_t i = 0; i < a.size(); ++i) CHECK(b[i].residue(6) == a[i].residue(6));
  // Digits are roughly uniform.
  std::vector<long> counts(5, 0);
  for (long t = 0; t < 20000; ++t) ++counts[static_cast<size_t>(sample_digit(1, t, 0, 0, 5))];
  for (long c : counts) CHECK(std::abs(c - 4000) < 300);
}

TEST_CASE("Monte Carlo averages") {
  SampleConfig cfg;
  cfg.prime = 2;
  cfg.genus = 2;
  cfg.trials = 3000;
  cfg.seed = 11;
  cfg.threads = 1;
  MCResult one = mc_average_smooth(cfg);
  cfg.threads = 4;
  MCResult four = mc_average_smooth(cfg);
  CHECK(one.mean == four.mean);
  CHECK(one.histogram == four.histogram);
  long n = 0;
  for (const auto& [v, c] : one.histogram) n += c;
  CHECK(n == cfg.trials);
  // The limit of the truncated averages is p + 1.
  CHECK(std::abs(one.mean.get_d() - 3.0) < 5 * one.stderr_ + 1e-9);
  CHECK(one.stderr_ > 0);

  cfg.keep_rows = true;
  cfg.trials = 10;
  MCResult rows = mc_average_smooth(cfg);
  REQUIRE(rows.rows.size() == 10);
  for (long t = 0; t < 10; ++t) CHECK(rows.rows[static_cast<size_t>(t)].trial == t);

  cfg.trials = 0;
  CHECK(code_of([&] { mc_average_smooth(cfg); }) == ErrorCode::InvalidArgument);
}

TEST_CASE("case frequencies") {
  FrequencyTable t = case_frequencies(3, 2, 30000, 2);
  REQUIRE(t.counts.size() == 4);
  CHECK(t.expected[0] == Rational(2, 3));
  CHECK(t.expected[1] == Rational(2, 9));
  CHECK(t.expected[2] == Rational(2, 27));
  CHECK(t.expected[3] == Rational(1, 27));
  long total = 0;
  for (size_t i = 0; i < 4; ++i) {
    total += t.counts[i];
    const double e = t.expected[i].get_d() * 30000;
    CHECK(std::abs(t.counts[i] - e) < 5 * std::sqrt(e) + 1);
  }
  CHECK(total == 30000);
}

TEST_CASE("x0 statistics") {
  X0Report one = x0_statistics(2, 1, 1, 3);
  CHECK(one.trials == 1);
  CHECK(one.stderr_ == 0.0);
  X0Report r = x0_statistics(3, 2, 3000, 8);
  // A single column contributes (p + 1 - 1) / p = 1 on average.
  CHECK(std::abs(r.mean.get_d() - 1.0) < 5 * r.stderr_ + 1e-9);
  for (const auto& tail : r.tails) {
    Rational b(16, tail.bound * tail.bound);
    b.canonicalize();
    CHECK(tail.tail_bound == b);
    CHECK(tail.frequency <= tail.tail_bound + Rational(5, 100));
  }
  CHECK(code_of([] { x0_statistics(2, 1, 0, 1); }) == ErrorCode::InvalidArgument);
}
