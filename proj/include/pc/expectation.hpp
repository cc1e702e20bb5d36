#pragma once

#include "pc/integer.hpp"
#include "pc/model.hpp"

#include <cstdint>
#include <map>
#include <string>
#include <vector>

namespace pc {

struct SampleConfig {
  long prime = 2;
  int genus = 2;
  long trials = 1000;
  std::uint64_t seed = 1;
  int depth_guard = 10;
  // 0 selects 2 * depth_guard + 4.
  int digit_budget = 0;
  // 0 selects default_thread_count().
  int threads = 0;
  bool keep_rows = false;
};

// Digit i of coefficient `coeff` in trial `trial`: a pure function of its key,
// so extending precision never changes earlier digits.
long sample_digit(std::uint64_t seed, long trial, int coeff, int digit, long p);

// Coefficients a_1..a_(2g+1) of a sampled trial, known to `digits` digits.
std::vector<PadicNumber> sample_coefficients(const SampleConfig& cfg, long trial, int digits);

struct TrialRow {
  long trial;
  long total_smooth;
  int max_depth;
};

struct MCResult {
  long trials = 0;
  Rational mean = 0;
  double stderr_ = 0.0;
  std::map<long, long> histogram;
  std::map<int, long> depth_histogram;
  long guard_hits = 0;
  std::vector<TrialRow> rows;
};

MCResult mc_average_smooth(const SampleConfig& cfg);

struct EnumResult {
  Rational value = 0;
  int k = 0;
  Rational per_column = 0;
};

// Expected total smooth count with recursion beyond depth k counted as 0,
// by exhaustive enumeration over (h(c) mod p^3, h'(c) mod p^2, h''(c)/2 mod p).
EnumResult exact_truncated_average(long p, int g, int k);

struct X0Tail {
  long bound;            // B
  long count;            // #{trials : X0 >= B}
  Rational frequency;
  Rational tail_bound;   // 16 / B^2
};

struct X0Report {
  long trials = 0;
  Rational mean = 0;
  double stderr_ = 0.0;
  std::map<long, long> histogram;
  std::vector<X0Tail> tails;
  long guard_hits = 0;
};

X0Report x0_statistics(long p, int g, long trials, std::uint64_t seed, int depth_guard = 10, int threads = 0);

struct FrequencyTable {
  long trials = 0;
  std::vector<std::string> labels;
  std::vector<long> counts;
  std::vector<Rational> expected;
};

FrequencyTable case_frequencies(long p, int g, long trials, std::uint64_t seed);

}  // namespace pc
