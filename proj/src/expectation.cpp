#include "pc/expectation.hpp"

#include "pc/error.hpp"
#include "pc/parallel.hpp"

#include <cmath>

namespace pc {

namespace {

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9E3779B97F4A7C15ULL;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
  return x ^ (x >> 31);
}

void require_trials(long trials) {
  if (trials < 1) fail(ErrorCode::InvalidArgument, "trials must be at least 1");
}

void require_prime(long p) {
  if (!is_prime(p)) fail(ErrorCode::NonPrime, std::to_string(p) + " is not prime");
}

// Smooth count contributed by a column, including its whole subtree.
long column_total(const ColumnRecord& rec) {
  if (!rec.child) return rec.smooth_count;
  long s = 0;
  for (const auto& c : rec.child->columns) s += column_total(c);
  return s;
}

// Builds the decent model of a trial, extending the digit stream whenever the
// sampled precision is not enough to decide.
DecentModel run_trial(const SampleConfig& cfg, long trial, int digits) {
  for (int extra = 0; extra <= 64; extra += 8) {
    try {
      CurveInput curve = CurveInput::from_padics(cfg.prime, cfg.genus, sample_coefficients(cfg, trial, digits + extra));
      return make_decent_model(curve, cfg.depth_guard, GuardPolicy::Truncate);
    } catch (const Error& e) {
      if (e.code() != ErrorCode::InsufficientPrecision && e.code() != ErrorCode::DiscriminantZero) throw;
    }
  }
  fail(ErrorCode::InsufficientPrecision, "trial " + std::to_string(trial) + " needs too many digits");
}

double standard_error(const std::map<long, long>& hist, long n, const Rational& mean) {
  if (n < 2) return 0.0;
  double m = mean.get_d(), ss = 0.0;
  for (const auto& [v, c] : hist) ss += static_cast<double>(c) * (v - m) * (v - m);
  return std::sqrt(ss / static_cast<double>(n - 1) / static_cast<double>(n));
}

}  // namespace

long sample_digit(std::uint64_t seed, long trial, int coeff, int digit, long p) {
  std::uint64_t h = splitmix64(seed);
  h = splitmix64(h ^ static_cast<std::uint64_t>(trial));
  h = splitmix64(h ^ (static_cast<std::uint64_t>(coeff) << 32) ^ static_cast<std::uint64_t>(digit));
  return static_cast<long>((static_cast<unsigned __int128>(h) * static_cast<std::uint64_t>(p)) >> 64);
}

std::vector<PadicNumber> sample_coefficients(const SampleConfig& cfg, long trial, int digits) {
  std::vector<PadicNumber> out;
  for (int i = 0; i < 2 * cfg.genus + 1; ++i) {
    Integer v = 0, scale = 1;
    for (int d = 0; d < digits; ++d) {
      v += scale * sample_digit(cfg.seed, trial, i, d, cfg.prime);
      scale *= cfg.prime;
    }
    out.push_back(PadicNumber::from_integer(cfg.prime, v, digits));
  }
  return out;
}

MCResult mc_average_smooth(const SampleConfig& cfg) {
  require_trials(cfg.trials);
  require_prime(cfg.prime);
  if (cfg.genus < 1) fail(ErrorCode::InvalidArgument, "genus must be at least 1");
  if (cfg.depth_guard < 0) fail(ErrorCode::InvalidArgument, "depth guard must be non-negative");
  const int digits = cfg.digit_budget > 0 ? cfg.digit_budget : 2 * cfg.depth_guard + 4;
  if (digits < 2 * cfg.depth_guard + 4)
    fail(ErrorCode::InvalidArgument, "digit budget must be at least 2 * depth_guard + 4");

  std::vector<TrialRow> rows(static_cast<size_t>(cfg.trials));
  std::vector<char> hit(static_cast<size_t>(cfg.trials), 0);
  parallel_for(cfg.trials, cfg.threads, [&](long t) {
    DecentModel m = run_trial(cfg, t, digits);
    rows[static_cast<size_t>(t)] = {t, m.total_smooth, m.max_depth_reached};
    hit[static_cast<size_t>(t)] = m.guard_hits > 0;
  });

  MCResult r;
  r.trials = cfg.trials;
  Integer sum = 0;
  for (size_t i = 0; i < rows.size(); ++i) {
    sum += rows[i].total_smooth;
    ++r.histogram[rows[i].total_smooth];
    ++r.depth_histogram[rows[i].max_depth];
    r.guard_hits += hit[i];
  }
  r.mean = Rational(sum, cfg.trials);
  r.mean.canonicalize();
  r.stderr_ = standard_error(r.histogram, cfg.trials, r.mean);
  if (cfg.keep_rows) r.rows = std::move(rows);
  return r;
}

EnumResult exact_truncated_average(long p, int g, int k) {
  require_prime(p);
  if (g < 1) fail(ErrorCode::InvalidArgument, "genus must be at least 1");
  if (k < 0) fail(ErrorCode::InvalidArgument, "k must be non-negative");
  // The first three Taylor coefficients at a column are uniform and
  // independent (a unit upper-triangular image of a_(2g+1), a_(2g), a_(2g-1)),
  // so one column's expectation is an average over p^3 * p^2 * p residues.
  // Every column of every patch has the same law, hence one recursion in k.
  const long p2 = p * p, p3 = p2 * p;
  long leaf_sum = 0, recurse = 0;
  for (long a = 0; a < p3; ++a)
    for (long b = 0; b < p2; ++b)
      for (long c2 = 0; c2 < p; ++c2) {
        CaseInfo info = classify_values(p, a, b, c2);
        if (info.kind == ColumnCase::Recurse)
          ++recurse;
        else
          leaf_sum += info.smooth_count;
      }
  const Rational total(p3 * p2 * p);
  Rational T = Rational(leaf_sum) / total;
  for (int j = 1; j <= k; ++j) T = (Rational(leaf_sum) + Rational(recurse) * p * T) / total;
  EnumResult r;
  r.k = k;
  r.per_column = T;
  r.value = 1 + p * T;
  return r;
}

X0Report x0_statistics(long p, int g, long trials, std::uint64_t seed, int depth_guard, int threads) {
  require_trials(trials);
  require_prime(p);
  SampleConfig cfg;
  cfg.prime = p;
  cfg.genus = g;
  cfg.trials = trials;
  cfg.seed = seed;
  cfg.depth_guard = depth_guard;
  const int digits = 2 * depth_guard + 4;
  std::vector<long> x0(static_cast<size_t>(trials));
  std::vector<char> hit(static_cast<size_t>(trials), 0);
  parallel_for(trials, threads, [&](long t) {
    DecentModel m = run_trial(cfg, t, digits);
    x0[static_cast<size_t>(t)] = column_total(m.root->columns.at(0));
    hit[static_cast<size_t>(t)] = m.guard_hits > 0;
  });
  X0Report r;
  r.trials = trials;
  Integer sum = 0;
  for (size_t i = 0; i < x0.size(); ++i) {
    sum += x0[i];
    ++r.histogram[x0[i]];
    r.guard_hits += hit[i];
  }
  r.mean = Rational(sum, trials);
  r.mean.canonicalize();
  r.stderr_ = standard_error(r.histogram, trials, r.mean);
  for (long B = 4 * p; B <= 4 * p * p * p * p; B *= p) {
    long count = 0;
    for (long v : x0)
      if (v >= B) ++count;
    Rational freq(count, trials), bound(16, B * B);
    freq.canonicalize();
    bound.canonicalize();
    r.tails.push_back({B, count, freq, bound});
  }
  return r;
}

FrequencyTable case_frequencies(long p, int g, long trials, std::uint64_t seed) {
  require_trials(trials);
  require_prime(p);
  if (g < 1) fail(ErrorCode::InvalidArgument, "genus must be at least 1");
  // At the root column 0 the value is a_(2g+1) and the derivative a_(2g).
  const int value_index = 2 * g, derivative_index = 2 * g - 1;
  FrequencyTable t;
  t.trials = trials;
  t.labels = {"unit derivative", "unit value", "simple zero", "recurse"};
  t.counts.assign(4, 0);
  for (long i = 0; i < trials; ++i) {
    long b0 = sample_digit(seed, i, derivative_index, 0, p);
    long a0 = sample_digit(seed, i, value_index, 0, p);
    long a1 = sample_digit(seed, i, value_index, 1, p);
    int k = b0 != 0 ? 0 : a0 != 0 ? 1 : a1 != 0 ? 2 : 3;
    ++t.counts[static_cast<size_t>(k)];
  }
  Rational ip(1, p);
  t.expected = {1 - ip, ip - ip * ip, ip * ip - ip * ip * ip, ip * ip * ip};
  return t;
}

}  // namespace pc
