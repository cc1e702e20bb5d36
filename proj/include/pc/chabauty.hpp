#pragma once

#include "pc/integer.hpp"
#include "pc/projred.hpp"
#include "pc/series.hpp"

#include <map>
#include <optional>
#include <string>
#include <vector>

namespace pc {

/**
 * y^2 + q(x) y = r(x) with r monic of degree 2g+1 and deg q <= g, integral
 * coefficients (ascending). For odd p the form y^2 = f(x) is q = 0, r = f.
 * The infinity chart uses s = 1/x, t = y/x^(g+1):
 *   t^2 + Q(s) t = R(s), Q(s) = s^(g+1) q(1/s), R(s) = s^(2g+2) r(1/s).
 */
struct GoodReductionCurve {
  long prime = 2;
  int genus = 1;
  std::vector<Integer> q;
  std::vector<Integer> r;

  static GoodReductionCurve make(long p, int g, std::vector<Integer> q, std::vector<Integer> r);
  // Throws BadReduction unless the special fiber is smooth.
  void require_good_reduction() const;
  bool has_good_reduction() const;
};

enum class Uniformizer { X, Y, InfinityT };

const char* to_string(Uniformizer u) noexcept;

struct ResidueDisk {
  bool infinity = false;
  long x = 0;  // center on the affine chart (unused at infinity)
  long y = 0;
  Uniformizer uniformizer = Uniformizer::X;
  std::string to_string() const;
};

std::vector<ResidueDisk> residue_disks(const GoodReductionCurve& curve);

struct DiskExpansion {
  ResidueDisk disk;
  int truncation = 0;
  int precision = 0;  // coefficients known modulo p^precision
  // Integer coefficient lists of the forms omega_j = w_j(t) dt, j = 1..g,
  // where omega_j = -x^(g-j) dx / (2y + q) (= s^(j-1) dt / (-dG/ds) at infinity).
  SeriesVector w;
  // The dependent coordinate as a series in the uniformizer (y, x, or s).
  std::vector<Integer> coordinate;
  int n_D = 0;
};

// T is the t-adic truncation (at least 2g+2); precision 0 selects T + 16.
DiskExpansion expand_at_disk(const GoodReductionCurve& curve, const ResidueDisk& disk, int T, int precision = 0);

struct LeadingTerm {
  int degree = -1;
  Rational coefficient = 0;
};

struct DiskResult {
  ResidueDisk disk;
  int n_D = 0;
  long bound = 0;  // p (n_D + 1 + delta(p, n_D)) + 1
  int truncation = 0;
  ReductionImage image;
  // First nonzero term of each component of the local antiderivative.
  std::vector<LeadingTerm> ell_leading;
};

enum class CheckStatus { Pass, Fail, Inconclusive };
const char* to_string(CheckStatus s) noexcept;

struct HypothesisCheck {
  std::string name;
  CheckStatus status = CheckStatus::Pass;
  std::string detail;
};

struct HypothesesReport {
  std::vector<HypothesisCheck> checks;
  bool all_pass() const;
};

HypothesesReport verify_hypotheses(const GoodReductionCurve& curve);

struct DiskOptions {
  int truncation = 0;         // 0 selects 4g + 6
  int max_truncation = 256;   // truncation is doubled on certification failure
  // Optional integration constants per disk index (one value per form).
  std::map<size_t, std::vector<Rational>> constants;
};

struct RhoLogResult {
  long prime = 2;
  int genus = 1;
  std::vector<DiskResult> disks;
  // Union of the per-disk images; the true rho o log when there is a single
  // disk (which then contains the base point infinity).
  std::vector<ProjPointFp> union_points;
  int sum_n_D = 0;
  Rational curve_bound = 0;
  bool full_image = false;
  std::optional<HypothesesReport> hypotheses;
};

DiskResult analyze_disk(const GoodReductionCurve& curve, const ResidueDisk& disk, const DiskOptions& options,
                        const std::vector<Rational>* constants = nullptr);

// Per-disk expansions, n_D, bounds and local images for every residue disk.
RhoLogResult analyze_residue_disks(const GoodReductionCurve& curve, const DiskOptions& options = {});

// rho o log (C(Q_2)) for curves whose only F_2-point is infinity; raises
// HypothesisFailed naming the failing check.
RhoLogResult rholog_single_disk_curve(const GoodReductionCurve& curve, const DiskOptions& options = {});

}  // namespace pc
