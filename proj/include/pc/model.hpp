#pragma once

#include "pc/integer.hpp"
#include "pc/padic.hpp"
#include "pc/poly.hpp"

#include <memory>
#include <optional>
#include <random>
#include <string>
#include <vector>

namespace pc {

// y^2 = f(x), f = x^(2g+1) + a_1 x^(2g) + ... + a_(2g+1), stored ascending.
struct CurveInput {
  long prime = 2;
  int genus = 1;
  PadicPoly f;

  // a holds a_1, ..., a_(2g+1).
  static CurveInput from_integers(long p, int g, const std::vector<Integer>& a, int precision);
  static CurveInput from_padics(long p, int g, const std::vector<PadicNumber>& a);
};

enum class ColumnCase { UnitDerivative, UnitValue, SimpleZero, Recurse, GuardTruncated };
enum class UnitSubcase { None, RegularNotSmooth, BlownUpSmooth };

const char* to_string(ColumnCase c) noexcept;
const char* to_string(UnitSubcase s) noexcept;

// Chart y'^2 + y' = a0 + b0 x' + c0 x'^2 over F_2 on the blow-up of a p = 2
// column with unit value.
struct BlowUpPatch {
  int a0 = 0;
  int b0 = 0;
  int c0 = 0;
};

// Case decision from the low Taylor data at a column: a = h(c) mod p^3,
// b = h'(c) mod p^2, c2 = h''(c)/2 mod p.
struct CaseInfo {
  ColumnCase kind = ColumnCase::UnitDerivative;
  UnitSubcase subcase = UnitSubcase::None;
  BlowUpPatch patch;
  int smooth_count = 0;
};

CaseInfo classify_values(long p, long a, long b, long c2);

struct PatchNode;

struct ColumnRecord {
  long column = 0;
  ColumnCase kind = ColumnCase::UnitDerivative;
  UnitSubcase subcase = UnitSubcase::None;
  std::optional<BlowUpPatch> patch;
  int smooth_count = 0;
  // a = h(c) reduced mod p (the F_p value used by the counts).
  long value_mod_p = 0;
  std::shared_ptr<PatchNode> child;
};

struct PatchNode {
  int depth = 0;
  PadicPoly h;
  std::optional<long> parent_column;
  std::vector<ColumnRecord> columns;
};

struct DecentModel {
  long prime = 2;
  int genus = 1;
  std::shared_ptr<PatchNode> root;
  int infinity_count = 1;
  long total_smooth = 0;
  int max_depth_reached = 0;
  int depth_guard = 0;
  int guard_hits = 0;
};

enum class GuardPolicy { Throw, Truncate };

Integer discriminant(const std::vector<Integer>& f);
PadicNumber discriminant(const PadicPoly& f);

ColumnRecord classify_column(const PadicPoly& h, long c, long p);

// Default depth guard v_p(disc)/2 + 2.
int default_depth_guard(const CurveInput& curve);

DecentModel make_decent_model(const CurveInput& curve, std::optional<int> depth_guard = std::nullopt,
                              GuardPolicy policy = GuardPolicy::Throw);

struct CurvePoint {
  PadicNumber x;
  PadicNumber y;
};

// Draws x uniformly modulo p^digits and tries y = sqrt(f(x)).
std::optional<CurvePoint> sample_curve_point(const CurveInput& curve, std::mt19937_64& rng, int digits);
std::optional<CurvePoint> curve_point_at(const CurveInput& curve, const PadicNumber& x);

struct ReducedPoint {
  std::vector<long> path;  // columns walked from the root
  bool at_infinity = false;
  bool on_blowup = false;  // coordinates are (x', y') on the blow-up chart
  long x = 0;
  long y = 0;
  std::string to_string() const;
};

// Throws LandsOnNonSmooth if the point reduces outside the counted smooth set.
ReducedPoint reduce_point(const DecentModel& model, const CurvePoint& pt);
ReducedPoint reduce_point_at_infinity();

double height(const std::vector<Integer>& a);

}  // namespace pc
