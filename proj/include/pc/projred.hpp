#pragma once

#include "pc/error.hpp"
#include "pc/padic.hpp"
#include "pc/poly.hpp"
#include "pc/series.hpp"

#include <optional>
#include <string>
#include <vector>

namespace pc {

// Point of P^{g-1}(F_p), first nonzero coordinate equal to 1.
struct ProjPointFp {
  long prime = 2;
  std::vector<long> coords;

  static ProjPointFp normalized(long p, std::vector<long> coords);
  std::string to_string() const;

  friend bool operator==(const ProjPointFp& a, const ProjPointFp& b) {
    return a.prime == b.prime && a.coords == b.coords;
  }
  friend bool operator<(const ProjPointFp& a, const ProjPointFp& b) { return a.coords < b.coords; }
};

ProjPointFp rho(const std::vector<PadicNumber>& v);

enum class Domain { P1, Zp, pZp };
enum class Chart { Affine, Infinity };

const char* to_string(Domain d) noexcept;
const char* to_string(Chart c) noexcept;

// The disk center + p^radius Z_p in the coordinate of `chart` (x on the affine
// chart, s = 1/x on the infinity chart), on which rho o f is constant.
struct CertifiedDisk {
  Chart chart = Chart::Affine;
  Integer center = 0;
  int radius = 0;
  ProjPointFp value;
};

struct ReductionImage {
  std::vector<ProjPointFp> points;
  std::vector<CertifiedDisk> certificate;
  int max_depth_used = 0;
  // Codomain change applied before subdivision (rows over F_p); reported
  // points are already mapped back to input coordinates. Empty = identity.
  std::vector<std::vector<long>> coordinate_change;
};

class MaxDepthExceededError : public Error {
 public:
  MaxDepthExceededError(const std::string& message, ReductionImage partial)
      : Error(ErrorCode::MaxDepthExceeded, message), partial_(std::move(partial)) {}
  const ReductionImage& partial() const noexcept { return partial_; }

 private:
  ReductionImage partial_;
};

// Exact rho(f(domain)) by disk subdivision. max_depth defaults to
// 2 * (1 + max valuation of the nonzero pairwise resultants) per chart.
ReductionImage image_of_poly_map(long p, const std::vector<PadicPoly>& f, Domain domain,
                                 std::optional<int> max_depth = std::nullopt);

// Exact rho(l(pZ_p)) for a vector of power series with bounded derivative,
// using Weierstrass preparation to absolute p-precision M and t-precision T.
ReductionImage image_of_series_on_pZp(const SeriesVector& l, int M, int T);

}  // namespace pc
