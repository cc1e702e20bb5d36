#pragma once

#include "pc/integer.hpp"

#include <optional>
#include <string>
#include <vector>

namespace pc {

struct BoundReport {
  std::string formula;  // identifier of the closed form
  long prime = 0;
  int genus = 0;
  std::optional<long> disks;        // d, when applicable
  std::optional<long> excluded;     // #I, when applicable
  Rational value = 0;
};

// max sum_{j=1..d} delta(p, n_j) over n_j >= 0 with sum n_j <= N (p > 2).
long exact_Delta(long p, long d, long N);

// Bound on #rho o log(C(Q_p)) for a curve with d residue disks.
Rational curve_image_bound(long p, long d, int g);

// Bound on the average size of rho o log(C(Q_p)).
Rational avg_rholog_bound(long p, int g, bool refined);

// Lower bound on the density of curves with C(Q) = {infinity} (p = 2).
Rational density_main(int g);
Rational density_refined(int g);
// Lower bound for an odd prime p.
Rational density_odd(int g, long p);
// Upper bound (1 + #I) p^(1-g) on the excluded density.
Rational density_general_excluded(int g, long p, long excluded);

// Every applicable density bound for (g, p, #I).
std::vector<BoundReport> density_bounds(int g, long p, std::optional<long> excluded = std::nullopt);

}  // namespace pc
