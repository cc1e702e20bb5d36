#pragma once

#include "pc/integer.hpp"
#include "pc/padic.hpp"
#include "pc/poly.hpp"

#include <optional>
#include <vector>

namespace pc {

/**
 * What is known about the coefficients c_n with n >= T of a truncated series.
 *
 * When `known` holds: v_p(c_n) >= offset + slope*n - log_loss*floor(log_p n)
 * for all n >= T. `exact` means every such coefficient is zero (the series is
 * a polynomial). The log term is what formal integration costs.
 */
struct TailBound {
  bool known = false;
  bool exact = false;
  int offset = 0;
  int slope = 0;
  int log_loss = 0;

  static TailBound polynomial() { return {true, true, 0, 0, 0}; }
  static TailBound unknown() { return {}; }
  static TailBound linear(int offset, int slope, int log_loss = 0) {
    return {true, false, offset, slope, log_loss};
  }
  static TailBound integral() { return linear(0, 0); }

  // Lower bound for v_p(c_n), n >= 1.
  int at(long p, long n) const;
  // Lower bound for min_{n >= from} v_p(c_n).
  int min_from(long p, long from) const;
};

class TruncatedSeries {
 public:
  TruncatedSeries() = default;
  TruncatedSeries(long p, std::vector<PadicNumber> coeffs, TailBound tail = TailBound::polynomial());

  static TruncatedSeries from_integers(long p, const std::vector<Integer>& c, int abs_precision,
                                       TailBound tail = TailBound::polynomial());
  static TruncatedSeries from_rationals(long p, const std::vector<Rational>& c, int abs_precision,
                                        TailBound tail = TailBound::polynomial());

  long prime() const noexcept { return p_; }
  int truncation() const noexcept { return static_cast<int>(coeffs_.size()); }
  const std::vector<PadicNumber>& coeffs() const noexcept { return coeffs_; }
  const PadicNumber& operator[](int n) const { return coeffs_.at(static_cast<size_t>(n)); }
  const TailBound& tail() const noexcept { return tail_; }
  void set_tail(TailBound tail) { tail_ = tail; }

  // True when every coefficient within truncation is zero-to-precision.
  bool all_zero() const;
  // Minimum valuation bound over the truncated coefficients.
  int min_valuation() const;

  // w(p^k t).
  TruncatedSeries substitute_scaled(int k) const;
  // p^k w.
  TruncatedSeries shifted(int k) const;
  // w / t; requires the constant term to be exactly zero.
  TruncatedSeries divided_by_t() const;
  TruncatedSeries truncated(int T) const;

  friend TruncatedSeries operator+(const TruncatedSeries& a, const TruncatedSeries& b);
  friend TruncatedSeries operator-(const TruncatedSeries& a, const TruncatedSeries& b);
  friend TruncatedSeries operator*(const TruncatedSeries& a, const TruncatedSeries& b);

 private:
  long p_ = 2;
  std::vector<PadicNumber> coeffs_;
  TailBound tail_ = TailBound::polynomial();
};

using SeriesVector = std::vector<TruncatedSeries>;

// A plotted abscissa: the true minimal valuation at n lies in [lo, hi];
// hi is kPlusInfinity when no coefficient is known to be nonzero.
struct PlotPoint {
  int n;
  int lo;
  int hi;
};

struct HullVertex {
  int n;
  int v;
  bool stable;
};

struct NewtonPolygon {
  long prime = 2;
  int truncation = 0;
  std::vector<HullVertex> vertices;
  std::vector<PlotPoint> points;
  std::vector<TailBound> tails;

  // Lower bound for the plotted height at any n (within or beyond truncation).
  int lower_bound_at(long n) const;
};

struct NAndN {
  int n;
  // nullopt: the flat part may continue past the truncation.
  std::optional<int> N;
  int height;
};

NewtonPolygon newton_polygon(const SeriesVector& w);
inline NewtonPolygon newton_polygon(const TruncatedSeries& w) { return newton_polygon(SeriesVector{w}); }

NAndN n_and_N(const NewtonPolygon& np);

// Number of zeros, with multiplicity, on the open unit disk.
int count_zeros_unit_disk(const TruncatedSeries& w);

struct WeierstrassFactorization {
  PadicPoly poly_part;
  TruncatedSeries unit_part;
  int M = 0;
  int T = 0;
  int degree = 0;
};

// L = poly_part * unit_part modulo (p^M, t^T) with deg poly_part = N_L and
// unit_part in 1 + p t Z_p[[t]].
WeierstrassFactorization weierstrass_prepare(const TruncatedSeries& L, int M, int T);

SeriesVector formal_integrate(const SeriesVector& w);
TruncatedSeries formal_integrate(const TruncatedSeries& w);

int delta(long p, long n);

}  // namespace pc
