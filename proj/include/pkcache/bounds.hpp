#pragma once

#include "pkcache/rational.hpp"
#include "pkcache/scheme.hpp"

#include <optional>
#include <string>
#include <vector>

namespace pkcache {

struct TradeoffPoint {
  Rational memory;
  Rational load;
};

// Lower convex envelope of a set of achievable (M, R) pairs, built with the
// monotone chain on exact rationals. Past the point of least load the curve
// stays flat, so the envelope is convex and nonincreasing.
class TradeoffCurve {
 public:
  explicit TradeoffCurve(std::vector<TradeoffPoint> points);

  // Hull corners, sorted by memory.
  const std::vector<TradeoffPoint>& corners() const noexcept { return hull_; }
  const Rational& min_memory() const noexcept { return hull_.front().memory; }
  const Rational& max_memory() const noexcept { return max_memory_; }

  // Throws OutOfRange outside [min_memory, max_memory].
  Rational eval(const Rational& memory) const;
  double eval(double memory) const;

  // Index i of the hull segment [corners[i], corners[i+1]] holding memory;
  // equals corners().size()-1 on the flat tail.
  std::size_t segment(const Rational& memory) const;

 private:
  std::vector<TradeoffPoint> hull_;
  Rational max_memory_;
};

// {(0, N)} followed by (M_t, R_t) for t = 0..K, where
//   M_t = 1 + t(N-1)/K,
//   R_t = (C(K,t+1) - C(K - min(N-1, K), t+1)) / C(K,t)   (SFR)
// and min(N, K) replaces min(N-1, K) for LFR.
std::vector<TradeoffPoint> privacy_key_corners(unsigned files, unsigned users, Variant variant);
TradeoffCurve privacy_key_curve(unsigned files, unsigned users, Variant variant);

Rational envelope_eval(const TradeoffCurve& curve, const Rational& memory);
double envelope_eval(const TradeoffCurve& curve, double memory);

// Lower bound on the optimal SFR load under demand privacy against colluding
// users:
//   max over l in [1, N] of  l + min(l+1, K)(N-l) / (N-l+min(l+1, K)) - l M,
// floored at 0.
double converse_sfr(double memory, unsigned files, unsigned users);

// Single-cut cut-set bound max(0, 1 - M/N).
double cutset_bound(double memory, unsigned files, unsigned users);

// Non-private optimum under uncoded placement: envelope of the non-private
// corner points (tN/K, (C(K,t+1) - C(K-min(N,K),t+1))/C(K,t)).
TradeoffCurve nonprivate_curve(unsigned files, unsigned users);
double r_centralized(double memory, unsigned files, unsigned users);

// Decentralized non-private load (N-M)/M (1 - (1-M/N)^min(N,K)); its M -> 0
// limit min(N, K) is returned at M = 0.
double r_decentralized(double memory, unsigned files, unsigned users);

// Factor c with r_D <= c r* for the non-private optimum r*: 2 when
// N >= K(K+1)/2, else 2.00884.
double nonprivate_gap_factor(unsigned files, unsigned users);

// Best available lower bound on the private optimum at M: the max of the
// converse, the cut-set bound and, for M >= 1, r_D / c.
double private_load_lower_bound(const Rational& memory, unsigned files, unsigned users);

struct GapRegime {
  std::string label;       // e.g. "1<=M<=N, N<=K"
  double constant = 0;     // claimed ratio bound
  Rational memory_lo;
  Rational memory_hi;
  std::size_t points = 0;  // grid points evaluated
  std::size_t skipped = 0; // grid points where the lower bound is 0
  double max_ratio = 0;
  std::optional<Rational> argmax;
  bool pass = true;
};

struct GapReport {
  unsigned files = 0;
  unsigned users = 0;
  Variant variant = Variant::SFR;
  Rational grid_step;
  std::vector<GapRegime> regimes;  // only those whose (N, K) condition holds
  double overall_max = 0;
  bool pass = true;
};

// Ratios within this distance above a regime constant still count as PASS.
inline constexpr double kGapTolerance = 1e-6;

// Sweeps M = 0, step, 2 step, .. , N (and N itself) and compares the
// privacy-key envelope against private_load_lower_bound in every regime the
// (N, K) pair falls into. Grid points on a regime boundary count for both
// neighbouring regimes.
GapReport gap_report(unsigned files, unsigned users, Variant variant, const Rational& grid_step);

// Grid points used by the sweeps: 0, step, .., up to and including `end`.
std::vector<Rational> memory_grid(const Rational& end, const Rational& step);

}  // namespace pkcache
