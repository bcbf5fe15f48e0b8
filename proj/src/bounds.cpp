#include "pkcache/bounds.hpp"

#include "pkcache/error.hpp"

#include <algorithm>
#include <cmath>

namespace pkcache {

namespace {

// Orientation of (o, a, b): > 0 for a counter-clockwise turn.
Rational cross(const TradeoffPoint& o, const TradeoffPoint& a, const TradeoffPoint& b) {
  return (a.memory - o.memory) * (b.load - o.load) - (a.load - o.load) * (b.memory - o.memory);
}

}  // namespace

TradeoffCurve::TradeoffCurve(std::vector<TradeoffPoint> points) {
  if (points.empty()) throw InvalidArgument("tradeoff curve needs at least one point");
  std::sort(points.begin(), points.end(), [](const TradeoffPoint& a, const TradeoffPoint& b) {
    return a.memory != b.memory ? a.memory < b.memory : a.load < b.load;
  });
  max_memory_ = points.back().memory;

  for (const auto& p : points) {
    if (!hull_.empty() && hull_.back().memory == p.memory) continue;  // kept the lower load
    while (hull_.size() >= 2 && cross(hull_[hull_.size() - 2], hull_.back(), p) <= 0) hull_.pop_back();
    hull_.push_back(p);
  }
  const auto lowest = std::min_element(hull_.begin(), hull_.end(),
                                       [](const TradeoffPoint& a, const TradeoffPoint& b) {
                                         return a.load < b.load;
                                       });
  hull_.erase(lowest + 1, hull_.end());
}

std::size_t TradeoffCurve::segment(const Rational& memory) const {
  if (memory < min_memory() || memory > max_memory_) {
    throw OutOfRange("memory " + to_fraction_string(memory) + " outside [" +
                     to_fraction_string(min_memory()) + ", " + to_fraction_string(max_memory_) + "]");
  }
  const auto it = std::upper_bound(hull_.begin(), hull_.end(), memory,
                                   [](const Rational& m, const TradeoffPoint& p) { return m < p.memory; });
  return static_cast<std::size_t>(it - hull_.begin()) - 1;
}

Rational TradeoffCurve::eval(const Rational& memory) const {
  const std::size_t i = segment(memory);
  if (i + 1 == hull_.size()) return hull_.back().load;
  const auto& a = hull_[i];
  const auto& b = hull_[i + 1];
  return a.load + (b.load - a.load) * (memory - a.memory) / (b.memory - a.memory);
}

double TradeoffCurve::eval(double memory) const {
  const double lo = to_double(min_memory());
  const double hi = to_double(max_memory_);
  if (!(memory >= lo && memory <= hi)) {
    throw OutOfRange("memory " + std::to_string(memory) + " outside the curve's range");
  }
  std::size_t i = 0;
  while (i + 1 < hull_.size() && to_double(hull_[i + 1].memory) <= memory) ++i;
  if (i + 1 == hull_.size()) return to_double(hull_.back().load);
  const double ma = to_double(hull_[i].memory), mb = to_double(hull_[i + 1].memory);
  const double ra = to_double(hull_[i].load), rb = to_double(hull_[i + 1].load);
  return ra + (rb - ra) * (memory - ma) / (mb - ma);
}

std::vector<TradeoffPoint> privacy_key_corners(unsigned files, unsigned users, Variant variant) {
  if (files < 2 || users < 2) throw InvalidArgument("need N >= 2 and K >= 2");
  const long long rank_cap = variant == Variant::SFR ? std::min<long long>(files - 1, users)
                                                     : std::min<long long>(files, users);
  std::vector<TradeoffPoint> out;
  out.push_back({Rational(0), Rational(files)});
  for (unsigned t = 0; t <= users; ++t) {
    const Rational memory = Rational(1) + Rational(static_cast<long long>(t) * (files - 1), users);
    const BigInt num = binomial(users, t + 1) - binomial(users - rank_cap, t + 1);
    out.push_back({memory, Rational(num, binomial(users, t))});
  }
  return out;
}

TradeoffCurve privacy_key_curve(unsigned files, unsigned users, Variant variant) {
  return TradeoffCurve(privacy_key_corners(files, users, variant));
}

Rational envelope_eval(const TradeoffCurve& curve, const Rational& memory) { return curve.eval(memory); }

double envelope_eval(const TradeoffCurve& curve, double memory) { return curve.eval(memory); }

double converse_sfr(double memory, unsigned files, unsigned users) {
  const double n = files;
  double best = 0.0;
  for (unsigned l = 1; l <= files; ++l) {
    const double m = std::min(l + 1, users);
    const double value = l + m * (n - l) / (n - l + m) - l * memory;
    best = std::max(best, value);
  }
  return best;
}

double cutset_bound(double memory, unsigned files, unsigned /*users*/) {
  return std::max(0.0, 1.0 - memory / files);
}

TradeoffCurve nonprivate_curve(unsigned files, unsigned users) {
  const long long m = std::min(files, users);
  std::vector<TradeoffPoint> points;
  for (unsigned t = 0; t <= users; ++t) {
    const BigInt num = binomial(users, t + 1) - binomial(users - m, t + 1);
    points.push_back({Rational(static_cast<long long>(t) * files, users), Rational(num, binomial(users, t))});
  }
  return TradeoffCurve(std::move(points));
}

double r_centralized(double memory, unsigned files, unsigned users) {
  return nonprivate_curve(files, users).eval(memory);
}

double r_decentralized(double memory, unsigned files, unsigned users) {
  if (memory < 0 || memory > files) throw OutOfRange("memory outside [0, N]");
  const unsigned m = std::min(files, users);
  if (memory == 0.0) return m;
  const double n = files;
  return (n - memory) / memory * (1.0 - std::pow(1.0 - memory / n, m));
}

double nonprivate_gap_factor(unsigned files, unsigned users) {
  return 2ull * files >= static_cast<unsigned long long>(users) * (users + 1) ? 2.0 : 2.00884;
}

double private_load_lower_bound(const Rational& memory, unsigned files, unsigned users) {
  const double m = to_double(memory);
  double bound = std::max(converse_sfr(m, files, users), cutset_bound(m, files, users));
  if (memory >= 1) {
    bound = std::max(bound, r_decentralized(m, files, users) / nonprivate_gap_factor(files, users));
  }
  return bound;
}

std::vector<Rational> memory_grid(const Rational& end, const Rational& step) {
  if (step <= 0) throw InvalidArgument("grid step must be positive");
  if (end < 0) throw InvalidArgument("grid end must be nonnegative");
  std::vector<Rational> grid;
  for (Rational m = 0; m <= end; m += step) grid.push_back(m);
  if (grid.back() != end) grid.push_back(end);
  return grid;
}

namespace {

struct RegimeSpec {
  const char* label;
  Rational lo;
  Rational hi;
  double constant;
};

std::vector<RegimeSpec> regimes_for(unsigned files, unsigned users, Variant variant) {
  const unsigned long long n = files, k = users;
  const Rational top(files);
  std::vector<RegimeSpec> specs;
  if (n >= 2 * k) {
    specs.push_back({"0<=M<=1, N>=2K", Rational(0), Rational(1), 2.0});
  } else {
    specs.push_back({"0<=M<=1/2, N<2K", Rational(0), Rational(1, 2), 2.0});
    specs.push_back({"1/2<=M<=1, N<2K", Rational(1, 2), Rational(1), 4.0});
  }
  if (2 * n >= k * (k + 1)) {
    specs.push_back({"1<=M<=N, N>=K(K+1)/2", Rational(1), top, 4.0});
  } else if (n > k) {
    specs.push_back({"1<=M<=N, K<N<K(K+1)/2", Rational(1), top, 4.0177});
  } else {
    specs.push_back({"1<=M<=N, N<=K", Rational(1), top, variant == Variant::SFR ? 5.4606 : 6.3707});
  }
  return specs;
}

}  // namespace

GapReport gap_report(unsigned files, unsigned users, Variant variant, const Rational& grid_step) {
  const TradeoffCurve curve = privacy_key_curve(files, users, variant);
  GapReport report;
  report.files = files;
  report.users = users;
  report.variant = variant;
  report.grid_step = grid_step;

  const auto specs = regimes_for(files, users, variant);
  for (const auto& spec : specs) {
    GapRegime regime;
    regime.label = spec.label;
    regime.constant = spec.constant;
    regime.memory_lo = spec.lo;
    regime.memory_hi = spec.hi;
    report.regimes.push_back(std::move(regime));
  }

  for (const Rational& m : memory_grid(Rational(files), grid_step)) {
    const double lower = private_load_lower_bound(m, files, users);
    const double achieved = to_double(curve.eval(m));
    const bool defined = lower > 1e-12;
    const double ratio = defined ? achieved / lower : 0.0;
    if (defined) report.overall_max = std::max(report.overall_max, ratio);
    for (auto& regime : report.regimes) {
      if (m < regime.memory_lo || m > regime.memory_hi) continue;
      ++regime.points;
      if (!defined) {
        ++regime.skipped;
        continue;
      }
      if (!regime.argmax || ratio > regime.max_ratio) {
        regime.max_ratio = ratio;
        regime.argmax = m;
      }
    }
  }
  for (auto& regime : report.regimes) {
    regime.pass = regime.max_ratio <= regime.constant + kGapTolerance;
    report.pass = report.pass && regime.pass;
  }
  return report;
}

}  // namespace pkcache
