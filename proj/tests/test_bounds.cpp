#include "oracles.hpp"

#include "pkcache/bounds.hpp"
#include "pkcache/error.hpp"

#include <doctest.h>

#include <cmath>

using namespace pkcache;

namespace {

std::vector<oracle::Point> as_points(const std::vector<TradeoffPoint>& v) {
  std::vector<oracle::Point> out;
  for (const auto& p : v) out.push_back({p.memory, p.load});
  return out;
}

}  // namespace

TEST_SUITE("bounds") {

TEST_CASE("corner examples") {
  const auto a = privacy_key_corners(3, 2, Variant::SFR);
  REQUIRE(a.size() == 4);
  CHECK(a[0].memory == 0);
  CHECK(a[0].load == 3);
  CHECK(a[2].memory == 2);
  CHECK(a[2].load == Rational(1, 2));
  CHECK(a[3].memory == 3);
  CHECK(a[3].load == 0);
  const auto b = privacy_key_corners(2, 3, Variant::SFR);
  CHECK(b[2].memory == Rational(4, 3));
  CHECK(b[2].load == Rational(2, 3));
}

TEST_CASE("corners match the sum-of-binomials form") {
  for (unsigned n = 2; n <= 9; ++n) {
    for (unsigned k = 2; k <= 9; ++k) {
      const auto sfr = privacy_key_corners(n, k, Variant::SFR);
      const auto lfr = privacy_key_corners(n, k, Variant::LFR);
      for (unsigned t = 0; t <= k; ++t) {
        CHECK(sfr[t + 1].load == oracle::corner_load(k, t, std::min(n - 1, k)));
        CHECK(lfr[t + 1].load == oracle::corner_load(k, t, std::min(n, k)));
        CHECK(sfr[t + 1].memory == Rational(1) + Rational(t * (n - 1), k));
      }
    }
  }
}

TEST_CASE("envelope examples") {
  const auto curve = privacy_key_curve(3, 2, Variant::SFR);
  CHECK(curve.eval(Rational(1)) == Rational(7, 4));
  CHECK(curve.eval(Rational(2)) == Rational(1, 2));
  CHECK(curve.eval(Rational(0)) == 3);
  CHECK(curve.eval(Rational(5, 2)) == Rational(1, 4));
  CHECK(envelope_eval(curve, 1.0) == doctest::Approx(1.75).epsilon(1e-12));
  const auto& c = curve.corners();
  for (std::size_t i = 0; i + 1 < c.size(); ++i) {
    const Rational mid = (c[i].memory + c[i + 1].memory) / 2;
    CHECK(curve.eval(mid) == (c[i].load + c[i + 1].load) / 2);
  }
  CHECK_THROWS_AS(curve.eval(Rational(4)), OutOfRange);
  CHECK_THROWS_AS(curve.eval(Rational(-1)), OutOfRange);
}

TEST_CASE("hull against the memory-sharing oracle") {
  for (unsigned n = 2; n <= 7; ++n) {
    for (unsigned k = 2; k <= 7; ++k) {
      for (Variant v : {Variant::SFR, Variant::LFR}) {
        const auto corners = privacy_key_corners(n, k, v);
        const TradeoffCurve curve(corners);
        const auto pts = as_points(corners);
        for (const Rational& m : memory_grid(Rational(n), Rational(1, 7))) {
          CHECK(curve.eval(m) == oracle::lower_envelope(pts, m));
        }
        for (const auto& p : corners) CHECK(curve.eval(p.memory) <= p.load);
        // Convex and nonincreasing on the hull corners.
        const auto& h = curve.corners();
        for (std::size_t i = 0; i + 1 < h.size(); ++i) {
          CHECK(h[i].memory < h[i + 1].memory);
          CHECK(h[i + 1].load <= h[i].load);
        }
        for (std::size_t i = 0; i + 2 < h.size(); ++i) {
          const Rational s1 = (h[i + 1].load - h[i].load) / (h[i + 1].memory - h[i].memory);
          const Rational s2 = (h[i + 2].load - h[i + 1].load) / (h[i + 2].memory - h[i + 1].memory);
          CHECK(s1 <= s2);
        }
      }
    }
  }
}

TEST_CASE("flat tail past the least load") {
  const TradeoffCurve c({{Rational(0), Rational(4)}, {Rational(1), Rational(1)}, {Rational(3), Rational(2)}});
  CHECK(c.eval(Rational(2)) == 1);
  CHECK(c.eval(Rational(3)) == 1);
  CHECK(c.max_memory() == 3);
}

TEST_CASE("converse examples") {
  for (unsigned n = 2; n <= 8; ++n) {
    for (unsigned k = 2; k <= 8; ++k) {
      CHECK(converse_sfr(0, n, k) == doctest::Approx(n));
      CHECK(converse_sfr(n, n, k) == 0.0);
    }
  }
  CHECK(converse_sfr(1, 3, 2) == doctest::Approx(1.0));
}

TEST_CASE("cut-set and non-private loads") {
  CHECK(cutset_bound(0, 3, 2) == 1.0);
  CHECK(cutset_bound(3, 3, 2) == 0.0);
  CHECK(cutset_bound(1, 3, 2) == doctest::Approx(2.0 / 3));
  CHECK(r_decentralized(5, 5, 3) == 0.0);
  CHECK(r_decentralized(1, 2, 2) == doctest::Approx(0.75));
  for (unsigned n = 2; n <= 6; ++n) {
    for (unsigned k = 2; k <= 6; ++k) {
      CHECK(r_centralized(0, n, k) == doctest::Approx(std::min(n, k)));
      CHECK(r_decentralized(0, n, k) == doctest::Approx(std::min(n, k)));
      CHECK(r_decentralized(1e-9, n, k) == doctest::Approx(std::min(n, k)).epsilon(1e-6));
      // r_D dominates r_C.
      for (double m = 0; m <= n; m += 0.25) CHECK(r_decentralized(m, n, k) >= r_centralized(m, n, k) - 1e-12);
    }
  }
  CHECK_THROWS_AS(r_decentralized(3.5, 3, 2), OutOfRange);
  CHECK(nonprivate_gap_factor(3, 2) == 2.0);
  CHECK(nonprivate_gap_factor(5, 3) == 2.00884);
}

TEST_CASE("achievability dominates the converse; LFR dominates SFR") {
  for (unsigned n = 2; n <= 12; ++n) {
    for (unsigned k = 2; k <= 12; ++k) {
      const auto sfr = privacy_key_curve(n, k, Variant::SFR);
      const auto lfr = privacy_key_curve(n, k, Variant::LFR);
      for (const Rational& m : memory_grid(Rational(n), Rational(1, 20))) {
        const Rational rf = sfr.eval(m), rl = lfr.eval(m);
        CHECK(converse_sfr(to_double(m), n, k) <= to_double(rf) + 1e-9);
        CHECK(rf <= rl);
        if (n > k) CHECK(rf == rl);
      }
    }
  }
}

TEST_CASE("LFR over SFR corner ratio") {
  for (unsigned n = 2; n <= 12; ++n) {
    for (unsigned k = n; k <= 14; ++k) {
      const auto sfr = privacy_key_corners(n, k, Variant::SFR);
      const auto lfr = privacy_key_corners(n, k, Variant::LFR);
      for (unsigned t = 0; t + n <= k; ++t) {
        CHECK(lfr[t + 1].load / sfr[t + 1].load <= Rational(1) + Rational(1, n - 1));
      }
      for (unsigned t = k - n + 1; t <= k; ++t) CHECK(lfr[t + 1].load == sfr[t + 1].load);
    }
  }
}

TEST_CASE("gap examples") {
  const auto a = gap_report(30, 10, Variant::SFR, Rational(1, 100));
  REQUIRE(a.regimes.size() == 2);
  CHECK(a.regimes[0].memory_hi == 1);
  CHECK(a.regimes[0].max_ratio <= 2.0 + kGapTolerance);

  const auto b = gap_report(10, 30, Variant::LFR, Rational(1, 100));
  CHECK(b.regimes.back().constant == 6.3707);
  CHECK(b.regimes.back().max_ratio <= 6.3707 + kGapTolerance);
  CHECK(b.pass);

  const auto c = gap_report(3, 2, Variant::SFR, Rational(1, 100));
  REQUIRE(!c.regimes.empty());
  CHECK(c.regimes.back().memory_lo == 1);
  CHECK(c.regimes.back().max_ratio <= 21.0 / 8 + 1e-12);
  CHECK(c.pass);
}

TEST_CASE("ratio at zero memory is one") {
  for (unsigned n = 2; n <= 12; ++n) {
    for (unsigned k = 2; k <= 12; ++k) {
      const double lower = private_load_lower_bound(Rational(0), n, k);
      CHECK(lower == doctest::Approx(n));
      CHECK(to_double(privacy_key_curve(n, k, Variant::SFR).eval(Rational(0))) / lower == doctest::Approx(1.0));
    }
  }
}

TEST_CASE("memory grid") {
  const auto g = memory_grid(Rational(1), Rational(3, 10));
  REQUIRE(g.size() == 5);
  CHECK(g[3] == Rational(9, 10));
  CHECK(g[4] == 1);
  CHECK(memory_grid(Rational(2), Rational(1, 100)).size() == 201);
  CHECK_THROWS_AS(memory_grid(Rational(1), Rational(0)), InvalidArgument);
}

}
