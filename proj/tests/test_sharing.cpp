#include "pkcache/bounds.hpp"
#include "pkcache/error.hpp"
#include "pkcache/sharing.hpp"

#include <doctest.h>

using namespace pkcache;

TEST_SUITE("sharing") {

TEST_CASE("plan at a corner") {
  const auto plan = share_memory(3, 2, Variant::SFR, Rational(2));
  CHECK(plan.alpha == 1);
  CHECK(plan.a.kind == SharedCorner::Kind::PrivacyKey);
  CHECK(plan.a.t == 1);
  CHECK(plan.load == Rational(1, 2));
  CHECK(plan.subpacketization == 2);
}

TEST_CASE("plan between corners") {
  const auto plan = share_memory(3, 2, Variant::SFR, Rational(1));
  CHECK(plan.a.kind == SharedCorner::Kind::Broadcast);
  CHECK(plan.b.t == 1);
  CHECK(plan.alpha == Rational(1, 2));
  CHECK(plan.alpha * plan.a.memory + (1 - plan.alpha) * plan.b.memory == 1);
  CHECK(plan.alpha * plan.a.load + (1 - plan.alpha) * plan.b.load == plan.load);
  CHECK(plan.load == Rational(7, 4));
  CHECK(plan.subpacketization == 3);
  CHECK(plan.min_length == 4);

  const auto top = share_memory(3, 2, Variant::SFR, Rational(5, 2));
  CHECK(top.b.kind == SharedCorner::Kind::FullCache);
  CHECK_THROWS_AS(share_memory(3, 2, Variant::SFR, Rational(4)), OutOfRange);
}

TEST_CASE("shared runs decode and meet the envelope") {
  std::mt19937_64 rng(12);
  for (unsigned n = 2; n <= 4; ++n) {
    for (unsigned k = 2; k <= 3; ++k) {
      for (Variant v : {Variant::SFR, Variant::LFR}) {
        for (const Rational& m : memory_grid(Rational(n), Rational(1, 3))) {
          const auto plan = share_memory(n, k, v, m);
          const SystemParams base{n, k, 0, 3, 0, v};
          const std::size_t len = plan.min_length.convert_to<std::size_t>();
          FileSet files(n, std::vector<Symbol>(len));
          std::uniform_int_distribution<Symbol> s(0, 2);
          for (auto& f : files) {
            for (auto& x : f) x = s(rng);
          }
          const auto space = demand_space(base);
          std::vector<FqVector> d;
          for (unsigned u = 0; u < k; ++u) d.push_back(space[(u * 5 + 1) % space.size()]);
          const auto run = run_shared(plan, base, files, d, rng);
          CHECK(run.decoded_ok);
          CHECK(run.measured_memory == m);
          CHECK(run.measured_load <= plan.load);
        }
      }
    }
  }
}

TEST_CASE("shared run rejects lengths that do not split") {
  const auto plan = share_memory(3, 2, Variant::SFR, Rational(1));
  std::mt19937_64 rng(1);
  const Field f(2);
  const FileSet files(3, std::vector<Symbol>(2, 0));
  const std::vector<FqVector> d{FqVector::unit(f, 3, 0), FqVector::unit(f, 3, 1)};
  CHECK_THROWS_AS(run_shared(plan, SystemParams{3, 2, 0, 2, 0, Variant::SFR}, files, d, rng), InvalidLength);
}

}
