#include "oracles.hpp"

#include "pkcache/error.hpp"
#include "pkcache/linalg.hpp"

#include <doctest.h>

#include <algorithm>
#include <random>

using namespace pkcache;

namespace {

FqVector vec(const Field& f, std::vector<Symbol> v) { return FqVector(f, std::move(v)); }

std::vector<oracle::Vec> raw(const std::vector<FqVector>& vs) {
  std::vector<oracle::Vec> out;
  for (const auto& v : vs) out.emplace_back(v.entries().begin(), v.entries().end());
  return out;
}

std::vector<FqVector> random_rows(const Field& f, std::size_t rows, std::size_t cols, std::mt19937_64& rng) {
  std::uniform_int_distribution<Symbol> s(0, f.order() - 1);
  std::vector<FqVector> out;
  for (std::size_t r = 0; r < rows; ++r) {
    FqVector v(f, cols);
    for (std::size_t c = 0; c < cols; ++c) v.set(c, s(rng));
    out.push_back(v);
  }
  return out;
}

}  // namespace

TEST_SUITE("linalg") {

TEST_CASE("rank examples") {
  const Field f(2);
  std::vector<FqVector> units{FqVector::unit(f, 3, 0), FqVector::unit(f, 3, 1)};
  CHECK(rank_q(units) == 2);
  std::vector<FqVector> dup{vec(f, {1, 1, 0}), vec(f, {1, 1, 0})};
  CHECK(rank_q(dup) == 1);
  std::vector<FqVector> dep{vec(f, {1, 1, 0}), vec(f, {0, 1, 1}), vec(f, {1, 0, 1})};
  CHECK(rank_q(dep) == 2);
}

TEST_CASE("rank errors") {
  const Field f(2);
  std::vector<FqVector> none;
  CHECK_THROWS_AS(rank_q(none), InvalidArgument);
  std::vector<FqVector> ragged{vec(f, {1, 0}), vec(f, {1, 0, 1})};
  CHECK_THROWS_AS(rank_q(ragged), DimensionMismatch);
}

TEST_CASE("rank agrees with span counting and is invariant under row operations") {
  std::mt19937_64 rng(7);
  for (std::uint32_t q : {2u, 3u, 5u}) {
    const Field f(q);
    for (int trial = 0; trial < 60; ++trial) {
      const std::size_t rows = 1 + trial % 4, cols = 1 + (trial / 4) % 4;
      auto vs = random_rows(f, rows, cols, rng);
      const std::size_t r = rank_q(vs);
      CHECK(r == oracle::brute_rank(raw(vs), q));
      CHECK(r <= std::min(rows, cols));
      std::shuffle(vs.begin(), vs.end(), rng);
      CHECK(rank_q(vs) == r);
      std::uniform_int_distribution<Symbol> nz(1, q - 1);
      for (auto& v : vs) v = v.scaled(nz(rng));
      CHECK(rank_q(vs) == r);
    }
  }
}

TEST_CASE("leader set examples") {
  const Field f(2);
  std::vector<FqVector> two{vec(f, {0, 1, 1}), vec(f, {1, 0, 1})};
  CHECK(leader_set(two) == std::vector<std::size_t>{0, 1});
  std::vector<FqVector> same(3, vec(f, {1, 0, 1}));
  CHECK(leader_set(same) == std::vector<std::size_t>{0});
  std::vector<FqVector> zeros(3, FqVector(f, 3));
  CHECK(leader_set(zeros).empty());
}

TEST_CASE("leader set properties") {
  std::mt19937_64 rng(11);
  for (std::uint32_t q : {2u, 3u}) {
    const Field f(q);
    for (int trial = 0; trial < 100; ++trial) {
      const auto vs = random_rows(f, 1 + trial % 5, 1 + trial % 3, rng);
      const auto l = leader_set(vs);
      CHECK(l.size() == rank_q(vs));
      CHECK(std::is_sorted(l.begin(), l.end()));
      if (!l.empty()) {
        std::vector<FqVector> chosen;
        for (auto k : l) chosen.push_back(vs[k]);
        CHECK(rank_q(chosen) == l.size());
      }
      // Greedy: each skipped index depends on the leaders before it.
      for (std::size_t k = 0; k < vs.size(); ++k) {
        if (std::find(l.begin(), l.end(), k) != l.end()) continue;
        std::vector<FqVector> before;
        for (auto j : l) {
          if (j < k) before.push_back(vs[j]);
        }
        if (before.empty()) {
          CHECK(vs[k].is_zero());
        } else {
          auto with_k = before;
          with_k.push_back(vs[k]);
          CHECK(rank_q(with_k) == before.size());
        }
      }
    }
  }
}

TEST_CASE("solve examples") {
  const Field f(2);
  const auto id = FqMatrix::identity(f, 3);
  const auto x = solve(id, vec(f, {1, 0, 1}));
  REQUIRE(x);
  CHECK(*x == vec(f, {1, 0, 1}));
  std::vector<FqVector> one{vec(f, {1, 1})};
  const auto y = solve(FqMatrix::from_rows(one), vec(f, {1}));
  REQUIRE(y);
  CHECK(*y == vec(f, {1, 0}));
  std::vector<FqVector> bad{vec(f, {1, 0}), vec(f, {1, 0})};
  CHECK_FALSE(solve(FqMatrix::from_rows(bad), vec(f, {1, 0})));
}

TEST_CASE("solve properties against brute force") {
  std::mt19937_64 rng(5);
  for (std::uint32_t q : {2u, 3u}) {
    const Field f(q);
    for (int trial = 0; trial < 80; ++trial) {
      const std::size_t rows = 1 + trial % 4, cols = 1 + (trial / 4) % 3;
      const auto rs = random_rows(f, rows, cols, rng);
      const auto a = FqMatrix::from_rows(rs);
      const auto b = random_rows(f, 1, rows, rng).front();
      const auto x = solve(a, b);
      bool exists = false;
      std::vector<Symbol> c(cols, 0);
      while (true) {
        if (a.apply(FqVector(f, c)) == b) exists = true;
        std::size_t i = 0;
        while (i < cols && ++c[i] == q) c[i++] = 0;
        if (i == cols) break;
      }
      CHECK(static_cast<bool>(x) == exists);
      if (x) {
        CHECK(a.apply(*x) == b);
      } else {
        auto augmented = raw(rs);
        for (std::size_t r = 0; r < rows; ++r) augmented[r].push_back(b[r]);
        CHECK(oracle::brute_rank(augmented, q) > oracle::brute_rank(raw(rs), q));
      }
    }
  }
}

TEST_CASE("solve dimension errors") {
  const Field f(3);
  CHECK_THROWS_AS(solve(FqMatrix::identity(f, 2), vec(f, {1, 2, 0})), DimensionMismatch);
  CHECK_THROWS_AS(FqMatrix::identity(f, 2).apply(vec(f, {1})), DimensionMismatch);
  std::vector<FqVector> mixed{vec(f, {1}), vec(Field(5), {1})};
  CHECK_THROWS_AS(FqMatrix::from_rows(mixed), FieldMismatch);
}

TEST_CASE("vector basics") {
  const Field f(5);
  auto a = vec(f, {1, 4, 3});
  CHECK(a.component_sum() == 3);
  CHECK((a + vec(f, {4, 1, 2})).is_zero());
  CHECK((a - a).is_zero());
  CHECK(a.scaled(2) == vec(f, {2, 3, 1}));
  CHECK_THROWS_AS(vec(f, {5}), InvalidArgument);
  CHECK_THROWS_AS(a += vec(Field(3), {1, 1, 1}), FieldMismatch);
}

}
