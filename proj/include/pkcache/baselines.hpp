#pragma once

#include "pkcache/gf.hpp"
#include "pkcache/linalg.hpp"
#include "pkcache/rational.hpp"
#include "pkcache/scheme.hpp"

#include <random>
#include <span>
#include <vector>

namespace pkcache {

struct CornerPoint {
  unsigned t = 0;
  Rational memory;
  Rational load;
  BigInt subpacketization;
};

// Virtual-user scheme (a non-private scheme for NK users), t = 0..KN:
//   M = t/K, R = (C(KN,t+1) - C((K-1)N,t+1)) / C(KN,t), F = C(KN,t).
std::vector<CornerPoint> virtual_user_points(unsigned files, unsigned users);

// Non-private scheme, t = 0..K:
//   M = tN/K, R = (C(K,t+1) - C(K-min(N,K),t+1)) / C(K,t), F = C(K,t).
std::vector<CornerPoint> nonprivate_points(unsigned files, unsigned users);

// Privacy-key corners with their subpacketization: the trivial broadcast
// point (0, N) with F = 1 (reported with t = 0 but kept first), then t = 0..K.
std::vector<CornerPoint> privacy_key_points(unsigned files, unsigned users, Variant variant);

// Single-file scheme with a random slot permutation and per-user position
// keys. Private against one curious user when files are uniform, but the
// payload slots leak demands once the file realization is fixed.
//
// Positions T_k, keys S_k, side indices J_k and query residues Q_k are all
// 1-based residues in [1, K], matching the mod-K convention (mK + j) -> j.
struct Example1Randomness {
  std::vector<unsigned> permutation;  // T_1..T_K, a permutation of 1..K
  std::vector<unsigned> keys;         // S_1..S_K in 1..K
  FileSet fillers;                    // V_1..V_K, each (1 - M/N) B symbols
};

struct Example1Cache {
  unsigned key = 0;  // S_k
  FileSet cached_parts;  // W_n^(c) for every n
};

struct Example1Signal {
  std::vector<unsigned> queries;  // Q_1..Q_K
  FileSet slots;                  // Y_1..Y_K
};

struct Example1Run {
  std::vector<unsigned> side_indices;  // J_1..J_K
  Example1Signal signal;
  std::vector<Example1Cache> caches;
  FileSet decoded;  // what each user reconstructs
};

// (m K + j) mapped to j in [1, K].
unsigned residue_1k(long long value, unsigned users);

Example1Randomness sample_example1_randomness(unsigned users, std::size_t filler_length,
                                              const Field& field, std::mt19937_64& rng);

// Runs placement, delivery and decoding. Demands must be unit vectors.
// Throws Unsupported when N <= K, InvalidLength when (M/N) B is not an
// integer or files have mismatched lengths, InvalidDemand for bad demands.
Example1Run example1_run(unsigned files, unsigned users, const Rational& memory, const Field& field,
                         const FileSet& library, std::span<const FqVector> demands,
                         const Example1Randomness& randomness);

}  // namespace pkcache
