#pragma once

#include "pkcache/rational.hpp"
#include "pkcache/scheme.hpp"

#include <random>
#include <span>
#include <vector>

namespace pkcache {

// One corner of the privacy-key envelope together with the scheme that
// reaches it.
struct SharedCorner {
  enum class Kind { Broadcast, PrivacyKey, FullCache };
  Kind kind = Kind::Broadcast;
  unsigned t = 0;  // placement parameter, only meaningful for PrivacyKey
  Rational memory;
  Rational load;
  BigInt subpacketization;
};

// Memory sharing between two adjacent envelope corners: a fraction alpha of
// every file goes to corner a, the rest to corner b.
struct SharingPlan {
  Rational memory;
  Rational load;
  Rational alpha;
  SharedCorner a;
  SharedCorner b;
  BigInt subpacketization;  // F_a + F_b, or F_a at a corner
  BigInt min_length;        // least B for which both parts split evenly
};

// Throws OutOfRange for M outside [0, N].
SharingPlan share_memory(unsigned files, unsigned users, Variant variant, const Rational& memory);

struct SharedRun {
  std::vector<std::vector<Symbol>> decoded;  // per user
  std::size_t transmitted_symbols = 0;
  std::size_t cache_symbols = 0;             // per user, equal for all users
  Rational measured_load;                    // transmitted / B
  Rational measured_memory;                  // cache / B
  bool decoded_ok = false;
};

// Runs the two corner schemes side by side on the split library. Throws
// InvalidLength when B is not a multiple of plan.min_length.
SharedRun run_shared(const SharingPlan& plan, const SystemParams& base, const FileSet& files,
                     std::span<const FqVector> demands, std::mt19937_64& rng);

}  // namespace pkcache
