#pragma once

#include "pkcache/gf.hpp"
#include "pkcache/linalg.hpp"
#include "pkcache/rational.hpp"
#include "pkcache/subsets.hpp"

#include <cstddef>
#include <map>
#include <random>
#include <span>
#include <string_view>
#include <utility>
#include <vector>

namespace pkcache {

// SFR: every user asks for one whole file. LFR: every user asks for an
// arbitrary F_q-linear combination of the files.
enum class Variant { SFR, LFR };

std::string_view to_string(Variant v);
// Accepts "sfr"/"lfr" in any case. Throws InvalidArgument otherwise.
Variant parse_variant(std::string_view text);

using Packet = std::vector<Symbol>;
using FileSet = std::vector<std::vector<Symbol>>;

struct SystemParams {
  unsigned files = 2;      // N
  unsigned users = 2;      // K
  unsigned t = 1;          // placement parameter, 0 <= t <= K-1
  std::uint32_t q = 2;     // field modulus
  std::size_t length = 2;  // B, symbols per file
  Variant variant = Variant::SFR;

  // Throws InvalidArgument for out-of-range parameters and InvalidLength when
  // B is not a positive multiple of C(K, t).
  void validate() const;

  Field field() const { return Field(q); }
  // C(K, t): packets per file.
  std::size_t subpacketization() const;
  std::size_t packet_length() const;
  // M_t = 1 + t(N-1)/K in file units.
  Rational memory() const;
};

// The files cut into C(K, t) equal packets. Packet T of file n is the
// contiguous block at position index_of(T) of the file, so concatenating the
// packets in canonical subset order gives the file back.
class Library {
 public:
  // Throws InvalidLength on length/divisibility violations.
  Library(const Field& field, unsigned users, unsigned t, FileSet files);

  const Field& field() const noexcept { return field_; }
  unsigned file_count() const noexcept { return static_cast<unsigned>(files_.size()); }
  std::size_t file_length() const noexcept { return length_; }
  std::size_t packet_length() const noexcept { return packet_length_; }
  const SubsetFamily& subsets() const noexcept { return subsets_; }
  const std::vector<Symbol>& file(unsigned n) const { return files_.at(n); }
  const FileSet& files() const noexcept { return files_; }

  std::span<const Symbol> packet(unsigned n, std::size_t subset_index) const;
  // W_{a,T} = sum_n a_n W_{n,T}.
  Packet combine(const FqVector& coefficients, std::size_t subset_index) const;
  // W_a = sum_n a_n W_n over whole files.
  std::vector<Symbol> combine_files(const FqVector& coefficients) const;

 private:
  Field field_;
  SubsetFamily subsets_;
  std::size_t length_;
  std::size_t packet_length_;
  FileSet files_;
};

Library split_library(FileSet files, const SystemParams& params);

// Contents of one user's cache: every packet W_{n,T} with the user in T, plus
// the privacy key packets W_{p_k,T} for every T without the user. The key
// vector p_k itself is not stored; decoding only needs the key packets.
class UserCache {
 public:
  UserCache(unsigned user, unsigned files) : user_(user), files_(files) {}

  unsigned user() const noexcept { return user_; }

  void put_uncoded(unsigned n, std::size_t subset_index, Packet packet);
  void put_key(std::size_t subset_index, Packet packet);

  // nullptr when the packet is not in the cache.
  const Packet* uncoded(unsigned n, std::size_t subset_index) const;
  const Packet* key(std::size_t subset_index) const;

  std::size_t symbol_count() const noexcept;
  std::size_t packet_count() const noexcept { return uncoded_.size() + keys_.size(); }

  // Canonical iteration order: uncoded by (subset, file), then keys by subset.
  const std::map<std::pair<std::size_t, unsigned>, Packet>& uncoded_packets() const noexcept {
    return uncoded_;
  }
  const std::map<std::size_t, Packet>& key_packets() const noexcept { return keys_; }

 private:
  unsigned user_;
  unsigned files_;
  std::map<std::pair<std::size_t, unsigned>, Packet> uncoded_;  // (subset, file)
  std::map<std::size_t, Packet> keys_;
};

struct PlacementState {
  std::vector<FqVector> keys;     // p_1 .. p_K
  std::vector<UserCache> caches;  // Z_1 .. Z_K
};

struct DeliverySignal {
  std::vector<std::size_t> leaders;  // L, increasing user indices
  std::vector<FqVector> queries;     // q_k = p_k + d_k
  // Y_S for every (t+1)-subset S meeting L, in canonical subset order.
  std::vector<std::pair<UserSet, Packet>> payload;
};

// Full family {Y_S : S in Omega_{t+1}} in canonical order.
using SignalFamily = std::vector<std::pair<UserSet, Packet>>;

// Independent keys, one per user. SFR keys are uniform over the affine
// hyperplane {x : sum x = q-1}, drawn by sampling the first N-1 coordinates
// and solving for the last; LFR keys are uniform over F_q^N.
std::vector<FqVector> sample_keys(const SystemParams& params, std::mt19937_64& rng);

// Every vector a key may take, in a fixed order (used for enumeration).
std::vector<FqVector> key_space(const SystemParams& params);
// Every demand a user may make: unit vectors for SFR, all of F_q^N for LFR.
std::vector<FqVector> demand_space(const SystemParams& params);

UserCache fill_cache(const Library& library, const FqVector& key, unsigned user);
PlacementState place(const Library& library, std::vector<FqVector> keys,
                     const SystemParams& params);

// Throws InvalidDemand for wrong count/length or, under SFR, non-unit demands.
void validate_demands(std::span<const FqVector> demands, const SystemParams& params);

// +1 for the 1st, 3rd, .. member of S in increasing order, -1 for the others.
Symbol member_sign(const Field& field, UserSet s, unsigned user);

// Y_S = sum_{j in S} sign(j, S) W_{q_j, S \ {j}}.
Packet multicast_signal(const Library& library, std::span<const FqVector> queries, UserSet s);

DeliverySignal deliver(const PlacementState& placement, std::span<const FqVector> demands,
                       const Library& library, const SystemParams& params);

// Completes the payload with every Y_S whose S misses the leader set, each
// obtained as an F_q-combination of transmitted signals. The combination is
// found by solving for the target's coefficient row over the packet basis
// {W_{n,T}}. Throws TheoremViolation if no combination exists.
SignalFamily reconstruct_missing(const DeliverySignal& signal, const SystemParams& params);

// Decoding side shared by all users of one broadcast: the untransmitted
// signals are reconstructed once, then every user decodes from the result.
class Decoder {
 public:
  Decoder(const DeliverySignal& signal, const SystemParams& params);

  // Returns W_{d_k}. Throws DecodeFailure on inconsistent inputs.
  std::vector<Symbol> decode(unsigned user, const UserCache& cache, const FqVector& demand) const;

  const SignalFamily& family() const noexcept { return family_; }

 private:
  SystemParams params_;
  SubsetFamily packets_;  // Omega_t
  SubsetFamily signals_;  // Omega_{t+1}
  std::vector<FqVector> queries_;
  SignalFamily family_;
};

std::vector<Symbol> decode(unsigned user, const DeliverySignal& signal, const UserCache& cache,
                           const FqVector& demand, const SystemParams& params);

// Payload packets divided by C(K, t). Leader set and query vectors are not
// counted: their size does not grow with B.
Rational measured_load(const DeliverySignal& signal, const SystemParams& params);

// C(K, t+1) - C(K - r, t+1) for query rank r.
std::size_t payload_size(unsigned users, unsigned t, std::size_t rank);

}  // namespace pkcache
