#pragma once

#include "pkcache/baselines.hpp"
#include "pkcache/rational.hpp"
#include "pkcache/scheme.hpp"
#include "pkcache/subsets.hpp"

#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace pkcache {

// What one execution exposes: the broadcast and every user's cache, each
// flattened to an opaque byte string. Equal strings mean equal values.
struct Observation {
  std::string signal;
  std::vector<std::string> caches;
};

// A scheme with the file realization already fixed. Its randomness is
// indexed 0..key_space-1 with the uniform law; demands are indices into
// demand_alphabet, one per user.
struct SchemeRunner {
  std::string name;
  unsigned users = 0;
  std::uint64_t key_space = 0;
  std::vector<FqVector> demand_alphabet;
  std::function<Observation(std::uint64_t key_index, std::span<const std::size_t> demands)> run;
};

using RunnerFactory = std::function<SchemeRunner(const FileSet& files)>;

struct AuditConfig {
  // Colluding sets to test; empty means every subset of [K], including {}.
  std::vector<UserSet> colluder_sets;
  std::vector<FileSet> file_realizations;
  std::uint64_t budget = 10'000'000;  // max key_space * |D|^K per realization
};

// Two assignments of the non-colluders' demands, with the colluders' demands
// fixed, under which (X, Z_S) has different laws.
struct Witness {
  std::size_t realization = 0;
  UserSet colluders = 0;
  std::vector<std::size_t> colluder_demands;  // indices into demand_alphabet, users of S in order
  std::vector<std::size_t> others_a;          // users outside S, in order
  std::vector<std::size_t> others_b;
  Rational total_variation;
};

struct SubsetAudit {
  UserSet colluders = 0;
  Rational tv_max;     // max over realizations
  double mi_bits = 0;  // max over realizations of I(d_rest; X, d_S, Z_S)
  bool independent = true;
};

struct AuditReport {
  std::string scheme;
  bool pass = true;
  std::vector<SubsetAudit> per_subset;
  std::optional<Witness> witness;  // largest TV gap found, first one on ties
  std::uint64_t executions = 0;
};

// Exact privacy check by enumeration. For every file realization and every
// colluding set S, the law of (X, Z_S) given d_S is compared across all
// assignments of the remaining demands. PASS iff they are all identical.
// Throws AuditTooLarge when an enumeration exceeds the budget.
AuditReport audit_privacy(const RunnerFactory& factory, const AuditConfig& config);

// Recomputes the total variation between the two conditional laws named by
// the witness.
Rational replay_witness(const SchemeRunner& runner, const Witness& witness);

// Joint law of two labelled variables, probabilities as exact rationals.
struct JointEntry {
  std::string a;
  std::string b;
  Rational probability;
};

// Exact test of P(a, b) = P(a) P(b) for all a, b. Throws InvalidArgument if
// the probabilities are negative or do not sum to 1.
bool is_product_law(std::span<const JointEntry> joint);

// I(A; B) in bits. Exactly 0.0 when is_product_law holds; logs are only
// evaluated otherwise.
double mutual_information(std::span<const JointEntry> joint);

// Runner for the privacy-key scheme with every key tuple enumerated.
SchemeRunner privacy_key_runner(const SystemParams& params, const FileSet& files);
RunnerFactory privacy_key_factory(const SystemParams& params);

// Runner for the slot-permutation baseline at memory M, over the given field.
SchemeRunner example1_runner(unsigned files, unsigned users, const Rational& memory,
                             const Field& field, const FileSet& library);
RunnerFactory example1_factory(unsigned files, unsigned users, const Rational& memory,
                               const Field& field);

// Fixed libraries used by default: all zeros, file n constant n mod q, and a
// seeded uniform draw.
std::vector<FileSet> default_file_realizations(unsigned files, std::size_t length,
                                               const Field& field, std::uint64_t seed);

}  // namespace pkcache
