#pragma once

#include "pkcache/audit.hpp"
#include "pkcache/bounds.hpp"
#include "pkcache/scheme.hpp"

#include <json.hpp>

#include <cstdint>
#include <span>
#include <string>
#include <vector>

namespace pkcache {

using Json = nlohmann::ordered_json;

// Fixed-width lowercase hex, as many digits per symbol as q-1 needs.
std::string hex_symbols(std::span<const Symbol> symbols, std::uint32_t q);
std::size_t hex_width(std::uint32_t q);

// "1,0,0" with no spaces.
std::string format_vector(const FqVector& v);

Json params_json(const SystemParams& params);

// Record of one placement/delivery/decoding run. Leaders and payload sets are
// reported with 1-based user labels.
Json run_record(const SystemParams& params, std::uint64_t seed, std::span<const FqVector> demands,
                const DeliverySignal& signal, bool decoded_ok);

struct TradeoffRow {
  Rational memory;
  Rational rf;
  Rational rl;
  double converse = 0;
  double cutset = 0;
  double rc = 0;
  double rd = 0;
  Rational virtual_user;
};

// One row per point of memory_grid(N, step).
std::vector<TradeoffRow> tradeoff_table(unsigned files, unsigned users, const Rational& step);

// Header: M,R_F,R_L,converse,cutset,r_C,r_D,virtual_user_envelope. Values use
// 12 decimals; with `exact`, M_exact,R_F_exact,R_L_exact,virtual_user_exact
// follow as num/den.
std::string tradeoff_csv(std::span<const TradeoffRow> rows, bool exact);
Json tradeoff_json(std::span<const TradeoffRow> rows);

Json audit_json(const AuditReport& report, const Json& config,
                std::span<const FqVector> demand_alphabet);
Json gap_json(std::span<const GapReport> reports);

}  // namespace pkcache
