#include "pkcache/report.hpp"

#include "pkcache/baselines.hpp"

#include <sstream>

namespace pkcache {

std::size_t hex_width(std::uint32_t q) {
  std::size_t width = 1;
  for (std::uint32_t top = q - 1; top >= 16; top >>= 4) ++width;
  return width;
}

std::string hex_symbols(std::span<const Symbol> symbols, std::uint32_t q) {
  static constexpr char kDigits[] = "0123456789abcdef";
  const std::size_t width = hex_width(q);
  std::string out;
  out.reserve(symbols.size() * width);
  for (Symbol s : symbols) {
    for (std::size_t i = width; i-- > 0;) out.push_back(kDigits[(s >> (4 * i)) & 0xf]);
  }
  return out;
}

std::string format_vector(const FqVector& v) {
  std::string out;
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (i) out.push_back(',');
    out += std::to_string(v[i]);
  }
  return out;
}

Json params_json(const SystemParams& params) {
  Json j;
  j["N"] = params.files;
  j["K"] = params.users;
  j["t"] = params.t;
  j["q"] = params.q;
  j["B"] = params.length;
  j["variant"] = std::string(to_string(params.variant));
  return j;
}

Json run_record(const SystemParams& params, std::uint64_t seed, std::span<const FqVector> demands,
                const DeliverySignal& signal, bool decoded_ok) {
  Json j;
  j["params"] = params_json(params);
  j["seed"] = seed;
  Json d = Json::array();
  for (const auto& v : demands) d.push_back(format_vector(v));
  j["demands"] = d;
  Json leaders = Json::array();
  for (std::size_t k : signal.leaders) leaders.push_back(k + 1);
  j["leaders"] = leaders;
  Json queries = Json::array();
  for (const auto& v : signal.queries) queries.push_back(format_vector(v));
  j["queries"] = queries;
  Json payload = Json::array();
  for (const auto& [s, y] : signal.payload) {
    Json entry;
    entry["S"] = format_user_set(s);
    entry["data"] = hex_symbols(y, params.q);
    payload.push_back(entry);
  }
  j["payload"] = payload;
  j["decoded_ok"] = decoded_ok;
  j["measured_load"] = to_fraction_string(measured_load(signal, params));
  j["memory"] = to_fraction_string(params.memory());
  return j;
}

std::vector<TradeoffRow> tradeoff_table(unsigned files, unsigned users, const Rational& step) {
  const TradeoffCurve sfr = privacy_key_curve(files, users, Variant::SFR);
  const TradeoffCurve lfr = privacy_key_curve(files, users, Variant::LFR);
  std::vector<TradeoffPoint> vu_points;
  for (const auto& c : virtual_user_points(files, users)) vu_points.push_back({c.memory, c.load});
  const TradeoffCurve vu(std::move(vu_points));
  const TradeoffCurve nonprivate = nonprivate_curve(files, users);

  std::vector<TradeoffRow> rows;
  for (const Rational& m : memory_grid(Rational(files), step)) {
    const double md = to_double(m);
    TradeoffRow row;
    row.memory = m;
    row.rf = sfr.eval(m);
    row.rl = lfr.eval(m);
    row.converse = converse_sfr(md, files, users);
    row.cutset = cutset_bound(md, files, users);
    row.rc = to_double(nonprivate.eval(m));
    row.rd = r_decentralized(md, files, users);
    row.virtual_user = vu.eval(m);
    rows.push_back(std::move(row));
  }
  return rows;
}

std::string tradeoff_csv(std::span<const TradeoffRow> rows, bool exact) {
  std::ostringstream out;
  out << "M,R_F,R_L,converse,cutset,r_C,r_D,virtual_user_envelope";
  if (exact) out << ",M_exact,R_F_exact,R_L_exact,virtual_user_exact";
  out << '\n';
  for (const auto& r : rows) {
    out << to_decimal_string(to_double(r.memory)) << ',' << to_decimal_string(to_double(r.rf)) << ','
        << to_decimal_string(to_double(r.rl)) << ',' << to_decimal_string(r.converse) << ','
        << to_decimal_string(r.cutset) << ',' << to_decimal_string(r.rc) << ','
        << to_decimal_string(r.rd) << ',' << to_decimal_string(to_double(r.virtual_user));
    if (exact) {
      out << ',' << to_fraction_string(r.memory) << ',' << to_fraction_string(r.rf) << ','
          << to_fraction_string(r.rl) << ',' << to_fraction_string(r.virtual_user);
    }
    out << '\n';
  }
  return out.str();
}

Json tradeoff_json(std::span<const TradeoffRow> rows) {
  Json out = Json::array();
  for (const auto& r : rows) {
    Json j;
    j["M"] = to_fraction_string(r.memory);
    j["R_F"] = to_fraction_string(r.rf);
    j["R_L"] = to_fraction_string(r.rl);
    j["converse"] = r.converse;
    j["cutset"] = r.cutset;
    j["r_C"] = r.rc;
    j["r_D"] = r.rd;
    j["virtual_user_envelope"] = to_fraction_string(r.virtual_user);
    out.push_back(j);
  }
  return out;
}

namespace {

Json demand_list(std::span<const std::size_t> indices, std::span<const FqVector> alphabet) {
  Json out = Json::array();
  for (std::size_t i : indices) out.push_back(format_vector(alphabet[i]));
  return out;
}

}  // namespace

Json audit_json(const AuditReport& report, const Json& config, std::span<const FqVector> demand_alphabet) {
  Json j;
  j["config"] = config;
  j["scheme"] = report.scheme;
  j["verdict"] = report.pass ? "PASS" : "FAIL";
  j["executions"] = report.executions;
  Json per = Json::array();
  for (const auto& s : report.per_subset) {
    Json e;
    e["S"] = format_user_set(s.colluders);
    e["tv_max"] = to_fraction_string(s.tv_max);
    e["mi"] = s.mi_bits;
    e["independent"] = s.independent;
    per.push_back(e);
  }
  j["per_S"] = per;
  if (report.witness) {
    const Witness& w = *report.witness;
    Json wj;
    wj["realization"] = w.realization;
    wj["S"] = format_user_set(w.colluders);
    wj["colluder_demands"] = demand_list(w.colluder_demands, demand_alphabet);
    wj["others_a"] = demand_list(w.others_a, demand_alphabet);
    wj["others_b"] = demand_list(w.others_b, demand_alphabet);
    wj["total_variation"] = to_fraction_string(w.total_variation);
    j["witness"] = wj;
  }
  return j;
}

Json gap_json(std::span<const GapReport> reports) {
  Json out = Json::array();
  for (const auto& r : reports) {
    Json j;
    j["N"] = r.files;
    j["K"] = r.users;
    j["variant"] = std::string(to_string(r.variant));
    j["grid_step"] = to_fraction_string(r.grid_step);
    j["overall_max"] = r.overall_max;
    j["pass"] = r.pass;
    Json regimes = Json::array();
    for (const auto& g : r.regimes) {
      Json e;
      e["regime"] = g.label;
      e["constant"] = g.constant;
      e["points"] = g.points;
      e["skipped"] = g.skipped;
      e["max_ratio"] = g.max_ratio;
      e["argmax"] = g.argmax ? to_fraction_string(*g.argmax) : std::string();
      e["pass"] = g.pass;
      regimes.push_back(e);
    }
    j["regimes"] = regimes;
    out.push_back(j);
  }
  return out;
}

}  // namespace pkcache
