#include "cli.hpp"

#include "pkcache/audit.hpp"
#include "pkcache/baselines.hpp"
#include "pkcache/bounds.hpp"
#include "pkcache/error.hpp"
#include "pkcache/report.hpp"
#include "pkcache/scheme.hpp"
#include "pkcache/sharing.hpp"

#include <CLI11.hpp>

#include <fstream>
#include <iomanip>
#include <ostream>
#include <random>
#include <sstream>

namespace pkcache::cli {

namespace {

struct Options {
  unsigned n = 3;
  unsigned k = 2;
  unsigned t = 1;
  std::uint32_t q = 2;
  std::size_t b = 0;  // 0: smallest valid length
  std::string variant = "sfr";
  std::uint64_t seed = 1;
  std::string demands;
  std::string colluders;
  std::string grid_step = "0.01";
  std::string scheme = "privkey-sfr";
  std::string memory;
  std::string out;
  std::string format;
  std::string n_range = "2-12";
  std::string k_range = "2-12";
  std::uint64_t budget = 10'000'000;
  bool exact = false;
};

std::vector<std::string> split(const std::string& text, char sep) {
  std::vector<std::string> parts;
  std::string item;
  std::istringstream in(text);
  while (std::getline(in, item, sep)) parts.push_back(item);
  if (!text.empty() && text.back() == sep) parts.emplace_back();
  return parts;
}

unsigned parse_unsigned(const std::string& text) {
  std::size_t used = 0;
  unsigned long value = 0;
  try {
    value = std::stoul(text, &used);
  } catch (const std::exception&) {
    throw InvalidArgument("not a number: '" + text + "'");
  }
  if (used != text.size() || text.empty() || text.front() == '-') throw InvalidArgument("not a number: '" + text + "'");
  return static_cast<unsigned>(value);
}

std::vector<FqVector> parse_demands(const std::string& text, const Field& field, unsigned files,
                                    unsigned users) {
  std::vector<FqVector> out;
  for (const auto& part : split(text, ';')) {
    std::vector<Symbol> entries;
    for (const auto& x : split(part, ',')) {
      const unsigned v = parse_unsigned(x);
      if (!field.contains(v)) throw InvalidArgument("demand entry " + x + " is not a residue modulo q");
      entries.push_back(v);
    }
    if (entries.size() != files) throw InvalidArgument("each demand needs N = " + std::to_string(files) + " entries");
    out.emplace_back(field, std::move(entries));
  }
  if (out.size() != users) throw InvalidArgument("need K = " + std::to_string(users) + " demands");
  return out;
}

UserSet parse_colluders(const std::string& text, unsigned users) {
  UserSet s = 0;
  if (text.empty()) return s;
  for (const auto& x : split(text, ',')) {
    const unsigned k = parse_unsigned(x);
    if (k < 1 || k > users) throw InvalidArgument("colluder " + x + " is not in 1..K");
    s = with(s, k - 1);
  }
  return s;
}

std::pair<unsigned, unsigned> parse_range(const std::string& text) {
  const auto dash = text.find('-');
  if (dash == std::string::npos) {
    const unsigned v = parse_unsigned(text);
    return {v, v};
  }
  const unsigned lo = parse_unsigned(text.substr(0, dash));
  const unsigned hi = parse_unsigned(text.substr(dash + 1));
  if (lo > hi) throw InvalidArgument("empty range '" + text + "'");
  return {lo, hi};
}

Rational parse_step(const std::string& text) {
  const Rational step = parse_rational(text);
  if (step <= 0) throw InvalidArgument("grid step must be positive");
  return step;
}

void require_format(const std::string& format, std::initializer_list<const char*> allowed) {
  for (const char* a : allowed) {
    if (format == a) return;
  }
  throw InvalidArgument("unsupported --format '" + format + "'");
}

void emit(const std::string& text, const Options& o, std::ostream& out) {
  if (o.out.empty()) {
    out << text;
    return;
  }
  std::ofstream file(o.out, std::ios::binary);
  if (!file) throw InvalidArgument("cannot open " + o.out + " for writing");
  file << text;
}

FileSet random_files(unsigned files, std::size_t length, const Field& field, std::mt19937_64& rng) {
  std::uniform_int_distribution<Symbol> symbol(0, field.order() - 1);
  FileSet out(files, std::vector<Symbol>(length));
  for (auto& f : out) {
    for (auto& s : f) s = symbol(rng);
  }
  return out;
}

std::vector<FqVector> random_demands(const SystemParams& params, std::mt19937_64& rng) {
  const auto space = demand_space(params);
  std::uniform_int_distribution<std::size_t> pick(0, space.size() - 1);
  std::vector<FqVector> out;
  for (unsigned k = 0; k < params.users; ++k) out.push_back(space[pick(rng)]);
  return out;
}

std::size_t to_size(const BigInt& v) {
  if (v > BigInt(std::numeric_limits<std::uint32_t>::max())) throw OutOfRange("length too large");
  return v.convert_to<std::size_t>();
}

Json corner_json(const SharedCorner& c) {
  Json j;
  switch (c.kind) {
    case SharedCorner::Kind::Broadcast: j["scheme"] = "broadcast"; break;
    case SharedCorner::Kind::PrivacyKey: j["scheme"] = "privacy-key"; j["t"] = c.t; break;
    case SharedCorner::Kind::FullCache: j["scheme"] = "full-cache"; break;
  }
  j["M"] = to_fraction_string(c.memory);
  j["R"] = to_fraction_string(c.load);
  j["F"] = c.subpacketization.str();
  return j;
}

int cmd_simulate(const Options& o, std::ostream& out) {
  require_format(o.format.empty() ? "json" : o.format, {"json"});
  const Variant variant = parse_variant(o.variant);
  std::mt19937_64 rng(o.seed);

  if (!o.memory.empty()) {
    const SharingPlan plan = share_memory(o.n, o.k, variant, parse_rational(o.memory));
    SystemParams base{o.n, o.k, 0, o.q, 0, variant};
    base.length = o.b ? o.b : to_size(plan.min_length);
    base.validate();
    const Field field = base.field();
    const FileSet files = random_files(o.n, base.length, field, rng);
    const auto demands = o.demands.empty() ? random_demands(base, rng) : parse_demands(o.demands, field, o.n, o.k);
    const SharedRun run = run_shared(plan, base, files, demands, rng);
    Json j;
    Json params = params_json(base);
    params.erase("t");
    j["params"] = params;
    j["seed"] = o.seed;
    Json d = Json::array();
    for (const auto& v : demands) d.push_back(format_vector(v));
    j["demands"] = d;
    Json p;
    p["M"] = to_fraction_string(plan.memory);
    p["R"] = to_fraction_string(plan.load);
    p["alpha"] = to_fraction_string(plan.alpha);
    p["a"] = corner_json(plan.a);
    p["b"] = corner_json(plan.b);
    p["subpacketization"] = plan.subpacketization.str();
    p["min_length"] = plan.min_length.str();
    j["plan"] = p;
    j["decoded_ok"] = run.decoded_ok;
    j["measured_load"] = to_fraction_string(run.measured_load);
    j["memory"] = to_fraction_string(run.measured_memory);
    emit(j.dump(2) + "\n", o, out);
    return run.decoded_ok ? kExitOk : kExitFailure;
  }

  SystemParams params{o.n, o.k, o.t, o.q, 0, variant};
  params.length = o.b ? o.b : binomial_size(o.k, o.t);
  params.validate();
  const Field field = params.field();
  const FileSet files = random_files(o.n, params.length, field, rng);
  const auto demands = o.demands.empty() ? random_demands(params, rng) : parse_demands(o.demands, field, o.n, o.k);
  validate_demands(demands, params);
  const Library library = split_library(files, params);
  const PlacementState placement = place(library, sample_keys(params, rng), params);
  const DeliverySignal signal = deliver(placement, demands, library, params);
  const Decoder decoder(signal, params);
  bool ok = true;
  for (unsigned k = 0; k < params.users; ++k) {
    ok = ok && decoder.decode(k, placement.caches[k], demands[k]) == library.combine_files(demands[k]);
  }
  emit(run_record(params, o.seed, demands, signal, ok).dump(2) + "\n", o, out);
  return ok ? kExitOk : kExitFailure;
}

int cmd_tradeoff(const Options& o, std::ostream& out) {
  const std::string format = o.format.empty() ? "csv" : o.format;
  require_format(format, {"csv", "json"});
  const auto rows = tradeoff_table(o.n, o.k, parse_step(o.grid_step));
  emit(format == "csv" ? tradeoff_csv(rows, o.exact) : tradeoff_json(rows).dump(2) + "\n", o, out);
  return kExitOk;
}

int cmd_audit(const Options& o, bool colluders_given, std::ostream& out, std::ostream& err) {
  require_format(o.format.empty() ? "json" : o.format, {"json"});
  AuditConfig config;
  config.budget = o.budget;
  if (colluders_given) config.colluder_sets.push_back(parse_colluders(o.colluders, o.k));
  const Field field(o.q);

  Json cj;
  cj["scheme"] = o.scheme;
  cj["N"] = o.n;
  cj["K"] = o.k;
  cj["q"] = o.q;
  RunnerFactory factory;
  std::size_t length = 0;
  if (o.scheme == "privkey-sfr" || o.scheme == "privkey-lfr") {
    SystemParams params{o.n, o.k, o.t, o.q, 0, o.scheme == "privkey-sfr" ? Variant::SFR : Variant::LFR};
    params.length = o.b ? o.b : binomial_size(o.k, o.t);
    params.validate();
    length = params.length;
    cj["t"] = o.t;
    factory = privacy_key_factory(params);
  } else if (o.scheme == "example1") {
    const Rational memory = o.memory.empty() ? Rational(0) : parse_rational(o.memory);
    const Rational share = memory / o.n;
    length = o.b ? o.b : boost::multiprecision::denominator(share).convert_to<std::size_t>();
    cj["M"] = to_fraction_string(memory);
    factory = example1_factory(o.n, o.k, memory, field);
  } else {
    throw InvalidArgument("unknown scheme '" + o.scheme + "' (privkey-sfr, privkey-lfr, example1)");
  }
  cj["B"] = length;
  cj["seed"] = o.seed;
  config.file_realizations = default_file_realizations(o.n, length, field, o.seed);
  cj["file_realizations"] = config.file_realizations.size();
  if (colluders_given) cj["colluders"] = format_user_set(config.colluder_sets.front());

  AuditReport report;
  try {
    report = audit_privacy(factory, config);
  } catch (const AuditTooLarge& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  }
  const SchemeRunner probe = factory(config.file_realizations.front());
  Json j = audit_json(report, cj, probe.demand_alphabet);
  if (report.witness) {
    const SchemeRunner runner = factory(config.file_realizations[report.witness->realization]);
    j["witness"]["replayed_total_variation"] = to_fraction_string(replay_witness(runner, *report.witness));
  }
  emit(j.dump(2) + "\n", o, out);
  return report.pass ? kExitOk : kExitFailure;
}

int cmd_gap(const Options& o, std::ostream& out) {
  const std::string format = o.format.empty() ? "text" : o.format;
  require_format(format, {"text", "json"});
  const auto [n_lo, n_hi] = parse_range(o.n_range);
  const auto [k_lo, k_hi] = parse_range(o.k_range);
  if (n_lo < 2 || k_lo < 2) throw InvalidArgument("N and K must be at least 2");
  std::vector<Variant> variants;
  if (o.variant == "both") {
    variants = {Variant::SFR, Variant::LFR};
  } else {
    variants = {parse_variant(o.variant)};
  }
  const Rational step = parse_step(o.grid_step);

  std::vector<GapReport> reports;
  bool pass = true;
  for (unsigned n = n_lo; n <= n_hi; ++n) {
    for (unsigned k = k_lo; k <= k_hi; ++k) {
      for (Variant v : variants) {
        reports.push_back(gap_report(n, k, v, step));
        pass = pass && reports.back().pass;
      }
    }
  }
  if (format == "json") {
    Json j;
    j["pass"] = pass;
    j["reports"] = gap_json(reports);
    emit(j.dump(2) + "\n", o, out);
  } else {
    std::ostringstream text;
    for (const auto& r : reports) {
      for (const auto& g : r.regimes) {
        text << "N=" << r.files << " K=" << r.users << ' ' << to_string(r.variant) << "  [" << g.label
             << "]  max=" << std::fixed << std::setprecision(6) << g.max_ratio << " at M="
             << (g.argmax ? to_fraction_string(*g.argmax) : std::string("-")) << "  bound=" << g.constant
             << "  " << (g.pass ? "PASS" : "FAIL") << '\n';
      }
    }
    text << (pass ? "PASS" : "FAIL") << ": " << reports.size() << " configurations\n";
    emit(text.str(), o, out);
  }
  return pass ? kExitOk : kExitFailure;
}

int cmd_subpacketization(const Options& o, std::ostream& out) {
  const std::string format = o.format.empty() ? "csv" : o.format;
  require_format(format, {"csv", "json"});
  const auto pk = privacy_key_points(o.n, o.k, Variant::SFR);
  const long long total = static_cast<long long>(o.n) * o.k;
  if (format == "csv") {
    std::ostringstream text;
    text << "t,M,F_privacy_key,F_virtual_user\n";
    for (unsigned t = 0; t <= o.k; ++t) {
      text << t << ',' << to_fraction_string(pk[t + 1].memory) << ',' << pk[t + 1].subpacketization << ','
           << binomial(total, t) << '\n';
    }
    emit(text.str(), o, out);
  } else {
    Json rows = Json::array();
    for (unsigned t = 0; t <= o.k; ++t) {
      Json r;
      r["t"] = t;
      r["M"] = to_fraction_string(pk[t + 1].memory);
      r["F_privacy_key"] = pk[t + 1].subpacketization.str();
      r["F_virtual_user"] = binomial(total, t).str();
      rows.push_back(r);
    }
    emit(rows.dump(2) + "\n", o, out);
  }
  return kExitOk;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  Options o;
  CLI::App app{"Privacy-key coded caching: simulation, audits, bounds"};
  app.require_subcommand(1);

  auto* simulate = app.add_subcommand("simulate", "Run placement, delivery and decoding once");
  auto* tradeoff = app.add_subcommand("tradeoff", "Tabulate loads and bounds over a memory grid");
  auto* audit = app.add_subcommand("audit", "Exact demand-privacy audit by enumeration");
  auto* gap = app.add_subcommand("gap", "Check the gap constants over (N, K) ranges");
  auto* subpack = app.add_subcommand("subpacketization", "Packets per file, privacy-key vs virtual users");

  for (auto* sub : {simulate, tradeoff, audit, subpack}) {
    sub->add_option("--n", o.n, "Number of files N")->capture_default_str();
    sub->add_option("--k", o.k, "Number of users K")->capture_default_str();
  }
  for (auto* sub : {simulate, audit}) {
    sub->add_option("--t", o.t, "Placement parameter t")->capture_default_str();
    sub->add_option("--q", o.q, "Field modulus (prime)")->capture_default_str();
    sub->add_option("--b", o.b, "File length B in symbols (default: smallest valid)");
    sub->add_option("--seed", o.seed, "RNG seed")->capture_default_str();
    sub->add_option("--m", o.memory, "Memory M (simulate: memory sharing; audit: example1)");
  }
  for (auto* sub : {simulate, tradeoff, audit, gap, subpack}) {
    sub->add_option("--out", o.out, "Write output to a file instead of stdout");
    sub->add_option("--format", o.format, "Output format");
  }
  simulate->add_option("--variant", o.variant, "sfr or lfr")->capture_default_str();
  simulate->add_option("--demands", o.demands, "Demand vectors, e.g. \"1,0,0;0,1,0\"");
  tradeoff->add_option("--grid-step", o.grid_step, "Memory grid step")->capture_default_str();
  tradeoff->add_flag("--exact", o.exact, "Append exact num/den columns");
  auto* colluders = audit->add_option("--colluders", o.colluders, "Colluding users, e.g. \"1,3\" (default: all sets)");
  audit->add_option("--scheme", o.scheme, "privkey-sfr, privkey-lfr or example1")->capture_default_str();
  audit->add_option("--budget", o.budget, "Max enumerated executions per realization")->capture_default_str();
  gap->add_option("--n", o.n_range, "N or range lo-hi")->capture_default_str();
  gap->add_option("--k", o.k_range, "K or range lo-hi")->capture_default_str();
  gap->add_option("--variant", o.variant, "sfr, lfr or both")->default_str("both");
  gap->add_option("--grid-step", o.grid_step, "Memory grid step")->capture_default_str();
  gap->preparse_callback([&](std::size_t) { o.variant = "both"; });

  std::vector<std::string> storage{"pkcache"};
  storage.insert(storage.end(), args.begin(), args.end());
  std::vector<char*> argv;
  for (auto& s : storage) argv.push_back(s.data());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitUsage;
  }

  try {
    if (*simulate) return cmd_simulate(o, out);
    if (*tradeoff) return cmd_tradeoff(o, out);
    if (*audit) return cmd_audit(o, colluders->count() > 0, out, err);
    if (*gap) return cmd_gap(o, out);
    return cmd_subpacketization(o, out);
  } catch (const InvalidArgument& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const InvalidLength& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const InvalidDemand& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const Unsupported& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const OutOfRange& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const Error& e) {
    err << "failure: " << e.what() << '\n';
    return kExitFailure;
  }
}

}  // namespace pkcache::cli
