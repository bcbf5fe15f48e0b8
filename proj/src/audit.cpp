#include "pkcache/audit.hpp"

#include "pkcache/error.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <numeric>

namespace pkcache {

namespace {

void append_u32(std::string& out, std::uint32_t v) {
  for (int i = 0; i < 4; ++i) out.push_back(static_cast<char>((v >> (8 * i)) & 0xff));
}

void append_symbols(std::string& out, std::span<const Symbol> symbols) {
  append_u32(out, static_cast<std::uint32_t>(symbols.size()));
  for (Symbol s : symbols) append_u32(out, s);
}

std::string encode_signal(const DeliverySignal& signal) {
  std::string out;
  append_u32(out, static_cast<std::uint32_t>(signal.leaders.size()));
  for (std::size_t k : signal.leaders) append_u32(out, static_cast<std::uint32_t>(k));
  for (const auto& q : signal.queries) append_symbols(out, q.entries());
  for (const auto& [s, y] : signal.payload) {
    append_u32(out, s);
    append_symbols(out, y);
  }
  return out;
}

std::string encode_cache(const UserCache& cache) {
  std::string out;
  for (const auto& [index, packet] : cache.uncoded_packets()) {
    append_u32(out, static_cast<std::uint32_t>(index.first));
    append_u32(out, index.second);
    append_symbols(out, packet);
  }
  out.push_back('|');
  for (const auto& [index, packet] : cache.key_packets()) {
    append_u32(out, static_cast<std::uint32_t>(index));
    append_symbols(out, packet);
  }
  return out;
}

std::uint64_t checked_power(std::uint64_t base, unsigned exponent, std::uint64_t limit) {
  std::uint64_t result = 1;
  for (unsigned i = 0; i < exponent; ++i) {
    if (base != 0 && result > limit / base) return limit + 1;
    result *= base;
  }
  return result;
}

// Mixed-radix digits of `index` with the same radix for every position;
// position 0 is most significant.
std::vector<std::size_t> digits(std::uint64_t index, std::uint64_t radix, unsigned count) {
  std::vector<std::size_t> out(count);
  for (unsigned i = count; i-- > 0;) {
    out[i] = static_cast<std::size_t>(index % radix);
    index /= radix;
  }
  return out;
}

std::uint64_t compose(std::span<const std::size_t> values, std::uint64_t radix) {
  std::uint64_t index = 0;
  for (std::size_t v : values) index = index * radix + v;
  return index;
}

std::string observed_by(const Observation& obs, std::span<const unsigned> colluders) {
  std::string key = obs.signal;
  for (unsigned k : colluders) {
    key.push_back('#');
    append_u32(key, static_cast<std::uint32_t>(obs.caches[k].size()));
    key += obs.caches[k];
  }
  return key;
}

using Histogram = std::map<std::string, std::uint64_t>;

Rational total_variation(const Histogram& a, const Histogram& b, std::uint64_t total) {
  std::uint64_t diff = 0;
  auto ia = a.begin();
  auto ib = b.begin();
  while (ia != a.end() || ib != b.end()) {
    if (ib == b.end() || (ia != a.end() && ia->first < ib->first)) {
      diff += ia->second;
      ++ia;
    } else if (ia == a.end() || ib->first < ia->first) {
      diff += ib->second;
      ++ib;
    } else {
      diff += ia->second > ib->second ? ia->second - ib->second : ib->second - ia->second;
      ++ia;
      ++ib;
    }
  }
  return Rational(static_cast<long long>(diff), 2 * static_cast<long long>(total));
}

struct SubsetOutcome {
  Rational tv_max;
  double mi_bits = 0;
  std::optional<Witness> witness;
};

SubsetOutcome audit_subset(const SchemeRunner& runner, const std::vector<std::vector<Observation>>& obs,
                           UserSet colluders) {
  const unsigned users = runner.users;
  const std::uint64_t alphabet = runner.demand_alphabet.size();
  const std::vector<unsigned> in_s = members(colluders);
  std::vector<unsigned> rest;
  for (unsigned k = 0; k < users; ++k) {
    if (!contains(colluders, k)) rest.push_back(k);
  }

  // histograms[d_S][d_rest] = law of (X, Z_S), as counts over the key space.
  std::map<std::uint64_t, std::map<std::uint64_t, Histogram>> histograms;
  for (std::uint64_t tuple = 0; tuple < obs.size(); ++tuple) {
    const auto d = digits(tuple, alphabet, users);
    std::vector<std::size_t> ds, dr;
    for (unsigned k : in_s) ds.push_back(d[k]);
    for (unsigned k : rest) dr.push_back(d[k]);
    Histogram& h = histograms[compose(ds, alphabet)][compose(dr, alphabet)];
    for (const auto& o : obs[tuple]) ++h[observed_by(o, in_s)];
  }

  SubsetOutcome outcome;
  std::vector<JointEntry> joint;
  const Rational tuple_weight(1, static_cast<long long>(obs.size() * runner.key_space));
  for (const auto& [ds_code, by_rest] : histograms) {
    for (auto a = by_rest.begin(); a != by_rest.end(); ++a) {
      for (auto b = std::next(a); b != by_rest.end(); ++b) {
        const Rational tv = total_variation(a->second, b->second, runner.key_space);
        if (tv > outcome.tv_max) {
          outcome.tv_max = tv;
          Witness w;
          w.colluders = colluders;
          w.colluder_demands = digits(ds_code, alphabet, static_cast<unsigned>(in_s.size()));
          w.others_a = digits(a->first, alphabet, static_cast<unsigned>(rest.size()));
          w.others_b = digits(b->first, alphabet, static_cast<unsigned>(rest.size()));
          w.total_variation = tv;
          outcome.witness = std::move(w);
        }
      }
      const std::string ds_label = std::to_string(ds_code) + "|";
      for (const auto& [key, count] : a->second) {
        joint.push_back({std::to_string(a->first), ds_label + key,
                         tuple_weight * static_cast<long long>(count)});
      }
    }
  }
  outcome.mi_bits = mutual_information(joint);
  return outcome;
}

std::vector<std::size_t> assemble_demands(const Witness& w, const std::vector<std::size_t>& others,
                                          unsigned users) {
  std::vector<std::size_t> d(users);
  std::size_t i = 0, j = 0;
  for (unsigned k = 0; k < users; ++k) {
    if (contains(w.colluders, k)) {
      d[k] = w.colluder_demands.at(i++);
    } else {
      d[k] = others.at(j++);
    }
  }
  return d;
}

}  // namespace

AuditReport audit_privacy(const RunnerFactory& factory, const AuditConfig& config) {
  if (config.file_realizations.empty()) throw InvalidArgument("audit needs at least one file realization");
  AuditReport report;
  std::vector<UserSet> sets;
  for (std::size_t r = 0; r < config.file_realizations.size(); ++r) {
    const SchemeRunner runner = factory(config.file_realizations[r]);
    report.scheme = runner.name;
    if (sets.empty()) {
      sets = config.colluder_sets.empty() ? all_subsets(runner.users) : config.colluder_sets;
      for (UserSet s : sets) {
        if (s >> runner.users) throw InvalidArgument("colluder set names a user beyond K");
        report.per_subset.push_back({s, Rational(0), 0.0, true});
      }
    }
    const std::uint64_t alphabet = runner.demand_alphabet.size();
    const std::uint64_t tuples = checked_power(alphabet, runner.users, config.budget);
    if (tuples > config.budget || runner.key_space > config.budget / std::max<std::uint64_t>(tuples, 1)) {
      throw AuditTooLarge("enumeration of " + std::to_string(runner.key_space) + " keys x " +
                          std::to_string(alphabet) + "^" + std::to_string(runner.users) +
                          " demand tuples exceeds the budget");
    }

    std::vector<std::vector<Observation>> obs(tuples);
    for (std::uint64_t tuple = 0; tuple < tuples; ++tuple) {
      const auto d = digits(tuple, alphabet, runner.users);
      obs[tuple].reserve(runner.key_space);
      for (std::uint64_t key = 0; key < runner.key_space; ++key) obs[tuple].push_back(runner.run(key, d));
    }
    report.executions += tuples * runner.key_space;

    for (std::size_t i = 0; i < sets.size(); ++i) {
      SubsetOutcome outcome = audit_subset(runner, obs, sets[i]);
      SubsetAudit& agg = report.per_subset[i];
      agg.tv_max = std::max(agg.tv_max, outcome.tv_max);
      agg.mi_bits = std::max(agg.mi_bits, outcome.mi_bits);
      agg.independent = agg.independent && outcome.tv_max == 0;
      if (outcome.witness && (!report.witness || outcome.witness->total_variation > report.witness->total_variation)) {
        outcome.witness->realization = r;
        report.witness = std::move(outcome.witness);
      }
    }
  }
  report.pass = std::all_of(report.per_subset.begin(), report.per_subset.end(),
                            [](const SubsetAudit& s) { return s.independent; });
  return report;
}

Rational replay_witness(const SchemeRunner& runner, const Witness& witness) {
  const auto da = assemble_demands(witness, witness.others_a, runner.users);
  const auto db = assemble_demands(witness, witness.others_b, runner.users);
  const std::vector<unsigned> in_s = members(witness.colluders);
  Histogram ha, hb;
  for (std::uint64_t key = 0; key < runner.key_space; ++key) {
    ++ha[observed_by(runner.run(key, da), in_s)];
    ++hb[observed_by(runner.run(key, db), in_s)];
  }
  return total_variation(ha, hb, runner.key_space);
}

namespace {

struct Marginals {
  std::map<std::pair<std::string, std::string>, Rational> joint;
  std::map<std::string, Rational> a;
  std::map<std::string, Rational> b;
};

Marginals marginals(std::span<const JointEntry> entries) {
  Marginals m;
  Rational total = 0;
  for (const auto& e : entries) {
    if (e.probability < 0) throw InvalidArgument("negative probability in joint law");
    m.joint[{e.a, e.b}] += e.probability;
    m.a[e.a] += e.probability;
    m.b[e.b] += e.probability;
    total += e.probability;
  }
  if (total != 1) throw InvalidArgument("joint law sums to " + to_fraction_string(total) + ", not 1");
  return m;
}

bool product_holds(const Marginals& m) {
  std::size_t support_a = 0, support_b = 0, support = 0;
  for (const auto& [_, p] : m.a) support_a += p != 0;
  for (const auto& [_, p] : m.b) support_b += p != 0;
  for (const auto& [key, p] : m.joint) {
    if (p == 0) continue;
    ++support;
    if (p != m.a.at(key.first) * m.b.at(key.second)) return false;
  }
  return support == support_a * support_b;
}

}  // namespace

bool is_product_law(std::span<const JointEntry> joint) { return product_holds(marginals(joint)); }

double mutual_information(std::span<const JointEntry> joint) {
  const Marginals m = marginals(joint);
  if (product_holds(m)) return 0.0;
  double bits = 0.0;
  for (const auto& [key, p] : m.joint) {
    if (p == 0) continue;
    const double ratio = to_double(p / (m.a.at(key.first) * m.b.at(key.second)));
    bits += to_double(p) * std::log2(ratio);
  }
  return std::max(bits, 0.0);
}

SchemeRunner privacy_key_runner(const SystemParams& params, const FileSet& files) {
  params.validate();
  auto library = std::make_shared<const Library>(split_library(files, params));
  auto keys = std::make_shared<const std::vector<FqVector>>(key_space(params));
  SchemeRunner runner;
  runner.name = std::string("privacy-key-") + std::string(to_string(params.variant));
  runner.users = params.users;
  runner.demand_alphabet = demand_space(params);
  runner.key_space = checked_power(keys->size(), params.users, std::numeric_limits<std::uint64_t>::max() / 2);
  const auto alphabet = runner.demand_alphabet;
  runner.run = [params, library, keys, alphabet](std::uint64_t key_index, std::span<const std::size_t> demands) {
    const auto key_digits = digits(key_index, keys->size(), params.users);
    std::vector<FqVector> p;
    std::vector<FqVector> d;
    for (unsigned k = 0; k < params.users; ++k) {
      p.push_back((*keys)[key_digits[k]]);
      d.push_back(alphabet.at(demands[k]));
    }
    const PlacementState placement = place(*library, std::move(p), params);
    const DeliverySignal signal = deliver(placement, d, *library, params);
    Observation obs;
    obs.signal = encode_signal(signal);
    for (const auto& cache : placement.caches) obs.caches.push_back(encode_cache(cache));
    return obs;
  };
  return runner;
}

RunnerFactory privacy_key_factory(const SystemParams& params) {
  return [params](const FileSet& files) { return privacy_key_runner(params, files); };
}

SchemeRunner example1_runner(unsigned files, unsigned users, const Rational& memory,
                             const Field& field, const FileSet& library) {
  if (files <= users) throw Unsupported("the slot scheme needs more files than users");
  if (library.empty()) throw InvalidLength("empty library");
  const std::size_t length = library.front().size();
  const Rational cached_exact = memory * static_cast<long long>(length) / files;
  if (boost::multiprecision::denominator(cached_exact) != 1) throw InvalidLength("(M/N) B is not an integer");
  const std::size_t filler_length =
      length - boost::multiprecision::numerator(cached_exact).convert_to<std::size_t>();

  std::vector<unsigned> base(users);
  std::iota(base.begin(), base.end(), 1u);
  auto perms = std::make_shared<std::vector<std::vector<unsigned>>>();
  do {
    perms->push_back(base);
  } while (std::next_permutation(base.begin(), base.end()));

  const std::uint64_t limit = std::numeric_limits<std::uint64_t>::max() / 4;
  const std::uint64_t filler_values = checked_power(field.order(), static_cast<unsigned>(filler_length), limit);
  const std::uint64_t key_values = users;

  SchemeRunner runner;
  runner.name = "example1";
  runner.users = users;
  for (unsigned n = 0; n < files; ++n) runner.demand_alphabet.push_back(FqVector::unit(field, files, n));
  runner.key_space = perms->size();
  runner.key_space = checked_power(key_values, users, limit) * runner.key_space;
  runner.key_space *= checked_power(filler_values, users, limit);

  const auto alphabet = runner.demand_alphabet;
  auto lib = std::make_shared<const FileSet>(library);
  runner.run = [=](std::uint64_t index, std::span<const std::size_t> demands) {
    Example1Randomness r;
    std::uint64_t rest = index;
    for (unsigned k = 0; k < users; ++k) {
      std::vector<Symbol> v(filler_length);
      std::uint64_t value = rest % filler_values;
      rest /= filler_values;
      for (auto& s : v) {
        s = static_cast<Symbol>(value % field.order());
        value /= field.order();
      }
      r.fillers.push_back(std::move(v));
    }
    for (unsigned k = 0; k < users; ++k) {
      r.keys.push_back(static_cast<unsigned>(rest % key_values) + 1);
      rest /= key_values;
    }
    r.permutation = (*perms)[rest];
    std::vector<FqVector> d;
    for (unsigned k = 0; k < users; ++k) d.push_back(alphabet.at(demands[k]));
    const Example1Run run = example1_run(files, users, memory, field, *lib, d, r);
    Observation obs;
    for (unsigned q : run.signal.queries) append_u32(obs.signal, q);
    for (const auto& slot : run.signal.slots) append_symbols(obs.signal, slot);
    for (const auto& cache : run.caches) {
      std::string c;
      append_u32(c, cache.key);
      for (const auto& part : cache.cached_parts) append_symbols(c, part);
      obs.caches.push_back(std::move(c));
    }
    return obs;
  };
  return runner;
}

RunnerFactory example1_factory(unsigned files, unsigned users, const Rational& memory, const Field& field) {
  return [=](const FileSet& library) { return example1_runner(files, users, memory, field, library); };
}

std::vector<FileSet> default_file_realizations(unsigned files, std::size_t length, const Field& field,
                                               std::uint64_t seed) {
  std::vector<FileSet> out;
  out.emplace_back(files, std::vector<Symbol>(length, 0));
  FileSet constants;
  for (unsigned n = 0; n < files; ++n) constants.emplace_back(length, static_cast<Symbol>((n + 1) % field.order()));
  out.push_back(std::move(constants));
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<Symbol> symbol(0, field.order() - 1);
  FileSet random(files, std::vector<Symbol>(length));
  for (auto& f : random) {
    for (auto& s : f) s = symbol(rng);
  }
  out.push_back(std::move(random));
  return out;
}

}  // namespace pkcache
