#include "pkcache/scheme.hpp"

#include "pkcache/error.hpp"

#include <algorithm>
#include <cctype>
#include <string>

namespace pkcache {

std::string_view to_string(Variant v) { return v == Variant::SFR ? "sfr" : "lfr"; }

Variant parse_variant(std::string_view text) {
  std::string lower(text);
  std::transform(lower.begin(), lower.end(), lower.begin(),
                 [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
  if (lower == "sfr") return Variant::SFR;
  if (lower == "lfr") return Variant::LFR;
  throw InvalidArgument("unknown variant '" + std::string(text) + "' (expected sfr or lfr)");
}

void SystemParams::validate() const {
  if (files < 2) throw InvalidArgument("need at least 2 files");
  if (users < 2) throw InvalidArgument("need at least 2 users");
  if (users > kMaxUsers) {
    throw InvalidArgument("at most " + std::to_string(kMaxUsers) + " users are supported");
  }
  if (t >= users) throw InvalidArgument("t must lie in [0, K-1]");
  (void)field();
  const std::size_t f = subpacketization();
  if (length == 0 || length % f != 0) {
    throw InvalidLength("file length " + std::to_string(length) +
                        " is not a positive multiple of C(K,t) = " + std::to_string(f));
  }
}

std::size_t SystemParams::subpacketization() const { return binomial_size(users, t); }

std::size_t SystemParams::packet_length() const { return length / subpacketization(); }

Rational SystemParams::memory() const {
  return Rational(1) + Rational(static_cast<long long>(t) * (files - 1), users);
}

Library::Library(const Field& field, unsigned users, unsigned t, FileSet files)
    : field_(field), subsets_(users, t), files_(std::move(files)) {
  if (files_.empty()) throw InvalidLength("library has no files");
  if (subsets_.size() == 0) throw InvalidArgument("t exceeds the number of users");
  length_ = files_.front().size();
  for (const auto& file : files_) {
    if (file.size() != length_) throw InvalidLength("files have different lengths");
    for (Symbol s : file) {
      if (!field_.contains(s)) throw InvalidArgument("file symbol is not a residue modulo q");
    }
  }
  if (length_ == 0 || length_ % subsets_.size() != 0) {
    throw InvalidLength("file length " + std::to_string(length_) +
                        " is not a positive multiple of " + std::to_string(subsets_.size()));
  }
  packet_length_ = length_ / subsets_.size();
}

std::span<const Symbol> Library::packet(unsigned n, std::size_t subset_index) const {
  if (subset_index >= subsets_.size()) throw InvalidArgument("packet index out of range");
  return std::span<const Symbol>(files_.at(n)).subspan(subset_index * packet_length_,
                                                        packet_length_);
}

Packet Library::combine(const FqVector& coefficients, std::size_t subset_index) const {
  if (coefficients.size() != files_.size()) {
    throw DimensionMismatch("coefficient vector length differs from the file count");
  }
  if (coefficients.field() != field_) throw FieldMismatch("coefficients over a different field");
  Packet out(packet_length_, 0);
  for (unsigned n = 0; n < files_.size(); ++n) {
    const Symbol a = coefficients[n];
    if (a == 0) continue;
    const auto src = packet(n, subset_index);
    for (std::size_t i = 0; i < packet_length_; ++i) {
      out[i] = field_.add(out[i], field_.mul(a, src[i]));
    }
  }
  return out;
}

std::vector<Symbol> Library::combine_files(const FqVector& coefficients) const {
  std::vector<Symbol> out;
  out.reserve(length_);
  for (std::size_t i = 0; i < subsets_.size(); ++i) {
    const Packet p = combine(coefficients, i);
    out.insert(out.end(), p.begin(), p.end());
  }
  return out;
}

Library split_library(FileSet files, const SystemParams& params) {
  params.validate();
  if (files.size() != params.files) {
    throw InvalidLength("expected " + std::to_string(params.files) + " files, got " +
                        std::to_string(files.size()));
  }
  for (const auto& f : files) {
    if (f.size() != params.length) {
      throw InvalidLength("file of length " + std::to_string(f.size()) + ", expected " +
                          std::to_string(params.length));
    }
  }
  return Library(params.field(), params.users, params.t, std::move(files));
}

void UserCache::put_uncoded(unsigned n, std::size_t subset_index, Packet packet) {
  uncoded_[{subset_index, n}] = std::move(packet);
}

void UserCache::put_key(std::size_t subset_index, Packet packet) {
  keys_[subset_index] = std::move(packet);
}

const Packet* UserCache::uncoded(unsigned n, std::size_t subset_index) const {
  const auto it = uncoded_.find({subset_index, n});
  return it == uncoded_.end() ? nullptr : &it->second;
}

const Packet* UserCache::key(std::size_t subset_index) const {
  const auto it = keys_.find(subset_index);
  return it == keys_.end() ? nullptr : &it->second;
}

std::size_t UserCache::symbol_count() const noexcept {
  std::size_t total = 0;
  for (const auto& [_, p] : uncoded_) total += p.size();
  for (const auto& [_, p] : keys_) total += p.size();
  return total;
}

std::vector<FqVector> sample_keys(const SystemParams& params, std::mt19937_64& rng) {
  const Field field = params.field();
  std::uniform_int_distribution<Symbol> uniform(0, params.q - 1);
  std::vector<FqVector> keys;
  keys.reserve(params.users);
  for (unsigned k = 0; k < params.users; ++k) {
    FqVector p(field, params.files);
    if (params.variant == Variant::LFR) {
      for (unsigned n = 0; n < params.files; ++n) p.set(n, uniform(rng));
    } else {
      Symbol sum = 0;
      for (unsigned n = 0; n + 1 < params.files; ++n) {
        const Symbol x = uniform(rng);
        p.set(n, x);
        sum = field.add(sum, x);
      }
      p.set(params.files - 1, field.sub(params.q - 1, sum));
    }
    keys.push_back(std::move(p));
  }
  return keys;
}

namespace {

constexpr std::size_t kMaxEnumeration = 10'000'000;

// All vectors of F_q^len, last coordinate varying fastest.
std::vector<std::vector<Symbol>> all_vectors(std::uint32_t q, unsigned len) {
  std::size_t count = 1;
  for (unsigned i = 0; i < len; ++i) {
    count *= q;
    if (count > kMaxEnumeration) throw InvalidArgument("vector space too large to enumerate");
  }
  std::vector<std::vector<Symbol>> out;
  out.reserve(count);
  std::vector<Symbol> v(len, 0);
  for (std::size_t i = 0; i < count; ++i) {
    out.push_back(v);
    for (unsigned pos = len; pos-- > 0;) {
      if (++v[pos] < q) break;
      v[pos] = 0;
    }
  }
  return out;
}

}  // namespace

std::vector<FqVector> key_space(const SystemParams& params) {
  const Field field = params.field();
  std::vector<FqVector> out;
  if (params.variant == Variant::LFR) {
    for (auto& v : all_vectors(params.q, params.files)) out.emplace_back(field, std::move(v));
    return out;
  }
  for (auto& head : all_vectors(params.q, params.files - 1)) {
    Symbol sum = 0;
    for (Symbol x : head) sum = field.add(sum, x);
    head.push_back(field.sub(params.q - 1, sum));
    out.emplace_back(field, std::move(head));
  }
  return out;
}

std::vector<FqVector> demand_space(const SystemParams& params) {
  const Field field = params.field();
  std::vector<FqVector> out;
  if (params.variant == Variant::SFR) {
    for (unsigned n = 0; n < params.files; ++n) out.push_back(FqVector::unit(field, params.files, n));
    return out;
  }
  for (auto& v : all_vectors(params.q, params.files)) out.emplace_back(field, std::move(v));
  return out;
}

UserCache fill_cache(const Library& library, const FqVector& key, unsigned user) {
  const SubsetFamily& omega = library.subsets();
  if (user >= omega.users()) throw InvalidArgument("user index out of range");
  UserCache cache(user, library.file_count());
  for (std::size_t i = 0; i < omega.size(); ++i) {
    if (contains(omega[i], user)) {
      for (unsigned n = 0; n < library.file_count(); ++n) {
        const auto p = library.packet(n, i);
        cache.put_uncoded(n, i, Packet(p.begin(), p.end()));
      }
    } else {
      cache.put_key(i, library.combine(key, i));
    }
  }
  return cache;
}

PlacementState place(const Library& library, std::vector<FqVector> keys,
                     const SystemParams& params) {
  params.validate();
  if (keys.size() != params.users) throw InvalidArgument("need one key per user");
  for (const auto& key : keys) {
    if (key.size() != params.files || key.field() != params.field()) {
      throw InvalidArgument("key vector does not live in F_q^N");
    }
  }
  PlacementState state;
  state.caches.reserve(params.users);
  for (unsigned k = 0; k < params.users; ++k) state.caches.push_back(fill_cache(library, keys[k], k));
  state.keys = std::move(keys);
  return state;
}

void validate_demands(std::span<const FqVector> demands, const SystemParams& params) {
  if (demands.size() != params.users) {
    throw InvalidDemand("expected " + std::to_string(params.users) + " demands, got " +
                        std::to_string(demands.size()));
  }
  for (std::size_t k = 0; k < demands.size(); ++k) {
    const auto& d = demands[k];
    if (d.size() != params.files || d.field() != params.field()) {
      throw InvalidDemand("demand of user " + std::to_string(k + 1) + " is not in F_q^N");
    }
    if (params.variant == Variant::SFR) {
      std::size_t ones = 0, zeros = 0;
      for (Symbol e : d.entries()) {
        ones += e == 1;
        zeros += e == 0;
      }
      if (ones != 1 || zeros + 1 != d.size()) {
        throw InvalidDemand("SFR demand of user " + std::to_string(k + 1) +
                            " is not a unit vector");
      }
    }
  }
}

Symbol member_sign(const Field& field, UserSet s, unsigned user) {
  const unsigned below = cardinality(s & ((UserSet{1} << user) - 1));
  return below % 2 == 0 ? 1 : field.neg(1);
}

Packet multicast_signal(const Library& library, std::span<const FqVector> queries, UserSet s) {
  const Field& field = library.field();
  Packet y(library.packet_length(), 0);
  for (unsigned j : members(s)) {
    const Symbol sign = member_sign(field, s, j);
    const Packet part = library.combine(queries[j], library.subsets().index_of(without(s, j)));
    for (std::size_t i = 0; i < y.size(); ++i) y[i] = field.add(y[i], field.mul(sign, part[i]));
  }
  return y;
}

DeliverySignal deliver(const PlacementState& placement, std::span<const FqVector> demands,
                       const Library& library, const SystemParams& params) {
  validate_demands(demands, params);
  if (placement.keys.size() != params.users) throw InvalidArgument("placement has the wrong user count");
  DeliverySignal signal;
  signal.queries.reserve(params.users);
  for (unsigned k = 0; k < params.users; ++k) {
    signal.queries.push_back(placement.keys[k] + demands[k]);
  }
  signal.leaders = leader_set(signal.queries);
  UserSet leader_mask = 0;
  for (std::size_t k : signal.leaders) leader_mask = with(leader_mask, static_cast<unsigned>(k));

  const SubsetFamily omega_next(params.users, params.t + 1);
  for (UserSet s : omega_next.sets()) {
    if ((s & leader_mask) == 0) continue;
    signal.payload.emplace_back(s, multicast_signal(library, signal.queries, s));
  }
  return signal;
}

namespace {

// Coefficient row of Y_S over the basis {W_{n,T}}, variable n * |Omega_t| + index(T).
FqVector signal_row(const SubsetFamily& packets, std::span<const FqVector> queries,
                    unsigned files, UserSet s) {
  const Field& field = queries.front().field();
  FqVector row(field, static_cast<std::size_t>(files) * packets.size());
  for (unsigned j : members(s)) {
    const std::size_t t_index = packets.index_of(without(s, j));
    const Symbol sign = member_sign(field, s, j);
    for (unsigned n = 0; n < files; ++n) {
      const std::size_t var = n * packets.size() + t_index;
      row.set(var, field.add(row[var], field.mul(sign, queries[j][n])));
    }
  }
  return row;
}

void check_signal_shape(const DeliverySignal& signal, const SystemParams& params) {
  if (signal.queries.size() != params.users) {
    throw DecodeFailure("signal carries " + std::to_string(signal.queries.size()) +
                        " query vectors for " + std::to_string(params.users) + " users");
  }
  for (const auto& q : signal.queries) {
    if (q.size() != params.files || q.field() != params.field()) {
      throw DecodeFailure("query vector is not in F_q^N");
    }
  }
  const std::size_t len = params.packet_length();
  for (const auto& [s, y] : signal.payload) {
    if (cardinality(s) != params.t + 1) throw DecodeFailure("payload index of the wrong size");
    if (y.size() != len) throw DecodeFailure("payload packet of the wrong length");
  }
}

}  // namespace

SignalFamily reconstruct_missing(const DeliverySignal& signal, const SystemParams& params) {
  params.validate();
  check_signal_shape(signal, params);
  const Field field = params.field();
  const SubsetFamily packets(params.users, params.t);
  const SubsetFamily omega_next(params.users, params.t + 1);

  std::vector<const Packet*> by_index(omega_next.size(), nullptr);
  for (const auto& [s, y] : signal.payload) by_index[omega_next.index_of(s)] = &y;

  SignalFamily family;
  family.reserve(omega_next.size());
  const bool complete = std::none_of(by_index.begin(), by_index.end(),
                                     [](const Packet* p) { return p == nullptr; });
  if (complete) {
    for (std::size_t i = 0; i < omega_next.size(); ++i) family.emplace_back(omega_next[i], *by_index[i]);
    return family;
  }

  // Columns of the system are the transmitted signals' coefficient rows.
  const std::size_t vars = static_cast<std::size_t>(params.files) * packets.size();
  FqMatrix columns(field, vars, signal.payload.size());
  for (std::size_t c = 0; c < signal.payload.size(); ++c) {
    const FqVector row = signal_row(packets, signal.queries, params.files, signal.payload[c].first);
    for (std::size_t v = 0; v < vars; ++v) {
      if (row[v] != 0) columns.set(v, c, row[v]);
    }
  }

  const std::size_t len = params.packet_length();
  for (std::size_t i = 0; i < omega_next.size(); ++i) {
    const UserSet s = omega_next[i];
    if (by_index[i] != nullptr) {
      family.emplace_back(s, *by_index[i]);
      continue;
    }
    const FqVector target = signal_row(packets, signal.queries, params.files, s);
    const auto weights = solve(columns, target);
    if (!weights) {
      throw TheoremViolation("signal " + format_user_set(s) +
                             " is not a combination of the transmitted signals");
    }
    Packet y(len, 0);
    for (std::size_t c = 0; c < signal.payload.size(); ++c) {
      const Symbol w = (*weights)[c];
      if (w == 0) continue;
      const Packet& src = signal.payload[c].second;
      for (std::size_t b = 0; b < len; ++b) y[b] = field.add(y[b], field.mul(w, src[b]));
    }
    family.emplace_back(s, std::move(y));
  }
  return family;
}

Decoder::Decoder(const DeliverySignal& signal, const SystemParams& params)
    : params_(params),
      packets_(params.users, params.t),
      signals_(params.users, params.t + 1),
      queries_(signal.queries),
      family_(reconstruct_missing(signal, params)) {}

std::vector<Symbol> Decoder::decode(unsigned user, const UserCache& cache,
                                    const FqVector& demand) const {
  if (user >= params_.users) throw DecodeFailure("user index out of range");
  if (cache.user() != user) {
    throw DecodeFailure("cache of user " + std::to_string(cache.user() + 1) +
                        " used to decode for user " + std::to_string(user + 1));
  }
  if (demand.size() != params_.files || demand.field() != params_.field()) {
    throw DecodeFailure("demand is not in F_q^N");
  }
  const Field field = params_.field();
  const std::size_t len = params_.packet_length();
  std::vector<Symbol> message(params_.length, 0);

  auto cached = [&](unsigned n, std::size_t t_index) -> const Packet& {
    const Packet* p = cache.uncoded(n, t_index);
    if (p == nullptr || p->size() != len) {
      throw DecodeFailure("cache lacks packet W_{" + std::to_string(n + 1) + "," +
                          format_user_set(packets_[t_index]) + "}");
    }
    return *p;
  };
  // out -= W_{a,T} using uncoded cached packets.
  auto subtract_combination = [&](std::vector<Symbol>& out, const FqVector& a, std::size_t t_index) {
    for (unsigned n = 0; n < params_.files; ++n) {
      if (a[n] == 0) continue;
      const Packet& p = cached(n, t_index);
      for (std::size_t b = 0; b < len; ++b) out[b] = field.sub(out[b], field.mul(a[n], p[b]));
    }
  };

  for (std::size_t i = 0; i < packets_.size(); ++i) {
    const UserSet t = packets_[i];
    std::vector<Symbol> piece(len, 0);
    if (contains(t, user)) {
      for (unsigned n = 0; n < params_.files; ++n) {
        if (demand[n] == 0) continue;
        const Packet& p = cached(n, i);
        for (std::size_t b = 0; b < len; ++b) piece[b] = field.add(piece[b], field.mul(demand[n], p[b]));
      }
    } else {
      // Y_{T+k} = s_k (W_{d_k,T} + W_{p_k,T}) + sum_{j in T} s_j W_{q_j, T+k-j}
      const UserSet s = with(t, user);
      const Packet& y = family_[signals_.index_of(s)].second;
      const Packet* key = cache.key(i);
      if (key == nullptr || key->size() != len) {
        throw DecodeFailure("cache lacks key packet for " + format_user_set(t));
      }
      piece = y;
      for (unsigned j : members(t)) {
        subtract_combination(piece, queries_[j].scaled(member_sign(field, s, j)),
                             packets_.index_of(without(s, j)));
      }
      const Symbol own = member_sign(field, s, user);
      for (std::size_t b = 0; b < len; ++b) piece[b] = field.sub(field.mul(own, piece[b]), (*key)[b]);
    }
    std::copy(piece.begin(), piece.end(), message.begin() + static_cast<std::ptrdiff_t>(i * len));
  }
  return message;
}

std::vector<Symbol> decode(unsigned user, const DeliverySignal& signal, const UserCache& cache,
                           const FqVector& demand, const SystemParams& params) {
  return Decoder(signal, params).decode(user, cache, demand);
}

Rational measured_load(const DeliverySignal& signal, const SystemParams& params) {
  return Rational(static_cast<long long>(signal.payload.size()),
                  static_cast<long long>(params.subpacketization()));
}

std::size_t payload_size(unsigned users, unsigned t, std::size_t rank) {
  return binomial_size(users, t + 1) -
         binomial_size(static_cast<long long>(users) - static_cast<long long>(rank), t + 1);
}

}  // namespace pkcache
