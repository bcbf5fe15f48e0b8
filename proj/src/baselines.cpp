#include "pkcache/baselines.hpp"

#include "pkcache/error.hpp"

#include <algorithm>
#include <numeric>

namespace pkcache {

std::vector<CornerPoint> virtual_user_points(unsigned files, unsigned users) {
  if (files < 2 || users < 2) throw InvalidArgument("need N >= 2 and K >= 2");
  const long long total = static_cast<long long>(files) * users;
  const long long others = static_cast<long long>(files) * (users - 1);
  std::vector<CornerPoint> out;
  out.reserve(static_cast<std::size_t>(total) + 1);
  for (long long t = 0; t <= total; ++t) {
    const BigInt f = binomial(total, t);
    const BigInt num = binomial(total, t + 1) - binomial(others, t + 1);
    out.push_back({static_cast<unsigned>(t), Rational(t, users), Rational(num, f), f});
  }
  return out;
}

std::vector<CornerPoint> nonprivate_points(unsigned files, unsigned users) {
  if (files < 2 || users < 2) throw InvalidArgument("need N >= 2 and K >= 2");
  const long long m = std::min(files, users);
  std::vector<CornerPoint> out;
  for (unsigned t = 0; t <= users; ++t) {
    const BigInt f = binomial(users, t);
    const BigInt num = binomial(users, t + 1) - binomial(users - m, t + 1);
    out.push_back({t, Rational(static_cast<long long>(t) * files, users), Rational(num, f), f});
  }
  return out;
}

std::vector<CornerPoint> privacy_key_points(unsigned files, unsigned users, Variant variant) {
  if (files < 2 || users < 2) throw InvalidArgument("need N >= 2 and K >= 2");
  const long long cap = variant == Variant::SFR ? std::min<long long>(files - 1, users)
                                                : std::min<long long>(files, users);
  std::vector<CornerPoint> out;
  out.push_back({0, Rational(0), Rational(files), BigInt(1)});
  for (unsigned t = 0; t <= users; ++t) {
    const BigInt f = binomial(users, t);
    const BigInt num = binomial(users, t + 1) - binomial(users - cap, t + 1);
    out.push_back({t, Rational(1) + Rational(static_cast<long long>(t) * (files - 1), users),
                   Rational(num, f), f});
  }
  return out;
}

unsigned residue_1k(long long value, unsigned users) {
  const long long k = users;
  long long r = value % k;
  if (r <= 0) r += k;
  return static_cast<unsigned>(r);
}

Example1Randomness sample_example1_randomness(unsigned users, std::size_t filler_length,
                                              const Field& field, std::mt19937_64& rng) {
  Example1Randomness r;
  r.permutation.resize(users);
  std::iota(r.permutation.begin(), r.permutation.end(), 1u);
  std::shuffle(r.permutation.begin(), r.permutation.end(), rng);
  std::uniform_int_distribution<unsigned> key(1, users);
  std::uniform_int_distribution<Symbol> symbol(0, field.order() - 1);
  for (unsigned k = 0; k < users; ++k) r.keys.push_back(key(rng));
  for (unsigned k = 0; k < users; ++k) {
    std::vector<Symbol> v(filler_length);
    for (auto& s : v) s = symbol(rng);
    r.fillers.push_back(std::move(v));
  }
  return r;
}

namespace {

std::size_t demanded_file(const FqVector& d, unsigned files, unsigned user) {
  if (d.size() != files) throw InvalidDemand("demand of user " + std::to_string(user + 1) + " has the wrong length");
  std::size_t index = files;
  for (std::size_t n = 0; n < d.size(); ++n) {
    if (d[n] == 0) continue;
    if (d[n] != 1 || index != files) {
      throw InvalidDemand("demand of user " + std::to_string(user + 1) + " is not a unit vector");
    }
    index = n;
  }
  if (index == files) throw InvalidDemand("demand of user " + std::to_string(user + 1) + " is zero");
  return index;
}

}  // namespace

Example1Run example1_run(unsigned files, unsigned users, const Rational& memory, const Field& field,
                         const FileSet& library, std::span<const FqVector> demands,
                         const Example1Randomness& randomness) {
  if (files <= users) throw Unsupported("the slot scheme needs more files than users");
  if (library.size() != files) throw InvalidLength("library does not hold N files");
  if (memory < 0 || memory > files) throw InvalidArgument("memory outside [0, N]");
  const std::size_t length = library.front().size();
  for (const auto& f : library) {
    if (f.size() != length) throw InvalidLength("files have different lengths");
    for (Symbol x : f) {
      if (!field.contains(x)) throw InvalidArgument("file symbol is not a residue modulo q");
    }
  }
  const Rational cached_exact = memory * static_cast<long long>(length) / files;
  if (boost::multiprecision::denominator(cached_exact) != 1) {
    throw InvalidLength("(M/N) B is not an integer");
  }
  const std::size_t cached = boost::multiprecision::numerator(cached_exact).convert_to<std::size_t>();
  const std::size_t uncached = length - cached;

  if (demands.size() != users) throw InvalidDemand("need one demand per user");
  std::vector<std::size_t> wanted;
  for (unsigned k = 0; k < users; ++k) wanted.push_back(demanded_file(demands[k], files, k));

  std::vector<unsigned> sorted = randomness.permutation;
  std::sort(sorted.begin(), sorted.end());
  for (unsigned k = 0; k < users; ++k) {
    if (sorted.size() != users || sorted[k] != k + 1) {
      throw InvalidArgument("positions are not a permutation of 1..K");
    }
  }
  if (randomness.keys.size() != users || randomness.fillers.size() != users) {
    throw InvalidArgument("randomness has the wrong number of keys or fillers");
  }
  for (unsigned k = 0; k < users; ++k) {
    if (randomness.keys[k] < 1 || randomness.keys[k] > users) throw InvalidArgument("key outside 1..K");
    if (randomness.fillers[k].size() != uncached) throw InvalidLength("filler length differs from (1-M/N)B");
  }

  auto cached_part = [&](std::size_t n) {
    return std::vector<Symbol>(library[n].begin(), library[n].begin() + static_cast<std::ptrdiff_t>(cached));
  };
  auto uncached_part = [&](std::size_t n) {
    return std::vector<Symbol>(library[n].begin() + static_cast<std::ptrdiff_t>(cached), library[n].end());
  };

  Example1Run run;
  // A repeated demand reuses the slot of its first occurrence.
  for (unsigned i = 0; i < users; ++i) {
    unsigned j = 0;
    while (j < i && wanted[j] != wanted[i]) ++j;
    run.side_indices.push_back(j < i ? run.side_indices[j] : randomness.permutation[i]);
  }
  for (unsigned j = 0; j < users; ++j) {
    run.signal.queries.push_back(residue_1k(static_cast<long long>(run.side_indices[j]) + randomness.keys[j], users));
  }
  for (unsigned slot = 1; slot <= users; ++slot) {
    const auto holder = std::find(run.side_indices.begin(), run.side_indices.end(), slot);
    if (holder != run.side_indices.end()) {
      run.signal.slots.push_back(uncached_part(wanted[static_cast<std::size_t>(holder - run.side_indices.begin())]));
    } else {
      run.signal.slots.push_back(randomness.fillers[slot - 1]);
    }
  }
  for (unsigned k = 0; k < users; ++k) {
    Example1Cache cache;
    cache.key = randomness.keys[k];
    for (unsigned n = 0; n < files; ++n) cache.cached_parts.push_back(cached_part(n));
    run.caches.push_back(std::move(cache));
  }
  for (unsigned k = 0; k < users; ++k) {
    const unsigned slot = residue_1k(static_cast<long long>(run.signal.queries[k]) - run.caches[k].key, users);
    std::vector<Symbol> message = run.caches[k].cached_parts[wanted[k]];
    const auto& tail = run.signal.slots[slot - 1];
    message.insert(message.end(), tail.begin(), tail.end());
    run.decoded.push_back(std::move(message));
  }
  return run;
}

}  // namespace pkcache
