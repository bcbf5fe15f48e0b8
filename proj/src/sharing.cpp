#include "pkcache/sharing.hpp"

#include "pkcache/bounds.hpp"
#include "pkcache/error.hpp"

#include <boost/integer/common_factor_rt.hpp>

namespace pkcache {

namespace {

SharedCorner corner_at(const TradeoffPoint& p, unsigned files, unsigned users) {
  SharedCorner c;
  c.memory = p.memory;
  c.load = p.load;
  c.subpacketization = 1;
  if (p.memory == 0) {
    c.kind = SharedCorner::Kind::Broadcast;
    return c;
  }
  const Rational t = (p.memory - 1) * users / (files - 1);
  if (boost::multiprecision::denominator(t) != 1 || t < 0 || t > users) {
    throw TheoremViolation("envelope corner " + to_fraction_string(p.memory) + " is not a scheme corner");
  }
  c.t = boost::multiprecision::numerator(t).convert_to<unsigned>();
  if (c.t == users) {
    c.kind = SharedCorner::Kind::FullCache;
  } else {
    c.kind = SharedCorner::Kind::PrivacyKey;
    c.subpacketization = binomial(users, c.t);
  }
  return c;
}

BigInt part_multiple(const BigInt& f, const BigInt& share) {
  if (share == 0) return 1;
  return f / boost::multiprecision::gcd(f, share);
}

struct PartResult {
  std::vector<std::vector<Symbol>> decoded;
  std::size_t transmitted = 0;
  std::size_t cached = 0;
};

PartResult run_part(const SharedCorner& corner, const SystemParams& base, const FileSet& part,
                    std::span<const FqVector> demands, std::mt19937_64& rng) {
  PartResult out;
  const std::size_t len = part.front().size();
  const Field field = base.field();
  if (corner.kind != SharedCorner::Kind::PrivacyKey) {
    Library whole(field, base.users, 0, part);
    for (const auto& d : demands) out.decoded.push_back(whole.combine_files(d));
    if (corner.kind == SharedCorner::Kind::Broadcast) {
      out.transmitted = base.files * len;
    } else {
      out.cached = base.files * len;
    }
    return out;
  }
  SystemParams params = base;
  params.t = corner.t;
  params.length = len;
  const Library library = split_library(part, params);
  const PlacementState placement = place(library, sample_keys(params, rng), params);
  const DeliverySignal signal = deliver(placement, demands, library, params);
  const Decoder decoder(signal, params);
  for (unsigned k = 0; k < params.users; ++k) {
    out.decoded.push_back(decoder.decode(k, placement.caches[k], demands[k]));
  }
  for (const auto& [_, y] : signal.payload) out.transmitted += y.size();
  out.cached = placement.caches.front().symbol_count();
  return out;
}

}  // namespace

SharingPlan share_memory(unsigned files, unsigned users, Variant variant, const Rational& memory) {
  if (memory < 0 || memory > files) throw OutOfRange("memory must lie in [0, N]");
  const TradeoffCurve curve = privacy_key_curve(files, users, variant);
  const auto& corners = curve.corners();
  const std::size_t i = curve.segment(memory);

  SharingPlan plan;
  plan.memory = memory;
  plan.load = curve.eval(memory);
  plan.a = corner_at(corners[i], files, users);
  if (i + 1 >= corners.size() || memory == corners[i].memory) {
    plan.alpha = 1;
    plan.b = plan.a;
    plan.subpacketization = plan.a.subpacketization;
    plan.min_length = plan.a.subpacketization;
    return plan;
  }
  plan.b = corner_at(corners[i + 1], files, users);
  plan.alpha = (plan.b.memory - memory) / (plan.b.memory - plan.a.memory);
  plan.subpacketization = plan.a.subpacketization + plan.b.subpacketization;

  const BigInt u = boost::multiprecision::numerator(plan.alpha);
  const BigInt v = boost::multiprecision::denominator(plan.alpha);
  const BigInt xa = part_multiple(plan.a.subpacketization, u);
  const BigInt xb = part_multiple(plan.b.subpacketization, v - u);
  plan.min_length = v * boost::multiprecision::lcm(xa, xb);
  return plan;
}

SharedRun run_shared(const SharingPlan& plan, const SystemParams& base, const FileSet& files,
                     std::span<const FqVector> demands, std::mt19937_64& rng) {
  if (files.size() != base.files) throw InvalidLength("library size differs from N");
  const std::size_t length = files.front().size();
  for (const auto& f : files) {
    if (f.size() != length) throw InvalidLength("files have different lengths");
  }
  if (length == 0 || BigInt(length) % plan.min_length != 0) {
    throw InvalidLength("file length must be a positive multiple of " + plan.min_length.str());
  }
  validate_demands(demands, base);

  const Rational share_a = plan.alpha * static_cast<long long>(length);
  const std::size_t len_a = boost::multiprecision::numerator(share_a).convert_to<std::size_t>();
  FileSet part_a, part_b;
  for (const auto& f : files) {
    part_a.emplace_back(f.begin(), f.begin() + static_cast<std::ptrdiff_t>(len_a));
    part_b.emplace_back(f.begin() + static_cast<std::ptrdiff_t>(len_a), f.end());
  }

  SharedRun run;
  run.decoded.assign(base.users, {});
  const auto absorb = [&](const PartResult& r) {
    for (unsigned k = 0; k < base.users; ++k) {
      run.decoded[k].insert(run.decoded[k].end(), r.decoded[k].begin(), r.decoded[k].end());
    }
    run.transmitted_symbols += r.transmitted;
    run.cache_symbols += r.cached;
  };
  if (len_a > 0) absorb(run_part(plan.a, base, part_a, demands, rng));
  if (len_a < length) absorb(run_part(plan.b, base, part_b, demands, rng));

  const Library whole(base.field(), base.users, 0, files);
  run.decoded_ok = true;
  for (unsigned k = 0; k < base.users; ++k) {
    run.decoded_ok = run.decoded_ok && run.decoded[k] == whole.combine_files(demands[k]);
  }
  run.measured_load = Rational(static_cast<long long>(run.transmitted_symbols), static_cast<long long>(length));
  run.measured_memory = Rational(static_cast<long long>(run.cache_symbols), static_cast<long long>(length));
  return run;
}

}  // namespace pkcache
