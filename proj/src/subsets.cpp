#include "pkcache/subsets.hpp"

#include "pkcache/error.hpp"

#include <algorithm>
#include <bit>

namespace pkcache {

unsigned cardinality(UserSet s) { return static_cast<unsigned>(std::popcount(s)); }

std::vector<unsigned> members(UserSet s) {
  std::vector<unsigned> out;
  for (unsigned k = 0; s != 0; ++k, s >>= 1) {
    if (s & 1u) out.push_back(k);
  }
  return out;
}

std::string format_user_set(UserSet s) {
  std::string out = "{";
  bool first = true;
  for (unsigned k : members(s)) {
    if (!first) out += ",";
    out += std::to_string(k + 1);
    first = false;
  }
  return out + "}";
}

namespace {

void enumerate(unsigned users, unsigned size, unsigned next, UserSet current, unsigned chosen,
               std::vector<UserSet>& out) {
  if (chosen == size) {
    out.push_back(current);
    return;
  }
  for (unsigned k = next; k + (size - chosen) <= users; ++k) {
    enumerate(users, size, k + 1, with(current, k), chosen + 1, out);
  }
}

}  // namespace

SubsetFamily::SubsetFamily(unsigned users, unsigned size) : users_(users), size_(size) {
  if (users > kMaxUsers) {
    throw InvalidArgument("at most " + std::to_string(kMaxUsers) + " users are supported");
  }
  if (size <= users) enumerate(users, size, 0, 0, 0, sets_);
  lookup_.reserve(sets_.size());
  for (std::size_t i = 0; i < sets_.size(); ++i) lookup_.emplace_back(sets_[i], i);
  std::sort(lookup_.begin(), lookup_.end());
}

std::size_t SubsetFamily::index_of(UserSet s) const {
  const auto it = std::lower_bound(lookup_.begin(), lookup_.end(), std::make_pair(s, std::size_t{0}));
  if (it == lookup_.end() || it->first != s) {
    throw InvalidArgument(format_user_set(s) + " is not a " + std::to_string(size_) + "-subset");
  }
  return it->second;
}

std::vector<UserSet> all_subsets(unsigned users) {
  std::vector<UserSet> out;
  for (unsigned size = 0; size <= users; ++size) {
    const SubsetFamily family(users, size);
    out.insert(out.end(), family.sets().begin(), family.sets().end());
  }
  return out;
}

}  // namespace pkcache
