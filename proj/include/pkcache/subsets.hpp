#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

namespace pkcache {

// Set of users as a bitmask; user k (0-based) is bit k.
using UserSet = std::uint32_t;

constexpr unsigned kMaxUsers = 24;

inline bool contains(UserSet s, unsigned user) { return (s >> user) & 1u; }
inline UserSet with(UserSet s, unsigned user) { return s | (UserSet{1} << user); }
inline UserSet without(UserSet s, unsigned user) { return s & ~(UserSet{1} << user); }
unsigned cardinality(UserSet s);

// Members in increasing order.
std::vector<unsigned> members(UserSet s);

// "{1,3}" using 1-based user labels.
std::string format_user_set(UserSet s);

// All subsets of {0, .., users-1} of a fixed size, in lexicographic order of
// their sorted member lists: {0,1} < {0,2} < .. < {1,2} < ..
class SubsetFamily {
 public:
  SubsetFamily(unsigned users, unsigned size);

  unsigned users() const noexcept { return users_; }
  unsigned subset_size() const noexcept { return size_; }
  std::size_t size() const noexcept { return sets_.size(); }
  UserSet operator[](std::size_t i) const { return sets_[i]; }
  const std::vector<UserSet>& sets() const noexcept { return sets_; }

  // Position of s in the family. Throws InvalidArgument if s is not a member.
  std::size_t index_of(UserSet s) const;

 private:
  unsigned users_;
  unsigned size_;
  std::vector<UserSet> sets_;
  std::vector<std::pair<UserSet, std::size_t>> lookup_;  // sorted by mask
};

// Every subset of {0, .., users-1}, ordered by size then lexicographically.
std::vector<UserSet> all_subsets(unsigned users);

}  // namespace pkcache
