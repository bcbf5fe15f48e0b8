#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace pkcache::cli {

// Exit codes: 0 success or PASS, 1 failed check or audit, 2 usage error.
inline constexpr int kExitOk = 0;
inline constexpr int kExitFailure = 1;
inline constexpr int kExitUsage = 2;

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace pkcache::cli
