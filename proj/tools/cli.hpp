#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace dpmod::cli {

inline constexpr const char* kVersion = "0.1.0";

/// Largest modulus the command line accepts; brute-force checks stop being
/// desk-scale well before this.
inline constexpr std::uint64_t kMaxCliPrime = 1000;

/// Exit codes: 0 success, 1 verification failure or computation error,
/// 2 usage or input error.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace dpmod::cli
