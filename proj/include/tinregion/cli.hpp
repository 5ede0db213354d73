#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace tinregion::cli {

inline constexpr const char* kVersion = "1.0.0";

/// Runs one command. `args` excludes the program name. Returns the exit
/// code: 0 success, 1 domain error, 2 usage error.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

/// Hex SHA-256 of a byte string.
std::string sha256_hex(const std::string& bytes);

}  // namespace tinregion::cli
