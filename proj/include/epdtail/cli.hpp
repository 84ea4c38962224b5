#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace epdtail {

inline constexpr int kExitOk = 0;
inline constexpr int kExitUsage = 1;
inline constexpr int kExitData = 2;
inline constexpr int kExitNumerical = 3;

/// Entry point of the `epdtail` command line tool. `args` excludes the
/// program name. Tables go to `out` unless --out is given; diagnostics to
/// `err`.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

/// Hex SHA-256 of a byte string.
std::string sha256_hex(const std::string& bytes);

const char* library_version();

}  // namespace epdtail
