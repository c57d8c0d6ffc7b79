#ifndef GHK_CLI_HPP_
#define GHK_CLI_HPP_

#include <iosfwd>
#include <string>
#include <vector>

namespace ghk::cli {

// Exit codes.
inline constexpr int kOk = 0;
inline constexpr int kCheckFailed = 1;
inline constexpr int kInvalidInput = 2;
inline constexpr int kUsage = 3;

// Runs one command line (without the program name). The human-readable
// summary goes to `out`, diagnostics to `err`.
int run(std::vector<std::string> const& args, std::ostream& out,
        std::ostream& err);

// Hex SHA-256 of a byte string.
std::string sha256_hex(std::string const& bytes);

}  // namespace ghk::cli

#endif  // GHK_CLI_HPP_
