#ifndef NCAMPLE_CLI_HPP
#define NCAMPLE_CLI_HPP

#include <iosfwd>
#include <string>
#include <vector>

namespace ncample {

inline constexpr int kExitDecisive = 0;
inline constexpr int kExitError = 1;
inline constexpr int kExitUndecided = 2;

/// Runs the command line `args` (without the program name). Reports go to
/// `out`, diagnostics to `err`.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

/// Lowercase hex SHA-256.
std::string sha256_hex(const std::string& bytes);

}  // namespace ncample

#endif  // NCAMPLE_CLI_HPP
