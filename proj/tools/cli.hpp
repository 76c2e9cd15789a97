// Command-line driver, kept separate from main() so tests can run it
// against in-memory streams.

#ifndef BITINV_TOOLS_CLI_HPP
#define BITINV_TOOLS_CLI_HPP

#include <iosfwd>
#include <string>
#include <vector>

namespace bitinv::cli {

enum ExitCode : int { kOk = 0, kUsage = 1, kResource = 2 };

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

} // namespace bitinv::cli

#endif // BITINV_TOOLS_CLI_HPP
