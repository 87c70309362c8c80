#ifndef UNIT_FIBERS_CLI_H_
#define UNIT_FIBERS_CLI_H_

#include <iosfwd>
#include <string>
#include <vector>

namespace unit_fibers {

inline constexpr int kExitOk = 0;
inline constexpr int kExitVerificationFailed = 1;
inline constexpr int kExitUsage = 2;

// Entry point of the `unit_fibers` command; args excludes the program name.
int RunCli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace unit_fibers

#endif  // UNIT_FIBERS_CLI_H_
