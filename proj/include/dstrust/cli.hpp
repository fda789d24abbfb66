#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace dstrust {

/// Exit codes shared by every subcommand.
enum ExitCode : int {
    kExitOk = 0,
    kExitRuntime = 1,
    kExitUsage = 2,
};

/// Entry point behind the `trustsim` executable. `args` includes the program
/// name. Subcommands: simulate, ingest, report.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

} // namespace dstrust
