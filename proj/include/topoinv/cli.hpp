#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace topoinv {

// Exit codes of the command-line front end.
enum ExitCode : int {
    kExitOk = 0,
    kExitVerifyFailed = 1,
    kExitInvalid = 2,
    kExitUncovered = 3,
};

// args excludes the program name.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

} // namespace topoinv
