#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace geodist {

// Exit status: 0 success / pass, 1 check or verification failure, 2 malformed input.
enum ExitCode { kExitOk = 0, kExitFail = 1, kExitInput = 2 };

// Subcommands: analyze, check, synthesize, verify, demo, calibrate.
// `args` excludes the program name.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);
int run(int argc, char** argv);

}  // namespace geodist
