#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace barnes::cli {

// Exit codes
enum Exit : int { kOk = 0, kCompareFail = 1, kUsage = 2, kNumeric = 3, kPole = 4 };

// Runs one command line (args[0] is the program name). Output goes to out, messages to err.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace barnes::cli
