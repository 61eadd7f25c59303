#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace odg::cli {

enum Exit : int { kOk = 0, kEmpty = 1, kUsage = 2, kResource = 3 };

/// Runs one invocation; `args` excludes the program name.
int run(const std::vector<std::string>& args, std::istream& in, std::ostream& out,
        std::ostream& err);

}  // namespace odg::cli
