#pragma once

#include <iosfwd>

namespace mcsp {

enum ExitCode : int { kExitYes = 0, kExitNo = 1, kExitResource = 2, kExitParse = 3 };

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace mcsp
