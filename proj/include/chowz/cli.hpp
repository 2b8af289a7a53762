#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace chowz::cli {

enum ExitCode : int { Ok = 0, ClaimFailure = 1, ParseFailure = 2, InternalError = 3 };

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);
int run(int argc, char** argv);

}  // namespace chowz::cli
