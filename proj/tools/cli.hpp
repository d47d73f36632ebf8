#pragma once

#include <string>
#include <vector>

namespace dlcc {

// Exit status contract: 0 success, 1 runtime failure, 2 usage error.
inline constexpr int kExitOk = 0;
inline constexpr int kExitFailure = 1;
inline constexpr int kExitUsage = 2;

int runCli(int argc, char** argv);
// args excludes the program name.
int runCli(const std::vector<std::string>& args);

}  // namespace dlcc
