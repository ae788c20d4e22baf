#pragma once

namespace skillc::cli {

// Exit codes: 0 success, 1 usage/config error, 2 at least one interception.
inline constexpr int kExitOk = 0;
inline constexpr int kExitUsage = 1;
inline constexpr int kExitIntercepted = 2;

int run(int argc, char** argv);

}  // namespace skillc::cli
