#pragma once

#include <atomic>
#include <iosfwd>
#include <string>
#include <vector>

namespace cyclo::cli {

// Process exit codes.
inline constexpr int kExitOk = 0;
inline constexpr int kExitCheckFailed = 1;  // a check or validation reported failures
inline constexpr int kExitUsage = 2;
inline constexpr int kExitInvariant = 3;
inline constexpr int kExitIo = 4;
inline constexpr int kExitInterrupted = 130;

// Environment variable naming the default survey store.
inline constexpr const char* kStoreEnv = "CYCLO_STORE";

// args excludes the program name. cancel, when given, interrupts a survey.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err,
        const std::atomic<bool>* cancel = nullptr);

}  // namespace cyclo::cli
