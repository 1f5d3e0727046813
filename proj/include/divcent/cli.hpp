#pragma once

#include <string_view>

#include "divcent/error.hpp"

namespace divcent::cli {

/// Process exit codes. Usage errors come from argument parsing; the rest map
/// library error kinds onto four coarse classes.
enum ExitCode : int {
    kOk = 0,
    kInternal = 1,
    kUsage = 2,
    kParse = 3,
    kPrecondition = 4,
    kConvergence = 5,
    kIo = 6,
};

ExitCode exit_code_for(ErrorKind kind);

/// Entry point shared by the executable and the tests.
int run(int argc, const char* const* argv);

inline constexpr std::string_view kVersion = "1.0.0";
inline constexpr int kReportSchemaVersion = 1;

}  // namespace divcent::cli
