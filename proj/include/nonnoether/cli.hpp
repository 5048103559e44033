#pragma once

#include <string>
#include <vector>

namespace nonnoether::cli {

inline constexpr const char* kToolVersion = "1.0.0";
inline constexpr const char* kReportSchema = "nonnoether/1";

// Runs one command line. Returns the process exit code: 0 when all requested
// checks pass, 1 when a check fails, 2 on parse/validation errors. The
// human-readable report goes to stdout; --json <path> additionally writes the
// machine report (byte-deterministic for fixed inputs and seed).
int dispatch(const std::vector<std::string>& args);
int dispatch(int argc, char** argv);

} // namespace nonnoether::cli
