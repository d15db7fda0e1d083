#pragma once

namespace fairgdt::cli {

/// Full command-line entry point (fit / generate / evaluate / sweep / bench).
/// Returns the process exit code: 0 success, 2 usage or input error,
/// 3 internal invariant violation.
int run(int argc, const char* const* argv);

}  // namespace fairgdt::cli
