#pragma once

#include <iosfwd>

namespace struve::cli {

inline constexpr int kExitOk = 0;
/// Domain error, failed check or I/O failure.
inline constexpr int kExitFailure = 1;
inline constexpr int kExitUsage = 2;

/// Entry point of the struve-verify command; writes results to `out` (unless
/// --out redirects them) and diagnostics to `err`.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace struve::cli
