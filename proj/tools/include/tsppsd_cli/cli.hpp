#pragma once

#include <iosfwd>

namespace tsppsd::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitFailure = 1;  // verification failed, or NOT_PSD under --assert-psd
inline constexpr int kExitUsage = 2;
inline constexpr int kExitResource = 3;

/// Entry point behind the tsppsd executable. `--out -` (the default) writes to `out`;
/// diagnostics and usage text go to `err`.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace tsppsd::cli
