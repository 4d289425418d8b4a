#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace hsgen::cli {

// Process exit codes.
inline constexpr int kExitOk = 0;
inline constexpr int kExitFailure = 1;    // runtime error or tolerance miss
inline constexpr int kExitUsage = 2;      // bad flags, unknown preset, size guard
inline constexpr int kExitInvariant = 3;  // instance data violates its invariants

/// Entry point shared by the executable and the tests. `args` excludes the
/// program name, e.g. {"flops", "--preset", "NaCl", "--kmax", "4.0"}.
int run_cli(std::vector<std::string> args, std::ostream& out, std::ostream& err);

}  // namespace hsgen::cli
