#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace bbmis::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitError = 1;
inline constexpr int kExitResourceCap = 2;

/// Runs one subcommand. `args` excludes the program name. The primary
/// result goes to `out` (or to --out), diagnostics and usage to `err`.
int dispatch(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace bbmis::cli
