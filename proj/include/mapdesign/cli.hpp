#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace mapdesign {

inline constexpr int kExitOk = 0;
inline constexpr int kExitDiagnostics = 1;  // --strict with diagnostics, or a fatal runtime error
inline constexpr int kExitUsage = 2;

/// Entry point behind the `mapdesign` binary. `args` excludes argv[0].
int run_command(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace mapdesign
