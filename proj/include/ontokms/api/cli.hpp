#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace ontokms::api {

inline constexpr int kExitOk = 0;
inline constexpr int kExitDomainError = 1;
inline constexpr int kExitUsage = 2;

/// Runs the command line (`args[0]` is the program name). Every option can
/// also come from an `ONTOKMS_<NAME>` environment variable; flags win.
int run_cli(const std::vector<std::string>& args, std::istream& in, std::ostream& out,
            std::ostream& err);

}  // namespace ontokms::api
