#pragma once

#include "manicheck/pipeline/config.hpp"

#include <iosfwd>
#include <string>
#include <vector>

namespace manicheck::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitFailure = 1;
inline constexpr int kExitUsage = 2;

// The manicheck command line. `args` excludes the program name. Results go
// to `out`; errors, warnings and usage text to `err`. Returns the exit
// status: 0 success, 1 operational error, 2 usage error.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err,
            const pipeline::Settings::EnvLookup& env = nullptr);

}  // namespace manicheck::cli
