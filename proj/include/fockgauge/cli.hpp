#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "fockgauge/states.hpp"

namespace fockgauge::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitViolation = 1;
inline constexpr int kExitUsage = 2;

struct Environment {
  std::size_t max_cutoff = kDefaultMaxCutoff;
};

// Reads FOCKGAUGE_MAX_CUTOFF (falls back to the default on absence).
Environment environment_from_process();

// Runs one invocation; `args` excludes the program name.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err,
        const Environment& env = {});

}  // namespace fockgauge::cli
