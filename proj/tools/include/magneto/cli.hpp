#pragma once

#include <cstdint>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

namespace magneto::cli {

enum class ExitCode : int { kOk = 0, kError = 1, kViolation = 2 };

struct Environment {
  // Overrides every enumeration budget (MAGNETO_BUDGET).
  std::optional<std::int64_t> budget;
};

// Reads MAGNETO_BUDGET; malformed values are ignored.
Environment environment_from_process();

// Runs one command. `args` excludes the program name. Exactly one JSON line
// is written to `out`; a short human-readable summary goes to `err`.
ExitCode run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err,
             const Environment& env = {});

}  // namespace magneto::cli
