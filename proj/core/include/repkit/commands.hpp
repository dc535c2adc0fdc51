#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace repkit {

struct CommandOptions {
  std::uint64_t seed = 42;
  int samples = 10000;
  std::optional<double> tolerance;  // overrides the per-command default
  int max_n = 64;
};

struct CommandOutcome {
  int exit_code = 0;          // 0 pass, 1 check failed, 2 input error
  std::string report;         // single document on stdout (empty on input error)
  std::string diagnostics;    // human-readable, stderr only
};

// Dispatches one named command over already-read input documents.
CommandOutcome run_command(const std::string& name, const std::vector<std::string>& inputs,
                           const CommandOptions& opts);

// The command names accepted by run_command.
const std::vector<std::string>& command_names();

}  // namespace repkit
