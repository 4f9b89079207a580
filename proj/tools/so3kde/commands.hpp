#pragma once

#include <filesystem>
#include <iosfwd>
#include <string>

#include "config.hpp"

namespace so3kde::app {

enum ExitCode : int { kSuccess = 0, kValidationFailure = 1, kUsageError = 2 };

struct CommandOptions {
  bool svg = false;
  bool via_quadrature = false;
  std::filesystem::path input;  // estimate: overrides [estimate] input
  std::string perturb;          // selfcheck test hook
};

// Each command writes its CSV files under cfg.output and a short log to `log`.
// UsageError propagates; a failed validation returns kValidationFailure.
int cmd_profiles(const ExperimentConfig& cfg, const CommandOptions& opt, std::ostream& log);
int cmd_mise(const ExperimentConfig& cfg, const CommandOptions& opt, std::ostream& log);
int cmd_mc_validate(const ExperimentConfig& cfg, const CommandOptions& opt, std::ostream& log);
int cmd_sample(const ExperimentConfig& cfg, const CommandOptions& opt, std::ostream& log);
int cmd_estimate(const ExperimentConfig& cfg, const CommandOptions& opt, std::ostream& log);
int cmd_selfcheck(const ExperimentConfig& cfg, const CommandOptions& opt, std::ostream& log);

}  // namespace so3kde::app
