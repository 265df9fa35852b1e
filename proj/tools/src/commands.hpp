#pragma once

#include <filesystem>
#include <ostream>
#include <string>

#include "config.hpp"

namespace fdw::cli {

/// Exit statuses of the tool.
inline constexpr int kExitOk = 0;
inline constexpr int kExitFailedVerdict = 1;
inline constexpr int kExitInvalidConfig = 2;

/// One-line summary and longer statement of each experiment kind.
std::string summary(const std::string& kind);
std::string statement(const std::string& kind);

/// Output directory of a resolved configuration.
std::filesystem::path output_dir(const ExperimentConfig& config);

/// Runs a validated configuration and writes its artifact directory
/// (except for "norms", which prints one number).  Returns kExitOk or
/// kExitFailedVerdict; configuration problems throw ConfigError.
int run_experiment(const ExperimentConfig& config, bool force, std::ostream& out, std::ostream& err);

}  // namespace fdw::cli
