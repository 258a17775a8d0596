#pragma once

#include "openlimit/config.hpp"

#include <json.hpp>

#include <iosfwd>
#include <string>
#include <vector>

namespace openlimit {

inline constexpr int kExitOk = 0;
inline constexpr int kExitConfig = 2;
inline constexpr int kExitNumerical = 3;

const std::vector<std::string>& command_names();

/**
 * Runs one subcommand and writes its files under cfg.output_dir. Quantities that depend on
 * the matrix size go into n_<n>/ subdirectories; the summary JSON sits at the top level and
 * is also returned. Errors propagate as exceptions; map them with exit_code_for.
 */
nlohmann::json run_command(const std::string& command, const ExperimentConfig& cfg, std::ostream& log);

// 2 for configuration errors, 3 for everything raised by the numerics.
int exit_code_for(const std::exception& e);

}  // namespace openlimit
