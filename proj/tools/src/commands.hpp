#pragma once

#include <map>
#include <string>

#include "config.hpp"
#include "json.hpp"

namespace slowlight::app {

struct CommandOutput {
  // File name (relative to the output directory) → contents.
  std::map<std::string, std::string> files;
  nlohmann::json summary = nlohmann::json::object();
};

struct CommandOptions {
  bool force_taper = false;
};

CommandOutput run_analytic(const SimulationConfig& config);
CommandOutput run_kk(const SimulationConfig& config, const CommandOptions& options = {});
CommandOutput run_propagate(const SimulationConfig& config);
CommandOutput run_sweep(const SimulationConfig& config);
CommandOutput run_xcorr(const SimulationConfig& config);

// Writes every file plus summary.json. Each file goes to a temporary name
// first and is renamed into place once complete.
void write_outputs(const CommandOutput& output, const std::string& out_dir);

}  // namespace slowlight::app
