#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "alexlab/cli/config.hpp"
#include "alexlab/stability/sweep.hpp"
#include "json.hpp"

namespace alexlab::cli {

using nlohmann::json;

/// Command-line overrides applied on top of the config file.
struct Overrides {
  std::optional<std::string> out;
  std::optional<std::uint64_t> seed;
  std::optional<int> threads;
  bool svg = false;
  bool negative_control = false;
};

/// Config file (or defaults when the path is empty) with the overrides
/// applied. Threads come from --threads, then ALEXLAB_THREADS, then the file.
RunConfig resolve(const std::string& config_path, const Overrides& o);

stability::AnalysisOptions analysis_options(const RunConfig& cfg);

const std::vector<std::string>& report_columns();
std::string report_csv(const std::vector<stability::StabilityReport>& rows);
json report_json(const stability::StabilityReport& r);
json config_json(const RunConfig& c);

int cmd_analyze(const RunConfig& cfg);
int cmd_sweep(const RunConfig& cfg, const Overrides& o);
int cmd_check_props(const RunConfig& cfg, const Overrides& o);
int cmd_transport(const std::string& from, const std::string& to, const std::string& vec, int steps);

/// Entry point: 0 on success, 1 on engine failures or violations, 2 on
/// usage and configuration errors.
int run_cli(int argc, char** argv);

}  // namespace alexlab::cli
