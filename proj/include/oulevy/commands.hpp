#pragma once

#include <string>

#include <json.hpp>

#include "oulevy/config.hpp"

namespace oulevy {

// Orchestration behind the CLI subcommands.  Each run_* builds its report as
// JSON (embedding the resolved config and master seed); write_report adds the
// timestamp and writes atomically.  Exit codes: 0 ok, 2 config error,
// 3 precondition refusal, 4 self-check failure.
struct CommandOutcome {
    nlohmann::json report;
    int exit_code = 0;
    std::string summary;
};

CommandOutcome run_check(const ExperimentConfig& cfg);
CommandOutcome run_simulate(const ExperimentConfig& cfg, const std::string& out_dir);
CommandOutcome run_girsanov(const ExperimentConfig& cfg);
CommandOutcome run_rigidity(const ExperimentConfig& cfg);
CommandOutcome run_reproduce(const std::string& example_id);

void write_report(const nlohmann::json& report, const std::string& out_dir,
                  const std::string& command, bool with_timestamp = true);

}  // namespace oulevy
