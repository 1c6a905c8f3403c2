#pragma once

#include "nba/project.hpp"

#include <iosfwd>
#include <string>
#include <vector>

namespace nba {

// Exit codes, stable across commands:
//   0  clean / all PASS / fact traced
//   1  blocking findings or at least one FAIL verdict
//   2  parse error, config error or structural error in an input file
//   3  unknown scenario id
//   4  fact not present in the scenario's fixpoint (trace)
inline constexpr int kExitOk = 0;
inline constexpr int kExitFindings = 1;
inline constexpr int kExitParse = 2;
inline constexpr int kExitUnknownScenario = 3;
inline constexpr int kExitFactNotDerivable = 4;

int cmd_check(const ProjectConfig& config, std::ostream& out, std::ostream& err);
int cmd_lint(const ProjectConfig& config, std::ostream& out, std::ostream& err);
int cmd_infer(const ProjectConfig& config, const std::string& scenario_id, bool all_traces,
              std::ostream& out, std::ostream& err);
int cmd_verify(const ProjectConfig& config, std::ostream& out, std::ostream& err);
int cmd_trace(const ProjectConfig& config, const std::string& scenario_id,
              const std::string& fact_text, std::ostream& out, std::ostream& err);

// Full argv front end (everything after the program name); returns the
// process exit code.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

} // namespace nba
