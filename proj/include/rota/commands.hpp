#pragma once

#include <string>

#include "rota/json_io.hpp"

namespace rota {

/// Parsed command-line request. Exit statuses: 0 all checks pass, 1 a law
/// or mathematical property failed, 2 malformed or unusable input.
struct RunConfig {
    std::string command;  // check | urb-mul | urb-dim | split | birkhoff | demo
    std::string input_path;
    std::string output_path;  // empty = stdout
    int precision = 24;
    unsigned long long seed = 1;
    std::string demo_name;
};

struct CommandResult {
    json report;
    int exit_code = 0;
};

json cmd_check(const json& input, const RunConfig& config);
json cmd_urb_mul(const json& input, const RunConfig& config);
json cmd_urb_dim(const json& input, const RunConfig& config);
json cmd_split(const json& input, const RunConfig& config);
json cmd_birkhoff(const json& input, const RunConfig& config);
json cmd_demo(const RunConfig& config);

/// Dispatches, loads the input file when the command needs one, maps errors
/// onto the exit-status contract and renders the report.
CommandResult run_command(const RunConfig& config);

/// Canonical rendering written to the output path (two-space indent plus a
/// trailing newline), byte-identical for identical reports.
std::string render_report(const json& report);

}  // namespace rota
