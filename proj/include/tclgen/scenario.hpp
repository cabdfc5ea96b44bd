// scenario.hpp: Scenario runner behind the tclgen CLI

#pragma once

#include <iosfwd>
#include <string>
#include <variant>
#include <vector>

#include "tclgen/config.hpp"

namespace tclgen::scenario {

using Cell = std::variant<double, std::string>;

struct Table {
    std::string task;
    std::vector<std::string> columns;
    std::vector<std::vector<Cell>> rows;
    config::Json summary = config::Json::object();
};

/// CSV: one header row, doubles with 17 significant digits. JSON: a single
/// document {schema_version: "1", task, columns, rows, summary}. Throws
/// IoError when the path cannot be written.
void emit_table(const Table& table, config::OutputFormat format, const std::string& path);

/// Parses a table written by emit_table in JSON format.
Table read_json_table(const std::string& path);

enum ExitCode : int {
    kOk = 0,
    kValidationError = 1,
    kNumericalError = 2,
    kCertificationFailed = 3,
    kIoError = 4,
};

struct TaskOutcome {
    Table table;
    std::vector<Table> extra;  // additional tables written next to the main one
    bool certification_passed = true;
};

/// Executes one task of a validated scenario.
TaskOutcome run_task(const config::ScenarioConfig& cfg, const std::string& task);

struct RunOptions {
    std::string config_path;
    std::string out_dir;  // overrides output.path when non-empty
    std::vector<std::string> tol_overrides;  // "key=value"
    bool quiet = false;
};

/// Runs a scenario end to end, writing one file per task, and returns the
/// process exit code. Errors are reported on `err` as
/// "error[<category>]: <message>".
int run(const RunOptions& opts, std::ostream& out, std::ostream& err);

} // namespace tclgen::scenario
