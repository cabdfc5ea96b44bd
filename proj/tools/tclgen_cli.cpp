// tclgen_cli.cpp: Command-line scenario runner

#include <iostream>

#include "CLI11.hpp"

#include "tclgen/scenario.hpp"

int main(int argc, char** argv)
{
    CLI::App app{"tclgen: local-in-time generators of open quantum dynamics"};
    app.require_subcommand(1);

    tclgen::scenario::RunOptions opts;
    auto* run = app.add_subcommand("run", "Execute the tasks of a scenario config");
    run->add_option("config", opts.config_path, "Scenario config (JSON)")->required()->check(CLI::ExistingFile);
    run->add_option("--out-dir", opts.out_dir, "Output directory (overrides output.path)");
    run->add_option("--tol-override", opts.tol_overrides, "Tolerance override key=value (repeatable)");
    run->add_flag("--quiet", opts.quiet, "Suppress the summary table");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : tclgen::scenario::kValidationError;
    }
    return tclgen::scenario::run(opts, std::cout, std::cerr);
}
