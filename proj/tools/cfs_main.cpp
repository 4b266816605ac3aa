// Batch front-end: reads a run configuration, applies flag overrides and
// executes one of the sweep/stability commands, writing CSV output.

#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "cfs/config.hpp"
#include "cfs/run.hpp"
#include "cfs/version.hpp"

namespace {

struct Overrides {
    std::string config_path;
    std::string output_path;
    std::string method;
    double rel_tol = 0.0;
    int threads = -1;
    bool strict = false;
};

void add_common_flags(CLI::App* cmd, Overrides& ov) {
    cmd->add_option("--config", ov.config_path, "Run configuration file");
    cmd->add_option("--output", ov.output_path, "Output CSV path (overrides config)");
    cmd->add_option("--method", ov.method, "retarded | smalld (overrides config)")
        ->check(CLI::IsMember({"retarded", "smalld"}));
    cmd->add_option("--rel-tol", ov.rel_tol, "Quadrature relative tolerance override");
    cmd->add_option("--threads", ov.threads, "Worker threads (0 = CFS_THREADS or 1)");
    cmd->add_flag("--strict", ov.strict, "Exit nonzero when any sample fails");
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"cfs: vacuum-fluctuation forces and thin metal film stability"};
    app.set_version_flag("--version", std::string("cfs ") + cfs::kVersion);
    app.require_subcommand(1);

    Overrides ov;
    cfs::Command selected = cfs::Command::stability_check;
    for (cfs::Command c :
         {cfs::Command::force_sweep, cfs::Command::thickness_scan, cfs::Command::stability_check,
          cfs::Command::critical_thickness, cfs::Command::stability_diagram,
          cfs::Command::elastic_report}) {
        CLI::App* sub = app.add_subcommand(cfs::command_name(c));
        add_common_flags(sub, ov);
        sub->callback([&selected, c] { selected = c; });
    }

    CLI11_PARSE(app, argc, argv);

    cfs::RunConfig cfg;
    try {
        if (!ov.config_path.empty()) cfg = cfs::parse_config_file(ov.config_path);
    } catch (const cfs::ConfigError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }

    cfg.command = selected;
    if (!ov.output_path.empty()) cfg.output_path = ov.output_path;
    if (!ov.method.empty())
        cfg.method =
            ov.method == "retarded" ? cfs::Method::full_retarded : cfs::Method::small_d;
    if (ov.rel_tol > 0.0) cfg.quad.rel_tol = ov.rel_tol;
    if (ov.threads >= 0) cfg.threads = ov.threads;
    if (ov.strict) cfg.strict = true;

    return cfs::run(cfg, std::cout, std::cerr);
}
