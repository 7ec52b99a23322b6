#include <iostream>

#include <CLI11.hpp>

#include "bav/cli.hpp"

int main(int argc, char** argv) {
    CLI::App app{"Power-law central-force duality toolkit"};
    app.require_subcommand(1);

    bav::cli::SimulateArgs sim;
    auto* simulate = app.add_subcommand("simulate", "integrate a trajectory from a JSON config");
    simulate->add_option("--config", sim.config, "run configuration (JSON)")->required();
    simulate->add_option("--out", sim.out, "trajectory CSV (overrides outputs.trajectory)");

    bav::cli::DualizeArgs dua;
    auto* dualize = app.add_subcommand("dualize", "map a trajectory onto its dual motion");
    dualize->add_option("--in", dua.in, "source trajectory CSV")->required();
    dualize->add_option("--out", dua.out, "dual trajectory CSV")->required();
    dualize->add_option("--params", dua.params, "JSON parameter overrides");

    bav::cli::VerifyArgs ver;
    auto* verify = app.add_subcommand("verify", "check a trajectory against its dual");
    verify->add_option("--original", ver.original, "source trajectory CSV")->required();
    verify->add_option("--dual", ver.dual, "dual trajectory CSV")->required();
    verify->add_option("--report", ver.report, "JSON report output")->required();

    bav::cli::DemoArgs demo;
    auto* demo_cmd = app.add_subcommand("demo", "run the oscillator/Kepler showcase");
    demo_cmd->add_option("scenario", demo.scenario, "scenario name")->default_val("hooke-kepler");
    demo_cmd->add_option("--nu", demo.nu, "source exponent")->default_val(2.0);
    demo_cmd->add_option("--e", demo.eccentricity, "dual eccentricity (0 = circular)")->default_val(0.6);
    demo_cmd->add_option("--out-dir", demo.out_dir, "output directory")->default_val(".");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int rc = app.exit(e);
        return rc == 0 ? 0 : bav::cli::kInputError;
    }

    if (*simulate) return bav::cli::run_simulate(sim, std::cout, std::cerr);
    if (*dualize) return bav::cli::run_dualize(dua, std::cout, std::cerr);
    if (*verify) return bav::cli::run_verify(ver, std::cout, std::cerr);
    return bav::cli::run_demo(demo, std::cout, std::cerr);
}
