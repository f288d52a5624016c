// Command-line front end: load a scenario directory, co-optimize investment
// and operation, re-dispatch for nodal prices and write the report tables.
#include <cstdio>
#include <exception>
#include <optional>
#include <string>

#include "CLI11.hpp"
#include "gep/report.hpp"

int main(int argc, char** argv) {
    CLI::App app{"generation expansion planning with unit commitment, reserves and a DC network"};

    std::string scenario_dir;
    std::string out_dir = "results";
    std::string compression;
    std::string mps_path;
    std::optional<double> res_target_twh;
    gep::solver::SolveOptions options;

    app.add_option("--scenario", scenario_dir, "scenario directory")->required();
    app.add_option("--out", out_dir, "output directory for result tables");
    app.add_option("--compression", compression,
                   "override the manifest: full | every-other-day")
        ->check(CLI::IsMember({"full", "every-other-day"}));
    app.add_option("--res-target", res_target_twh,
                   "override the annual RES production target [TWh]");
    app.add_option("--emit-mps", mps_path, "also write the assembled model in MPS format");
    app.add_option("--mip-gap", options.mip_gap, "relative MILP gap");
    app.add_option("--time-limit", options.time_limit_seconds, "wall-clock limit [s]");

    CLI11_PARSE(app, argc, argv);

    try {
        auto scenario = gep::io::load_scenario(scenario_dir);
        if (!compression.empty())
            scenario.config.compression = compression == "full"
                                              ? gep::domain::Compression::FullYear
                                              : gep::domain::Compression::EveryOtherDay;
        if (res_target_twh) scenario.config.res_target_energy = *res_target_twh * 1e6;

        const auto report = gep::domain::validate_system(scenario.system, scenario.config);
        if (!report.ok()) {
            for (const auto& v : report.violations)
                std::fprintf(stderr, "invalid: %s: %s\n", v.entity.c_str(), v.detail.c_str());
            return 4;
        }

        auto run = gep::report::run_scenario(scenario, options);
        if (!mps_path.empty()) gep::milp::write_mps_file(run.assembled.model, mps_path);
        gep::report::save_results(out_dir, scenario, run);

        std::printf("scenario      %s\n", scenario.name.c_str());
        std::printf("horizon       %d simulated hours (cost scale %g)\n",
                    run.grid.simulated_hours, run.grid.cost_scale);
        std::printf("model         %zu vars / %zu rows / %zu binaries\n",
                    run.assembled.model.num_variables(), run.assembled.model.num_constraints(),
                    run.assembled.model.num_binaries());
        if (run.mip.status == gep::milp::SolveStatus::Optimal || run.mip.has_incumbent)
            std::printf("objective     %.6f\n", run.mip.objective);
        else
            std::printf("objective     n/a (no feasible point found)\n");
        std::printf("results in    %s\n", out_dir.c_str());

        switch (run.mip.status) {
            case gep::milp::SolveStatus::Optimal: return 0;
            case gep::milp::SolveStatus::Infeasible: return 2;
            case gep::milp::SolveStatus::LimitReached:
                std::fprintf(stderr, "stopped at the node/time limit%s\n",
                             run.mip.has_incumbent ? ", best incumbent reported" : "");
                return 3;
            default:
                std::fprintf(stderr, "solve failed (%d)\n", static_cast<int>(run.mip.status));
                return 1;
        }
    } catch (const std::exception& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 4;
    }
}
