#include <fstream>
#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "forge/log.hpp"
#include "forge/report_io.hpp"
#include "forge/sweep.hpp"

namespace {

int run_command(const forge::RunSpec& spec, const std::string& out_path) {
    forge::SolveReport report;
    try {
        report = forge::execute_run(spec);
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << "\n"
                  << "usage: newton-forge run --problem <id> --solver <inb|ardn|pinl> "
                     "[options]\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    }

    forge::write_report_files(report, out_path);
    std::cout << forge::summary_line(spec.problem, report) << '\n';
    if (!report.failure_reason.empty()) {
        std::cerr << "solver aborted: " << report.failure_reason << '\n';
        return 1;
    }
    return 0;
}

int sweep_command(const std::string& manifest_path, const std::string& out_path,
                  int jobs) {
    std::ifstream manifest(manifest_path);
    if (!manifest) {
        std::cerr << "error: cannot open manifest " << manifest_path << '\n';
        return 2;
    }
    const auto rows = forge::parse_manifest(manifest);
    const forge::SweepResult result = forge::run_sweep(rows, jobs);

    std::ofstream csv(out_path);
    if (!csv) {
        std::cerr << "error: cannot open output file " << out_path << '\n';
        return 2;
    }
    forge::write_sweep_csv(csv, result);

    if (forge::log_level() >= forge::LogLevel::Summary) {
        for (const forge::RowOutcome& row : result.rows) {
            if (row.report)
                std::cout << forge::summary_line(row.problem, *row.report) << '\n';
            if (!row.error.empty())
                std::cout << row.problem << ' ' << row.solver << " error: " << row.error
                          << '\n';
        }
    }
    return result.any_error() ? 1 : 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Inexact Newton / adaptive residual-driven solver benchmarks"};
    app.require_subcommand(1);

    forge::RunSpec spec;
    std::string out_path = "report.json";
    int size = 0;
    double c_param = 0.0;
    int grid = 0;
    std::string inner = "inb";
    int gmax = 0;
    double alpha_star = 0.0, sigma1 = 0.0, sigma2 = 0.0, delta = 0.0;
    std::string weight_strategy;
    int train_size = 0, components = 0;
    double subspace_rtol = 0.0, atol = 0.0, rtol = 0.0, stagnation_tau = 0.0;
    int max_iters = 0, restart = 0;

    CLI::App* run = app.add_subcommand("run", "solve one (problem, solver) pair");
    run->add_option("--problem", spec.problem, "problem id (chemical | convdiff | p1..p5)")
        ->required();
    run->add_option("--solver", spec.solver, "solver id (inb | ardn | pinl)")->required();
    run->add_option("--size", size, "system dimension for p1..p5");
    run->add_option("--c", c_param, "convection coefficient C (convdiff)");
    run->add_option("--grid", grid, "interior grid size per side (convdiff)");
    run->add_option("--inner", inner, "inner solver for pinl (inb | ardn)");
    run->add_option("--gmax", gmax, "max line-search iterations");
    run->add_option("--alpha-star", alpha_star, "initial learning rate");
    run->add_option("--sigma1", sigma1, "decay-factor Gaussian width");
    run->add_option("--sigma2", sigma2, "recognition-factor Gaussian width");
    run->add_option("--delta", delta, "base weight decay");
    run->add_option("--weight-strategy", weight_strategy,
                    "full | simplified1 | simplified2");
    run->add_option("--train-size", train_size, "PIN^L training samples s");
    run->add_option("--components", components, "PIN^L principal components d");
    run->add_option("--subspace-rtol", subspace_rtol, "PIN^L subspace relative tolerance");
    run->add_option("--atol", atol, "absolute residual tolerance");
    run->add_option("--rtol", rtol, "relative residual tolerance");
    run->add_option("--max-iters", max_iters, "max Newton iterations");
    run->add_option("--stagnation-tau", stagnation_tau, "stagnation threshold tau");
    run->add_option("--restart", restart, "GMRES restart length");
    run->add_option("--out", out_path, "report JSON path (history/plot CSV alongside)");

    std::string manifest_path;
    std::string sweep_out = "sweep_results.csv";
    int jobs = 1;
    CLI::App* sweep = app.add_subcommand("sweep", "run every row of a JSONL manifest");
    sweep->add_option("manifest", manifest_path, "manifest path (one JSON object per line)")
        ->required();
    sweep->add_option("--out", sweep_out, "aggregate CSV path");
    sweep->add_option("--jobs", jobs, "concurrent rows");

    CLI11_PARSE(app, argc, argv);

    if (run->parsed()) {
        auto& ov = spec.option_overrides;
        if (run->count("--size")) spec.params.size = size;
        if (run->count("--c")) spec.params.c = c_param;
        if (run->count("--grid")) spec.params.grid = grid;
        if (run->count("--inner")) {
            try {
                spec.inner = forge::inner_solver_from_string(inner);
            } catch (const std::exception& e) {
                std::cerr << "error: " << e.what() << '\n';
                return 2;
            }
        }
        if (run->count("--gmax")) ov["gmax"] = gmax;
        if (run->count("--alpha-star")) ov["alpha_star"] = alpha_star;
        if (run->count("--sigma1")) ov["sigma1"] = sigma1;
        if (run->count("--sigma2")) ov["sigma2"] = sigma2;
        if (run->count("--delta")) ov["delta"] = delta;
        if (run->count("--weight-strategy")) ov["weight_strategy"] = weight_strategy;
        if (run->count("--train-size")) ov["train_size"] = train_size;
        if (run->count("--components")) ov["components"] = components;
        if (run->count("--subspace-rtol")) ov["subspace_rtol"] = subspace_rtol;
        if (run->count("--atol")) ov["atol"] = atol;
        if (run->count("--rtol")) ov["rtol"] = rtol;
        if (run->count("--max-iters")) ov["max_iters"] = max_iters;
        if (run->count("--stagnation-tau")) ov["stagnation_tau"] = stagnation_tau;
        if (run->count("--restart")) ov["restart"] = restart;
        return run_command(spec, out_path);
    }
    return sweep_command(manifest_path, sweep_out, jobs);
}
