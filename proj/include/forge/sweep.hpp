#pragma once

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "forge/core.hpp"
#include "forge/pinl.hpp"
#include "forge/problems.hpp"

namespace forge {

/// One (problem, solver, options) triple. `option_overrides` holds only the
/// keys the caller set; everything else comes from the problem's
/// recommended settings.
struct RunSpec {
    std::string problem;
    std::string solver;  // inb | ardn | pinl
    InnerSolver inner = InnerSolver::Inb;
    problems::ProblemParams params;
    nlohmann::json option_overrides = nlohmann::json::object();
};

/// Applies recognized option keys (gmax, alpha_star, sigma1, sigma2, delta,
/// weight_strategy, train_size, components, subspace_rtol, inner, atol,
/// rtol, max_iters, stagnation_tau, restart, eta0, beta, armijo_alpha, rho,
/// gmres_max_iters, freeze_weights). Throws std::invalid_argument on an
/// unknown key or a malformed value.
[[nodiscard]] SolverOptions apply_option_overrides(SolverOptions base,
                                                   const nlohmann::json& overrides);

/// Parses a manifest row ({"problem": ..., "solver": ..., "size": ...,
/// "c": ..., "grid": ..., <option keys>}).
[[nodiscard]] RunSpec parse_run_spec(const nlohmann::json& row);

/// Executes one triple; exceptions propagate to the caller.
[[nodiscard]] SolveReport execute_run(const RunSpec& spec);

struct ManifestRow {
    std::optional<RunSpec> spec;
    std::string parse_error;
};

/// One JSON object per nonempty line; malformed lines become rows carrying a
/// parse error.
[[nodiscard]] std::vector<ManifestRow> parse_manifest(std::istream& is);

struct RowOutcome {
    std::string problem;
    std::string solver;
    std::string params;  // deterministic `key=value;...` rendering
    std::optional<SolveReport> report;
    std::string error;
};

struct SweepResult {
    std::vector<RowOutcome> rows;
    [[nodiscard]] bool any_error() const;
};

/// Runs every row (concurrently up to `jobs`); output order always matches
/// manifest order. Row failures are recorded in the row, never thrown.
[[nodiscard]] SweepResult run_sweep(const std::vector<ManifestRow>& rows, int jobs);

/// Aggregate CSV: `problem,params,solver,n_ite,wall_time_seconds,n_sta,
/// converged,error`.
void write_sweep_csv(std::ostream& os, const SweepResult& result);

}  // namespace forge
