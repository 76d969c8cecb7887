#include "forge/sweep.hpp"

#include <atomic>
#include <istream>
#include <ostream>
#include <sstream>
#include <thread>

#include "forge/ardn.hpp"
#include "forge/inb.hpp"
#include "forge/log.hpp"

namespace forge {

namespace {

void apply_one(SolverOptions& opt, const std::string& key, const nlohmann::json& value) {
    if (key == "gmax") opt.g_max = value.get<int>();
    else if (key == "alpha_star") opt.initial_learning_rate = value.get<double>();
    else if (key == "sigma1") opt.sigma1 = value.get<double>();
    else if (key == "sigma2") opt.sigma2 = value.get<double>();
    else if (key == "delta") opt.base_decay = value.get<double>();
    else if (key == "weight_strategy")
        opt.weight_strategy = weight_strategy_from_string(value.get<std::string>());
    else if (key == "train_size") opt.pinl_training_size = value.get<int>();
    else if (key == "components") opt.pinl_components = value.get<int>();
    else if (key == "subspace_rtol") opt.pinl_subspace_rel_tol = value.get<double>();
    else if (key == "subspace_max_iters") opt.pinl_subspace_max_iters = value.get<int>();
    else if (key == "atol") opt.abs_tol = value.get<double>();
    else if (key == "rtol") opt.rel_tol = value.get<double>();
    else if (key == "max_iters") opt.max_newton_iters = value.get<int>();
    else if (key == "stagnation_tau") opt.stagnation_tau = value.get<double>();
    else if (key == "restart") opt.gmres_restart = value.get<int>();
    else if (key == "eta0") opt.eta0 = value.get<double>();
    else if (key == "beta") opt.beta = value.get<double>();
    else if (key == "armijo_alpha") opt.armijo_alpha = value.get<double>();
    else if (key == "rho") opt.backtrack_rho = value.get<double>();
    else if (key == "gmres_max_iters") opt.gmres_max_iters = value.get<int>();
    else if (key == "freeze_weights") opt.freeze_weights = value.get<bool>();
    else throw std::invalid_argument("unknown option key '" + key + "'");
}

std::string render_params(const RunSpec& spec) {
    // nlohmann::json objects iterate in key order, so this is deterministic.
    nlohmann::json all = spec.option_overrides;
    if (spec.params.size) all["size"] = *spec.params.size;
    if (spec.params.c) all["c"] = *spec.params.c;
    if (spec.params.grid) all["grid"] = *spec.params.grid;
    if (spec.solver == "pinl") all["inner"] = to_string(spec.inner);

    std::ostringstream os;
    bool first = true;
    for (const auto& [key, value] : all.items()) {
        if (!first) os << ';';
        first = false;
        os << key << '=';
        if (value.is_string()) os << value.get<std::string>();
        else os << value.dump();
    }
    return os.str();
}

}  // namespace

SolverOptions apply_option_overrides(SolverOptions base, const nlohmann::json& overrides) {
    for (const auto& [key, value] : overrides.items()) apply_one(base, key, value);
    return base;
}

RunSpec parse_run_spec(const nlohmann::json& row) {
    if (!row.is_object()) throw std::invalid_argument("manifest row must be a JSON object");

    RunSpec spec;
    for (const auto& [key, value] : row.items()) {
        if (key == "problem") spec.problem = value.get<std::string>();
        else if (key == "solver") spec.solver = value.get<std::string>();
        else if (key == "inner")
            spec.inner = inner_solver_from_string(value.get<std::string>());
        else if (key == "size") spec.params.size = value.get<int>();
        else if (key == "c") spec.params.c = value.get<double>();
        else if (key == "grid") spec.params.grid = value.get<int>();
        else spec.option_overrides[key] = value;
    }
    if (spec.problem.empty()) throw std::invalid_argument("manifest row lacks 'problem'");
    if (spec.solver.empty()) throw std::invalid_argument("manifest row lacks 'solver'");
    if (spec.solver != "inb" && spec.solver != "ardn" && spec.solver != "pinl")
        throw std::invalid_argument("unknown solver '" + spec.solver +
                                    "' (expected inb | ardn | pinl)");
    // Validate option keys and values eagerly so bad rows fail before running.
    (void)apply_option_overrides(SolverOptions{}, spec.option_overrides);
    return spec;
}

SolveReport execute_run(const RunSpec& spec) {
    problems::BenchmarkSpec bench = problems::make_problem(spec.problem, spec.params);
    const SolverOptions options =
        apply_option_overrides(bench.recommended, spec.option_overrides);
    options.validate();

    if (spec.solver == "inb") return inb_solve(bench.system, bench.initial_guess, options);
    if (spec.solver == "ardn")
        return ardn_solve(bench.system, bench.initial_guess, options);
    if (spec.solver == "pinl")
        return pinl_solve(bench.system, bench.initial_guess, options, spec.inner);
    throw std::invalid_argument("unknown solver '" + spec.solver + "'");
}

std::vector<ManifestRow> parse_manifest(std::istream& is) {
    std::vector<ManifestRow> rows;
    std::string line;
    while (std::getline(is, line)) {
        if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
        ManifestRow row;
        try {
            row.spec = parse_run_spec(nlohmann::json::parse(line));
        } catch (const std::exception& e) {
            row.parse_error = e.what();
        }
        rows.push_back(std::move(row));
    }
    return rows;
}

bool SweepResult::any_error() const {
    for (const RowOutcome& row : rows)
        if (!row.error.empty()) return true;
    return false;
}

SweepResult run_sweep(const std::vector<ManifestRow>& rows, int jobs) {
    SweepResult result;
    result.rows.resize(rows.size());

    auto run_one = [&](size_t i) {
        RowOutcome& out = result.rows[i];
        const ManifestRow& row = rows[i];
        if (!row.spec) {
            out.problem = "?";
            out.solver = "?";
            out.error = row.parse_error;
            return;
        }
        out.problem = row.spec->problem;
        out.solver = row.spec->solver;
        out.params = render_params(*row.spec);
        try {
            SolveReport report = execute_run(*row.spec);
            if (!report.failure_reason.empty()) out.error = report.failure_reason;
            out.report = std::move(report);
        } catch (const std::exception& e) {
            out.error = e.what();
        }
    };

    const int workers = std::max(1, jobs);
    if (workers == 1 || rows.size() <= 1) {
        for (size_t i = 0; i < rows.size(); ++i) run_one(i);
    } else {
        std::atomic<size_t> next{0};
        std::vector<std::thread> pool;
        const size_t count = std::min(static_cast<size_t>(workers), rows.size());
        pool.reserve(count);
        for (size_t t = 0; t < count; ++t)
            pool.emplace_back([&] {
                for (size_t i = next.fetch_add(1); i < rows.size(); i = next.fetch_add(1))
                    run_one(i);
            });
        for (std::thread& t : pool) t.join();
    }
    return result;
}

void write_sweep_csv(std::ostream& os, const SweepResult& result) {
    os << "problem,params,solver,n_ite,wall_time_seconds,n_sta,converged,error\n";
    for (const RowOutcome& row : result.rows) {
        os << row.problem << ',' << row.params << ',' << row.solver << ',';
        if (row.report) {
            char t[32];
            std::snprintf(t, sizeof(t), "%.4f", row.report->wall_time_seconds);
            os << row.report->n_ite << ',' << t << ',' << row.report->n_sta << ','
               << (row.report->converged ? "true" : "false") << ',';
        } else {
            os << ",,,,";
        }
        // Commas inside error text would break the column layout.
        std::string err = row.error;
        for (char& ch : err)
            if (ch == ',' || ch == '\n') ch = ';';
        os << err << '\n';
    }
    os.flush();
}

}  // namespace forge
