#include "solver_engine.hpp"

#include <chrono>
#include <cmath>
#include <limits>
#include <string>

#include "forge/ardn.hpp"
#include "forge/inb.hpp"
#include "forge/jacobian.hpp"
#include "forge/linalg.hpp"
#include "forge/log.hpp"

namespace forge::detail {

namespace {

Vector resolve_initial_weights(const SolverOptions& options, Index n) {
    if (options.initial_weights.size() == 0) return Vector::Ones(n);
    if (options.initial_weights.size() != n)
        throw std::invalid_argument("initial_weights length does not match system dimension");
    return options.initial_weights;
}

double seconds_since(std::chrono::steady_clock::time_point t0) {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

}  // namespace

SolveReport newton_backtracking_solve(const NonlinearSystem& system, const Vector& x0,
                                      const SolverOptions& options, bool adaptive_weights,
                                      const char* solver_name,
                                      std::vector<Vector>* iterate_log,
                                      std::vector<Vector>* residual_log) {
    options.validate();
    if (x0.size() != system.dimension)
        throw std::invalid_argument("initial guess length does not match system dimension");

    const auto t0 = std::chrono::steady_clock::now();

    SolveReport report;
    report.solver = solver_name;

    auto finish = [&](Vector x, double final_norm) -> SolveReport& {
        report.final_point = std::move(x);
        report.final_residual_norm = final_norm;
        report.n_ite = static_cast<int>(report.history.size());
        report.n_sta = report.recount_stagnant();
        report.wall_time_seconds = seconds_since(t0);
        return report;
    };

    Vector x = x0;
    Vector fx = system.residual(x);
    if (!fx.allFinite()) {
        report.failure_reason = "non-finite residual at the initial guess";
        return finish(std::move(x), std::numeric_limits<double>::quiet_NaN());
    }

    const double norm0 = fx.norm();
    report.initial_residual_norm = norm0;
    const double beta = options.beta.value_or(0.1 * norm0);

    WeightVector w{resolve_initial_weights(options, system.dimension)};
    const bool update_weights_enabled = adaptive_weights && !options.freeze_weights;

    if (iterate_log) iterate_log->push_back(x);
    if (residual_log) residual_log->push_back(fx);

    std::optional<ForcingState> forcing_state;
    double norm_curr = norm0;
    double norm_prev = norm0;  // meaningful from k >= 1 on
    int g_prev = 0;
    bool did_first_update = false;

    for (int k = 0;; ++k) {
        if (stopping_satisfied(norm_curr, norm0, options)) {
            report.converged = true;
            break;
        }
        if (k >= options.max_newton_iters) break;

        const double eta = forcing_term(forcing_state, norm_curr, options.eta0, beta);

        if (update_weights_enabled && k >= 1) {
            const double ratio = norm_curr / norm_prev;
            double d1 = options.base_decay;
            double d2 = 0.0;
            double alpha_k;
            if (options.weight_strategy == WeightStrategy::Full) {
                std::tie(d1, d2) = decay_factors(ratio, options);
                alpha_k = did_first_update ? learning_rate(g_prev, options)
                                           : options.initial_learning_rate;
            } else if (options.weight_strategy == WeightStrategy::SimplifiedI) {
                alpha_k = options.initial_learning_rate;
            } else {
                alpha_k = did_first_update ? learning_rate(g_prev, options)
                                           : options.initial_learning_rate;
            }
            w = update_weights(w, fx, d1, d2, alpha_k, options.weight_strategy);
            did_first_update = true;
        }

        GmresResult gm;
        Vector js;
        try {
            Linearization lin(system, x, fx);
            std::optional<LinearOperator> precond;
            if (system.preconditioner)
                precond = LinearOperator{system.dimension, system.preconditioner(x)};
            gm = gmres(lin.as_operator(), -fx, eta, options.gmres_restart,
                       options.gmres_max_iters, precond);
            js = lin.apply(gm.solution);
        } catch (const EvaluationError& e) {
            report.failure_reason = e.what();
            return finish(std::move(x), norm_curr);
        }
        const Vector& step = gm.solution;
        const double model_norm = (js + fx).norm();
        const double dt = weighted_directional_term(w, fx, js);
        const double merit0 = weighted_merit(w, fx);

        // Cache the residual of each line-search trial; the last evaluation
        // always corresponds to the step the search returns.
        Vector trial_fx;
        bool trial_valid = false;
        double trial_merit = std::numeric_limits<double>::infinity();
        auto merit_fn = [&](const Vector& p) -> double {
            trial_valid = false;
            Vector fp = system.residual(p);
            if (!fp.allFinite()) return std::numeric_limits<double>::infinity();
            const double m = weighted_merit(w, fp);
            if (!std::isfinite(m)) return std::numeric_limits<double>::infinity();
            trial_fx = std::move(fp);
            trial_valid = true;
            trial_merit = m;
            return m;
        };

        const LineSearchResult ls =
            armijo_backtracking(merit_fn, x, step, merit0, dt, options);

        if (!trial_valid) {
            report.failure_reason =
                "non-finite residual along the search direction at iteration " +
                std::to_string(k);
            return finish(std::move(x), norm_curr);
        }

        x += ls.step_length * step;
        fx = std::move(trial_fx);
        const double norm_new = fx.norm();

        IterationRecord rec;
        rec.index = k + 1;
        rec.residual_norm = norm_new;
        rec.step_length = ls.step_length;
        rec.line_search_count = ls.trials_rejected;
        rec.forcing_term = eta;
        rec.stagnant = is_stagnant(norm_new, norm_curr, options.stagnation_tau);
        rec.armijo_satisfied = ls.satisfied;
        rec.merit_before = merit0;
        rec.merit_after = trial_merit;
        rec.directional_term = dt;
        rec.linear_model_norm = model_norm;
        rec.gmres_achieved_rel = gm.achieved_relative_residual;
        rec.gmres_iterations = gm.iterations;
        if (adaptive_weights) {
            rec.weight_min = w.values.minCoeff();
            rec.weight_max = w.values.maxCoeff();
        }
        report.history.push_back(rec);

        trace("[%s] k=%d |F|=%.6e eta=%.3e lambda=%.4e g=%d%s", solver_name, k + 1,
              norm_new, eta, ls.step_length, ls.trials_rejected,
              rec.stagnant ? " stagnant" : "");

        if (iterate_log) iterate_log->push_back(x);
        if (residual_log) residual_log->push_back(fx);

        forcing_state = ForcingState{norm_curr, model_norm};
        g_prev = ls.trials_rejected;
        norm_prev = norm_curr;
        norm_curr = norm_new;
    }

    return finish(std::move(x), norm_curr);
}

}  // namespace forge::detail
