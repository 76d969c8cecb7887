#include "forge/inb.hpp"

#include <algorithm>
#include <cmath>

#include "solver_engine.hpp"

namespace forge {

double forcing_term(const std::optional<ForcingState>& state, double current_norm,
                    double eta0, double beta) {
    if (!state || current_norm >= beta) return eta0;
    if (state->previous_residual_norm == 0.0) return eta0;
    const double raw = std::abs(current_norm - state->previous_linear_model_norm) /
                       state->previous_residual_norm;
    return std::clamp(raw, 1e-8, 0.9);
}

LineSearchResult armijo_backtracking(const std::function<double(const Vector&)>& merit,
                                     const Vector& x, const Vector& direction,
                                     double merit_at_x, double directional_term,
                                     const SolverOptions& options) {
    double lambda = 1.0;
    for (int trial = 0; trial < options.g_max; ++trial) {
        const double m = merit(x + lambda * direction);
        const double bound = merit_at_x + options.armijo_alpha * lambda * directional_term;
        if (m <= bound) return {lambda, trial, true};
        if (trial + 1 < options.g_max) lambda *= options.backtrack_rho;
    }
    return {lambda, options.g_max, false};
}

SolveReport inb_solve(const NonlinearSystem& system, const Vector& x0,
                      const SolverOptions& options) {
    return detail::newton_backtracking_solve(system, x0, options, false, "inb");
}

}  // namespace forge
