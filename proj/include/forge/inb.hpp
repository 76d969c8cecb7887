#pragma once

#include <functional>
#include <optional>

#include "forge/core.hpp"

namespace forge {

/// Carry-over from the previous Newton iteration for the Eisenstat-Walker
/// forcing-term rule: ||F(X^{k-1})|| and ||F'(X^{k-1})S^{k-1} + F(X^{k-1})||.
struct ForcingState {
    double previous_residual_norm = 0.0;
    double previous_linear_model_norm = 0.0;
};

/// Eisenstat-Walker forcing term: eta0 above the beta threshold or before the
/// first step, otherwise the observed-versus-predicted ratio clamped into
/// [1e-8, 0.9].
[[nodiscard]] double forcing_term(const std::optional<ForcingState>& state,
                                  double current_norm, double eta0, double beta);

struct LineSearchResult {
    double step_length = 1.0;
    int trials_rejected = 0;
    bool satisfied = false;
};

/// Backtracking line search on the Armijo sufficient-decrease test, starting
/// from a unit trial step. A non-finite merit counts as a rejected trial.
/// When every trial fails the smallest step evaluated is returned with
/// satisfied = false and trials_rejected = g_max.
[[nodiscard]] LineSearchResult armijo_backtracking(
    const std::function<double(const Vector&)>& merit, const Vector& x,
    const Vector& direction, double merit_at_x, double directional_term,
    const SolverOptions& options);

/// The inexact Newton method with backtracking: GMRES at the forcing-term
/// level, Armijo line search on f = ||F||^2 / 2, stagnation bookkeeping.
[[nodiscard]] SolveReport inb_solve(const NonlinearSystem& system, const Vector& x0,
                                    const SolverOptions& options);

}  // namespace forge
