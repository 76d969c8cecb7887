#pragma once

#include <utility>

#include "forge/core.hpp"

namespace forge {

/// One multiplier per residual component; entries stay nonnegative under
/// every update strategy.
struct WeightVector {
    Vector values;
};

/// Gaussian decay and recognition factors for the full update rule, driven
/// by the residual-norm ratio of consecutive iterations.
[[nodiscard]] std::pair<double, double> decay_factors(double ratio,
                                                      const SolverOptions& options);

/// Learning rate scaled by the previous iteration's line-search count.
[[nodiscard]] double learning_rate(int g_prev, const SolverOptions& options);

/// Applies the selected update rule. `delta1` is the effective decay (the
/// Gaussian-modulated factor for the full strategy, the plain base decay for
/// the simplified ones), `delta2` the recognition factor (full strategy
/// only), `alpha_k` the learning rate for this update. A zero residual
/// leaves the weights unchanged.
[[nodiscard]] WeightVector update_weights(const WeightVector& w, const Vector& residual,
                                          double delta1, double delta2, double alpha_k,
                                          WeightStrategy strategy);

/// Weighted merit ||w . F||^2 / 2.
[[nodiscard]] double weighted_merit(const WeightVector& w, const Vector& fx);

/// Directional derivative of the weighted merit along S, given js = F'(x) S:
/// (w . w . F)^T js. Identity weights reduce it to the unweighted F^T js.
[[nodiscard]] double weighted_directional_term(const WeightVector& w, const Vector& fx,
                                               const Vector& js);

/// The adaptive residual-driven Newton solver: the INB loop with the weight
/// update ahead of each linear solve and the line search run on the weighted
/// merit. Stopping and stagnation both use the unweighted residual norm.
[[nodiscard]] SolveReport ardn_solve(const NonlinearSystem& system, const Vector& x0,
                                     const SolverOptions& options);

}  // namespace forge
