#include "forge/core.hpp"

#include <algorithm>
#include <cmath>

namespace forge {

const char* to_string(WeightStrategy s) noexcept {
    switch (s) {
        case WeightStrategy::Full: return "full";
        case WeightStrategy::SimplifiedI: return "simplified1";
        case WeightStrategy::SimplifiedII: return "simplified2";
    }
    return "full";
}

WeightStrategy weight_strategy_from_string(const std::string& s) {
    if (s == "full") return WeightStrategy::Full;
    if (s == "simplified1") return WeightStrategy::SimplifiedI;
    if (s == "simplified2") return WeightStrategy::SimplifiedII;
    throw std::invalid_argument("unknown weight strategy '" + s +
                                "' (expected full | simplified1 | simplified2)");
}

void SolverOptions::validate() const {
    if (!(abs_tol > 0.0)) throw std::invalid_argument("abs_tol must be > 0");
    if (!(rel_tol > 0.0)) throw std::invalid_argument("rel_tol must be > 0");
    if (max_newton_iters < 1) throw std::invalid_argument("max_newton_iters must be >= 1");
    if (!(eta0 > 0.0 && eta0 < 1.0)) throw std::invalid_argument("eta0 must lie in (0,1)");
    if (beta && !(*beta > 0.0)) throw std::invalid_argument("beta must be > 0");
    if (!(armijo_alpha > 0.0 && armijo_alpha < 1.0))
        throw std::invalid_argument("armijo_alpha must lie in (0,1)");
    if (!(backtrack_rho > 0.0 && backtrack_rho < 1.0))
        throw std::invalid_argument("backtrack_rho must lie in (0,1)");
    if (g_max < 1) throw std::invalid_argument("g_max must be >= 1");
    if (!(base_decay > 0.0 && base_decay < 1.0))
        throw std::invalid_argument("base_decay must lie in (0,1)");
    if (!(initial_learning_rate >= 0.0))
        throw std::invalid_argument("initial_learning_rate must be >= 0");
    if (!(sigma1 > 0.0)) throw std::invalid_argument("sigma1 must be > 0");
    if (!(sigma2 > 0.0)) throw std::invalid_argument("sigma2 must be > 0");
    if (!(stagnation_tau > 0.0)) throw std::invalid_argument("stagnation_tau must be > 0");
    if (gmres_restart < 1) throw std::invalid_argument("gmres_restart must be >= 1");
    if (gmres_max_iters < 1) throw std::invalid_argument("gmres_max_iters must be >= 1");
    if (pinl_components < 1) throw std::invalid_argument("pinl_components must be >= 1");
    if (pinl_training_size < pinl_components)
        throw std::invalid_argument("pinl_training_size must be >= pinl_components");
    if (pinl_training_size > max_newton_iters)
        throw std::invalid_argument("pinl_training_size must be <= max_newton_iters");
    if (!(pinl_subspace_rel_tol > 0.0 && pinl_subspace_rel_tol < 1.0))
        throw std::invalid_argument("pinl_subspace_rel_tol must lie in (0,1)");
    if (pinl_subspace_max_iters < 1)
        throw std::invalid_argument("pinl_subspace_max_iters must be >= 1");
}

int SolveReport::recount_stagnant() const {
    return static_cast<int>(
        std::count_if(history.begin(), history.end(),
                      [](const IterationRecord& r) { return r.stagnant; }));
}

bool stopping_satisfied(double current_norm, double initial_norm,
                        const SolverOptions& options) {
    return current_norm <= std::max(options.abs_tol, options.rel_tol * initial_norm);
}

bool is_stagnant(double norm_k, double norm_km1, double tau) {
    if (norm_k == 0.0) return false;
    return std::abs(norm_k - norm_km1) <= tau * norm_k;
}

}  // namespace forge
