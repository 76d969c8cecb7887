#pragma once

#include <functional>
#include <memory>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "forge/types.hpp"

namespace forge {

/// A square nonlinear system F(X) = 0 with one of three Jacobian providers:
/// an analytic sparse matrix, an analytic matrix-vector product, or (when
/// neither is set) forward finite differences.
struct NonlinearSystem {
    Index dimension = 0;
    std::function<Vector(const Vector&)> residual;
    std::function<SparseMatrix(const Vector&)> jacobian;
    std::function<Vector(const Vector&, const Vector&)> jacobian_product;
    // Optional right preconditioner applied inside the Krylov solve,
    // rebuilt at each linearization point; identity when unset.
    std::function<std::function<Vector(const Vector&)>(const Vector&)> preconditioner;

    [[nodiscard]] bool has_analytic_jacobian() const {
        return static_cast<bool>(jacobian) || static_cast<bool>(jacobian_product);
    }
};

/// Weight-update rules for the adaptive residual-driven solver.
enum class WeightStrategy {
    Full,         // decay/recognition factors and adaptive learning rate
    SimplifiedI,  // fixed base decay, fixed learning rate
    SimplifiedII  // fixed base decay, adaptive learning rate
};

[[nodiscard]] const char* to_string(WeightStrategy s) noexcept;
[[nodiscard]] WeightStrategy weight_strategy_from_string(const std::string& s);

/// Every tunable shared by the INB, ARDN and PIN^L solvers.
struct SolverOptions {
    double abs_tol = 1e-8;
    double rel_tol = 1e-12;
    int max_newton_iters = 200;

    double eta0 = 0.25;
    // Residual-norm threshold for the forcing-term switch; when unset it is
    // taken as 0.1 * ||F(X0)|| at solve start.
    std::optional<double> beta;

    double armijo_alpha = 1e-4;
    double backtrack_rho = 0.5;
    int g_max = 12;

    // Empty means all-ones, resolved to the system dimension at solve start.
    Vector initial_weights;
    double base_decay = 0.5;
    double initial_learning_rate = 0.24;
    double sigma1 = 0.3;
    double sigma2 = 0.25;
    WeightStrategy weight_strategy = WeightStrategy::Full;
    // Test hook: keep the weight vector fixed at its initial value.
    bool freeze_weights = false;

    double stagnation_tau = 1e-6;

    int gmres_restart = 50;
    int gmres_max_iters = 500;

    int pinl_training_size = 8;
    int pinl_components = 2;
    double pinl_subspace_rel_tol = 1e-2;
    int pinl_subspace_max_iters = 20;

    /// Throws std::invalid_argument on an out-of-range setting.
    void validate() const;
};

/// One Newton step. `residual_norm` is ||F|| after the update; replay fields
/// (merits, directional term, linear-model norm) let tests re-check the
/// Armijo inequality and the inexact Newton condition from the log alone.
struct IterationRecord {
    int index = 0;
    double residual_norm = 0.0;
    double step_length = 1.0;
    int line_search_count = 0;
    double forcing_term = 0.0;
    bool stagnant = false;
    bool armijo_satisfied = true;

    std::optional<double> weight_min;
    std::optional<double> weight_max;

    double merit_before = 0.0;
    double merit_after = 0.0;
    double directional_term = 0.0;
    double linear_model_norm = 0.0;
    double gmres_achieved_rel = 0.0;
    int gmres_iterations = 0;
};

struct PinlPhases;

struct SolveReport {
    Vector final_point;
    bool converged = false;
    int n_ite = 0;
    double wall_time_seconds = 0.0;
    int n_sta = 0;
    double initial_residual_norm = 0.0;
    double final_residual_norm = 0.0;
    std::string solver;
    // Empty on a clean run; set when the solve aborted (the history is then
    // partial up to the failing step).
    std::string failure_reason;
    std::vector<IterationRecord> history;
    // Set only for PIN^L runs.
    std::shared_ptr<const PinlPhases> phases;

    [[nodiscard]] int recount_stagnant() const;
};

/// Phase split of a PIN^L run. `training_samples` counts the collected
/// iterates (the training solver takes one fewer Newton step).
struct PinlPhases {
    SolveReport training;
    int training_samples = 0;
    SolveReport subspace;
    SolveReport global;
    std::vector<double> subspace_projected_norms;  // ||PP^T(F-Fbar)+Fbar|| per iterate
    bool early_convergence = false;
    bool subspace_fallback = false;
};

/// True iff current_norm <= max(abs_tol, rel_tol * initial_norm).
[[nodiscard]] bool stopping_satisfied(double current_norm, double initial_norm,
                                      const SolverOptions& options);

/// Relative stagnation test on consecutive residual norms; a zero norm_k
/// means convergence, never stagnation.
[[nodiscard]] bool is_stagnant(double norm_k, double norm_km1, double tau);

}  // namespace forge
