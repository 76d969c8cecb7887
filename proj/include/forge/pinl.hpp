#pragma once

#include <optional>

#include "forge/core.hpp"
#include "forge/linalg.hpp"

namespace forge {

/// Which solver drives the PIN^L training and global phases.
enum class InnerSolver { Inb, Ardn };

[[nodiscard]] const char* to_string(InnerSolver s) noexcept;
[[nodiscard]] InnerSolver inner_solver_from_string(const std::string& s);

/// Centered training matrices harvested from the first iterates of an inner
/// solve, with the means and the most converged iterate.
struct TrainingData {
    Matrix residuals;  // n x s, columns F(X^k) - Fbar
    Matrix solutions;  // n x s, columns X^k - Xbar
    Vector residual_mean;
    Vector solution_mean;
    Vector last_iterate;
    int samples = 0;  // s
};

struct TrainingCollection {
    // Set when the inner solver already converged while collecting; the
    // report is then the final answer and `data` is absent.
    bool converged_early = false;
    SolveReport inner_report;
    std::optional<TrainingData> data;
};

/// Runs the inner solver for s-1 steps and centers the collected iterate and
/// residual samples X^0..X^{s-1}.
[[nodiscard]] TrainingCollection collect_training_data(InnerSolver inner,
                                                       const NonlinearSystem& system,
                                                       const Vector& x0,
                                                       const SolverOptions& options,
                                                       int s);

/// PCA operators: P from the residual matrix, Q from the solution matrix,
/// both truncated to d components. Throws RankDeficiencyError when either
/// matrix has rank below d.
[[nodiscard]] ProjectorPair build_projectors(const TrainingData& data, int d);

struct SubspaceResult {
    Vector y_star;
    int iterations = 0;
    bool converged = false;
    // Singular projected Jacobian or a non-finite evaluation: y_star falls
    // back to the starting point.
    bool fallback = false;
    std::vector<double> projected_norms;  // ||PP^T(F-Fbar)+Fbar|| at y^0, y^1, ...
    std::vector<double> residual_norms;   // true ||F(y^j)||, j = 1..iterations
};

/// Full-step Newton on the projected system: each iteration solves the d x d
/// system (P^T F'(y) Q) s_p = -P^T F(y) and steps y += Q s_p, until the
/// approximate residual PP^T(F(y)-Fbar)+Fbar drops below gamma_s relative to
/// its start or max_iters is reached.
[[nodiscard]] SubspaceResult subspace_newton(const NonlinearSystem& system,
                                             const ProjectorPair& proj, const Vector& y0,
                                             double gamma_s, int max_iters);

/// The composed solver: training collection, projector build, subspace solve
/// for an improved initial guess, then a full inner solve from that guess.
/// The report's phase records are concatenated into the top-level history
/// (training samples first), so n_ite and n_sta total across phases.
[[nodiscard]] SolveReport pinl_solve(const NonlinearSystem& system, const Vector& x0,
                                     const SolverOptions& options, InnerSolver inner);

/// Variant that collects training data from a separate (typically easier)
/// system before solving the target one.
[[nodiscard]] SolveReport pinl_solve(const NonlinearSystem& system, const Vector& x0,
                                     const SolverOptions& options, InnerSolver inner,
                                     const NonlinearSystem& training_system,
                                     const Vector& training_x0);

}  // namespace forge
