#include "forge/pinl.hpp"

#include <chrono>
#include <cmath>
#include <string>
#include <utility>

#include "forge/jacobian.hpp"
#include "forge/log.hpp"
#include "solver_engine.hpp"

namespace forge {

namespace {

double seconds_since(std::chrono::steady_clock::time_point t0) {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

TrainingData center_samples(const std::vector<Vector>& iterates,
                            const std::vector<Vector>& residuals) {
    const int s = static_cast<int>(iterates.size());
    const Index n = iterates.front().size();

    TrainingData data;
    data.samples = s;
    data.residual_mean = Vector::Zero(n);
    data.solution_mean = Vector::Zero(n);
    for (int k = 0; k < s; ++k) {
        data.residual_mean += residuals[static_cast<size_t>(k)];
        data.solution_mean += iterates[static_cast<size_t>(k)];
    }
    data.residual_mean /= s;
    data.solution_mean /= s;

    data.residuals.resize(n, s);
    data.solutions.resize(n, s);
    for (int k = 0; k < s; ++k) {
        data.residuals.col(k) = residuals[static_cast<size_t>(k)] - data.residual_mean;
        data.solutions.col(k) = iterates[static_cast<size_t>(k)] - data.solution_mean;
    }
    data.last_iterate = iterates.back();
    return data;
}

}  // namespace

const char* to_string(InnerSolver s) noexcept {
    return s == InnerSolver::Inb ? "inb" : "ardn";
}

InnerSolver inner_solver_from_string(const std::string& s) {
    if (s == "inb") return InnerSolver::Inb;
    if (s == "ardn") return InnerSolver::Ardn;
    throw std::invalid_argument("unknown inner solver '" + s + "' (expected inb | ardn)");
}

TrainingCollection collect_training_data(InnerSolver inner, const NonlinearSystem& system,
                                         const Vector& x0, const SolverOptions& options,
                                         int s) {
    if (s < 1) throw std::invalid_argument("training size must be >= 1");

    TrainingCollection out;
    if (s == 1) {
        Vector fx = system.residual(x0);
        out.inner_report.solver = to_string(inner);
        out.inner_report.final_point = x0;
        out.inner_report.initial_residual_norm = fx.norm();
        out.inner_report.final_residual_norm = fx.norm();
        out.data = center_samples({x0}, {fx});
        return out;
    }

    SolverOptions training = options;
    training.max_newton_iters = s - 1;
    training.pinl_training_size = 1;
    training.pinl_components = 1;

    std::vector<Vector> iterates;
    std::vector<Vector> residuals;
    out.inner_report = detail::newton_backtracking_solve(
        system, x0, training, inner == InnerSolver::Ardn, to_string(inner), &iterates,
        &residuals);

    if (out.inner_report.converged || !out.inner_report.failure_reason.empty()) {
        out.converged_early = out.inner_report.converged;
        return out;
    }
    out.data = center_samples(iterates, residuals);
    return out;
}

ProjectorPair build_projectors(const TrainingData& data, int d) {
    ProjectorPair proj;
    proj.p = truncated_left_singular_vectors(data.residuals, d);
    proj.q = truncated_left_singular_vectors(data.solutions, d);
    proj.residual_mean = data.residual_mean;
    proj.solution_mean = data.solution_mean;
    return proj;
}

SubspaceResult subspace_newton(const NonlinearSystem& system, const ProjectorPair& proj,
                               const Vector& y0, double gamma_s, int max_iters) {
    const int d = static_cast<int>(proj.p.cols());

    SubspaceResult result;
    result.y_star = y0;

    auto projected_norm = [&](const Vector& fy) {
        return (proj.p * (proj.p.transpose() * (fy - proj.residual_mean)) +
                proj.residual_mean)
            .norm();
    };

    Vector y = y0;
    Vector fy = system.residual(y);
    if (!fy.allFinite()) {
        result.fallback = true;
        return result;
    }
    double fhat_norm = projected_norm(fy);
    result.projected_norms.push_back(fhat_norm);
    const double target = gamma_s * fhat_norm;

    while (fhat_norm > target && result.iterations < max_iters) {
        Matrix jq(y.size(), d);
        try {
            for (int c = 0; c < d; ++c)
                jq.col(c) = jacobian_vector_product(system, y, proj.q.col(c), fy);
        } catch (const EvaluationError&) {
            result.fallback = true;
            result.y_star = y0;
            return result;
        }
        const Matrix projected_jacobian = proj.p.transpose() * jq;
        const Vector rhs = -(proj.p.transpose() * fy);

        Vector sp;
        try {
            sp = dense_solve(projected_jacobian, rhs);
        } catch (const SingularMatrixError&) {
            result.fallback = true;
            result.y_star = y0;
            return result;
        }

        y += proj.q * sp;
        ++result.iterations;

        fy = system.residual(y);
        if (!fy.allFinite()) {
            result.fallback = true;
            result.y_star = y0;
            return result;
        }
        fhat_norm = projected_norm(fy);
        result.projected_norms.push_back(fhat_norm);
        result.residual_norms.push_back(fy.norm());
        trace("[subspace] j=%d |PF|=%.6e |F|=%.6e", result.iterations, fhat_norm,
              fy.norm());
    }

    result.converged = fhat_norm <= target;
    result.y_star = y;
    return result;
}

SolveReport pinl_solve(const NonlinearSystem& system, const Vector& x0,
                       const SolverOptions& options, InnerSolver inner) {
    return pinl_solve(system, x0, options, inner, system, x0);
}

SolveReport pinl_solve(const NonlinearSystem& system, const Vector& x0,
                       const SolverOptions& options, InnerSolver inner,
                       const NonlinearSystem& training_system,
                       const Vector& training_x0) {
    options.validate();
    const auto t0 = std::chrono::steady_clock::now();
    const std::string label =
        inner == InnerSolver::Inb ? "pinl" : "pinl+" + std::string(to_string(inner));

    TrainingCollection collection = collect_training_data(
        inner, training_system, training_x0, options, options.pinl_training_size);

    if (!collection.data) {
        SolveReport report = collection.inner_report;
        report.solver = label;
        auto phases = std::make_shared<PinlPhases>();
        phases->training = std::move(collection.inner_report);
        phases->training_samples = phases->training.n_ite + 1;
        phases->early_convergence = collection.converged_early;
        report.phases = std::move(phases);
        report.wall_time_seconds = seconds_since(t0);
        return report;
    }

    auto phases = std::make_shared<PinlPhases>();
    phases->training = std::move(collection.inner_report);
    phases->training_samples = collection.data->samples;

    const auto t_sub = std::chrono::steady_clock::now();
    ProjectorPair proj = build_projectors(*collection.data, options.pinl_components);
    SubspaceResult sub =
        subspace_newton(system, proj, collection.data->last_iterate,
                        options.pinl_subspace_rel_tol, options.pinl_subspace_max_iters);
    phases->subspace_fallback = sub.fallback;
    phases->subspace_projected_norms = sub.projected_norms;

    SolveReport& subspace = phases->subspace;
    subspace.solver = "subspace";
    subspace.converged = sub.converged;
    subspace.final_point = sub.y_star;
    subspace.initial_residual_norm =
        sub.projected_norms.empty() ? 0.0 : sub.projected_norms.front();
    for (int j = 0; j < sub.iterations; ++j) {
        IterationRecord rec;
        rec.index = j + 1;
        rec.residual_norm = sub.residual_norms[static_cast<size_t>(j)];
        rec.step_length = 1.0;
        subspace.history.push_back(rec);
    }
    subspace.n_ite = sub.iterations;
    subspace.final_residual_norm =
        sub.residual_norms.empty() ? phases->training.final_residual_norm
                                   : sub.residual_norms.back();
    subspace.wall_time_seconds = seconds_since(t_sub);

    phases->global = detail::newton_backtracking_solve(
        system, sub.y_star, options, inner == InnerSolver::Ardn, to_string(inner));

    SolveReport report;
    report.solver = label;
    report.converged = phases->global.converged;
    report.failure_reason = phases->global.failure_reason;
    report.final_point = phases->global.final_point;
    report.initial_residual_norm = phases->training.initial_residual_norm;
    report.final_residual_norm = phases->global.final_residual_norm;

    // Concatenated timeline: the initial sample, the training steps, the
    // subspace steps, the global steps. Indices run consecutively.
    IterationRecord sample0;
    sample0.index = 0;
    sample0.residual_norm = phases->training.initial_residual_norm;
    report.history.push_back(sample0);
    for (const auto* phase : {&phases->training, &phases->subspace, &phases->global})
        for (const IterationRecord& rec : phase->history) {
            report.history.push_back(rec);
            report.history.back().index = static_cast<int>(report.history.size()) - 1;
        }

    report.n_ite = static_cast<int>(report.history.size());
    report.n_sta = report.recount_stagnant();
    report.phases = std::move(phases);
    report.wall_time_seconds = seconds_since(t0);
    return report;
}

}  // namespace forge
