#include "forge/ardn.hpp"

#include <cmath>

#include "solver_engine.hpp"

namespace forge {

namespace {
double gaussian(double t, double sigma) {
    const double z = (t - 1.0) / sigma;
    return std::exp(-0.5 * z * z);
}
}  // namespace

std::pair<double, double> decay_factors(double ratio, const SolverOptions& options) {
    const double delta1 = options.base_decay * gaussian(ratio, options.sigma1);
    const double delta2 = 1.0 - gaussian(ratio, options.sigma2);
    return {delta1, delta2};
}

double learning_rate(int g_prev, const SolverOptions& options) {
    return options.initial_learning_rate * (2.0 * g_prev / options.g_max);
}

WeightVector update_weights(const WeightVector& w, const Vector& residual, double delta1,
                            double delta2, double alpha_k, WeightStrategy strategy) {
    const double emax = residual.cwiseAbs().maxCoeff();
    if (emax == 0.0) return w;

    WeightVector out;
    out.values.resize(w.values.size());
    for (Index i = 0; i < w.values.size(); ++i) {
        const double rel = std::abs(residual[i]) / emax;
        const double increment = (strategy == WeightStrategy::Full)
                                     ? alpha_k * (rel + delta2 * (1.0 - rel))
                                     : alpha_k * rel;
        out.values[i] = delta1 * w.values[i] + increment;
    }
    return out;
}

double weighted_merit(const WeightVector& w, const Vector& fx) {
    double sum = 0.0;
    for (Index i = 0; i < fx.size(); ++i) {
        const double wf = w.values[i] * fx[i];
        sum += wf * wf;
    }
    return 0.5 * sum;
}

double weighted_directional_term(const WeightVector& w, const Vector& fx,
                                 const Vector& js) {
    double sum = 0.0;
    for (Index i = 0; i < fx.size(); ++i)
        sum += w.values[i] * w.values[i] * fx[i] * js[i];
    return sum;
}

SolveReport ardn_solve(const NonlinearSystem& system, const Vector& x0,
                       const SolverOptions& options) {
    return detail::newton_backtracking_solve(system, x0, options, true, "ardn");
}

}  // namespace forge
