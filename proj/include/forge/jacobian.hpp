#pragma once

#include <stdexcept>

#include "forge/core.hpp"
#include "forge/linalg.hpp"
#include "forge/types.hpp"

namespace forge {

class EvaluationError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Forward-difference Jacobian, column j stepped by sqrt(eps) * max(|x_j|, 1).
/// Throws EvaluationError (naming the column) on a non-finite probe.
[[nodiscard]] Matrix finite_difference_jacobian(const NonlinearSystem& system,
                                                const Vector& x);

/// Same, reusing an already-computed residual F(x).
[[nodiscard]] Matrix finite_difference_jacobian(const NonlinearSystem& system,
                                                const Vector& x, const Vector& fx);

/// F'(x) v: exact when the system carries an analytic Jacobian, otherwise a
/// directional forward difference with step sqrt(eps) * (1 + ||x||) / ||v||.
/// Returns zero for v = 0.
[[nodiscard]] Vector jacobian_vector_product(const NonlinearSystem& system,
                                             const Vector& x, const Vector& v,
                                             const Vector& fx);

/// The Jacobian frozen at one linearization point. Assembles the analytic or
/// finite-difference matrix once; matrix-free systems keep the product
/// closure. Used for the Krylov solve and the directional-derivative matvec
/// of a single Newton iteration.
class Linearization {
public:
    Linearization(const NonlinearSystem& system, Vector x, Vector fx);

    [[nodiscard]] Vector apply(const Vector& v) const;
    [[nodiscard]] LinearOperator as_operator() const;
    [[nodiscard]] Index dimension() const { return x_.size(); }

private:
    const NonlinearSystem* system_;
    Vector x_;
    Vector fx_;
    SparseMatrix sparse_;
    Matrix dense_;
    enum class Mode { SparseMatrix, DenseMatrix, ProductClosure } mode_;
};

}  // namespace forge
