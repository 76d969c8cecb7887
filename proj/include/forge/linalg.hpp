#pragma once

#include <functional>
#include <optional>
#include <stdexcept>
#include <vector>

#include "forge/types.hpp"

namespace forge {

/// Matrix-free square operator v -> Av.
struct LinearOperator {
    Index dimension = 0;
    std::function<Vector(const Vector&)> apply;
};

class SingularMatrixError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class RankDeficiencyError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

struct GmresResult {
    Vector solution;
    // True relative residual ||rhs - A x|| / ||rhs|| recomputed at exit.
    double achieved_relative_residual = 0.0;
    int iterations = 0;
    bool breakdown = false;
    // Recurrence residual estimate after each inner iteration.
    std::vector<double> residual_trace;
};

/// Restarted GMRES with a zero initial guess and modified Gram-Schmidt
/// orthogonalization (one reorthogonalization pass on severe cancellation).
/// Optional right preconditioning. When max_iters is exhausted the best
/// iterate found so far is returned with its achieved residual.
[[nodiscard]] GmresResult gmres(const LinearOperator& op, const Vector& rhs,
                                double rel_tol, int restart, int max_iters,
                                const std::optional<LinearOperator>& preconditioner = {});

/// Direct dense solve via LU with partial pivoting. Throws
/// SingularMatrixError when a pivot falls below 1e-14 * max|a_ij|.
[[nodiscard]] Vector dense_solve(const Matrix& a, const Vector& b);

/// First d left singular vectors of m (n x s, d <= s), ordered by descending
/// singular value. Computed from the s x s Gram matrix m^T m. Throws
/// RankDeficiencyError when rank(m) < d (singular values below
/// 1e-12 * sigma_max count as zero).
[[nodiscard]] Matrix truncated_left_singular_vectors(const Matrix& m, int d);

/// PCA projection operators with the data means they were centered on.
struct ProjectorPair {
    Matrix p;  // n x d, column-orthonormal
    Matrix q;  // n x d, column-orthonormal
    Vector residual_mean;
    Vector solution_mean;
};

}  // namespace forge
