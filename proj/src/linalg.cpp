#include "forge/linalg.hpp"

#include <Eigen/Dense>
#include <Eigen/Eigenvalues>
#include <cmath>

namespace forge {

namespace {

// Solve the (j+1) x (j+1) upper-triangular system from the Givens-reduced
// Hessenberg and accumulate the correction into x.
void form_correction(const Matrix& h, const Vector& g, const std::vector<Vector>& basis,
                     int j, const std::optional<LinearOperator>& preconditioner,
                     Vector& x) {
    Vector y(j + 1);
    for (int i = j; i >= 0; --i) {
        double sum = g[i];
        for (int l = i + 1; l <= j; ++l) sum -= h(i, l) * y[l];
        y[i] = sum / h(i, i);
    }
    Vector z = Vector::Zero(x.size());
    for (int i = 0; i <= j; ++i) z += y[i] * basis[static_cast<size_t>(i)];
    if (preconditioner) z = preconditioner->apply(z);
    x += z;
}

}  // namespace

GmresResult gmres(const LinearOperator& op, const Vector& rhs, double rel_tol,
                  int restart, int max_iters,
                  const std::optional<LinearOperator>& preconditioner) {
    GmresResult result;
    const Index n = rhs.size();
    result.solution = Vector::Zero(n);

    const double bnorm = rhs.norm();
    if (bnorm == 0.0) return result;

    const double target = rel_tol * bnorm;
    Vector x = Vector::Zero(n);
    Vector r = rhs;
    double rnorm = bnorm;
    int total_iters = 0;

    Matrix h = Matrix::Zero(restart + 1, restart);
    Vector cs = Vector::Zero(restart);
    Vector sn = Vector::Zero(restart);
    Vector g = Vector::Zero(restart + 1);
    std::vector<Vector> basis;
    basis.reserve(static_cast<size_t>(restart) + 1);

    while (rnorm > target && total_iters < max_iters && !result.breakdown) {
        basis.clear();
        basis.push_back(r / rnorm);
        g.setZero();
        g[0] = rnorm;

        int j = -1;
        bool cycle_converged = false;
        while (j + 1 < restart && total_iters < max_iters) {
            ++j;
            Vector w = preconditioner ? op.apply(preconditioner->apply(basis.back()))
                                      : op.apply(basis.back());
            const double wnorm0 = w.norm();
            for (int i = 0; i <= j; ++i) {
                h(i, j) = basis[static_cast<size_t>(i)].dot(w);
                w -= h(i, j) * basis[static_cast<size_t>(i)];
            }
            // Severe cancellation: a second modified Gram-Schmidt pass.
            if (w.norm() <= 1e-8 * wnorm0) {
                for (int i = 0; i <= j; ++i) {
                    const double corr = basis[static_cast<size_t>(i)].dot(w);
                    h(i, j) += corr;
                    w -= corr * basis[static_cast<size_t>(i)];
                }
            }
            h(j + 1, j) = w.norm();

            ++total_iters;

            const bool happy = h(j + 1, j) <= 1e-14 * wnorm0;
            if (!happy) basis.push_back(w / h(j + 1, j));

            for (int i = 0; i < j; ++i) {
                const double tmp = cs[i] * h(i, j) + sn[i] * h(i + 1, j);
                h(i + 1, j) = -sn[i] * h(i, j) + cs[i] * h(i + 1, j);
                h(i, j) = tmp;
            }
            const double denom = std::hypot(h(j, j), h(j + 1, j));
            if (denom == 0.0) {
                // Arnoldi and Givens both annihilated: the operator is rank
                // deficient on this subspace; stop with the current iterate.
                result.breakdown = true;
                --j;
                break;
            }
            cs[j] = h(j, j) / denom;
            sn[j] = h(j + 1, j) / denom;
            h(j, j) = denom;
            h(j + 1, j) = 0.0;
            g[j + 1] = -sn[j] * g[j];
            g[j] = cs[j] * g[j];

            rnorm = std::abs(g[j + 1]);
            result.residual_trace.push_back(rnorm);

            if (happy) {
                result.breakdown = true;
                cycle_converged = true;
                break;
            }
            if (rnorm <= target) {
                cycle_converged = true;
                break;
            }
        }

        if (j >= 0) form_correction(h, g, basis, j, preconditioner, x);
        r = rhs - op.apply(x);
        rnorm = r.norm();
        if (cycle_converged) break;
    }

    result.solution = x;
    result.iterations = total_iters;
    result.achieved_relative_residual = (rhs - op.apply(x)).norm() / bnorm;
    return result;
}

Vector dense_solve(const Matrix& a, const Vector& b) {
    if (a.rows() != a.cols() || a.rows() != b.size())
        throw std::invalid_argument("dense_solve: shape mismatch");
    Eigen::PartialPivLU<Matrix> lu(a);
    const double scale = a.cwiseAbs().maxCoeff();
    const double pivot_min = lu.matrixLU().diagonal().cwiseAbs().minCoeff();
    if (pivot_min < 1e-14 * scale)
        throw SingularMatrixError("dense_solve: numerically singular matrix");
    return lu.solve(b);
}

Matrix truncated_left_singular_vectors(const Matrix& m, int d) {
    const Index s = m.cols();
    if (d < 1 || d > s)
        throw std::invalid_argument("truncated_left_singular_vectors: need 1 <= d <= cols");

    const Matrix gram = m.transpose() * m;
    Eigen::SelfAdjointEigenSolver<Matrix> es(gram);
    if (es.info() != Eigen::Success)
        throw std::runtime_error("truncated_left_singular_vectors: eigensolve failed");

    // Eigenvalues come out ascending; walk them from the back.
    const Vector& evals = es.eigenvalues();
    const Matrix& evecs = es.eigenvectors();
    const double sigma_max = std::sqrt(std::max(evals[s - 1], 0.0));

    Matrix u(m.rows(), d);
    for (int i = 0; i < d; ++i) {
        const Index idx = s - 1 - i;
        const double sigma = std::sqrt(std::max(evals[idx], 0.0));
        if (sigma <= 1e-12 * sigma_max || sigma == 0.0)
            throw RankDeficiencyError(
                "truncated_left_singular_vectors: rank below requested component "
                "count; reduce d");
        u.col(i) = m * evecs.col(idx) / sigma;
    }

    // One Gram-Schmidt cleanup pass; the columns are already orthonormal up
    // to roundoff amplified by the singular-value spread.
    for (int i = 0; i < d; ++i) {
        for (int l = 0; l < i; ++l) u.col(i) -= u.col(l).dot(u.col(i)) * u.col(l);
        u.col(i).normalize();
    }
    return u;
}

}  // namespace forge
