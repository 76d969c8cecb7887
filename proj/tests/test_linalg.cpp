#include <doctest.h>

#include <Eigen/Dense>

#include "forge/linalg.hpp"
#include "oracles.hpp"

using namespace forge;

namespace {

LinearOperator matrix_operator(const Matrix& a) {
    return {a.rows(), [a](const Vector& v) { return Vector(a * v); }};
}

}  // namespace

TEST_CASE("gmres: identity operator converges in one iteration") {
    Vector rhs(5);
    rhs << 1, 2, 3, 4, 5;
    const auto result = gmres(matrix_operator(Matrix::Identity(5, 5)), rhs, 0.25, 50, 100);
    CHECK(result.iterations == 1);
    CHECK((result.solution - rhs).norm() < 1e-12);
}

TEST_CASE("gmres: diagonal solve") {
    Matrix a = Matrix::Zero(3, 3);
    a.diagonal() << 1, 2, 4;
    Vector rhs(3);
    rhs << 1, 2, 4;
    const auto result = gmres(matrix_operator(a), rhs, 1e-10, 50, 100);
    CHECK((result.solution - Vector::Ones(3)).norm() < 1e-9);
}

TEST_CASE("gmres: random well-conditioned system matches a dense LU solve") {
    Matrix a = test::random_matrix(20, 20, 7);
    a += 20.0 * Matrix::Identity(20, 20);
    const Vector rhs = test::random_vector(20, 8);

    const auto result = gmres(matrix_operator(a), rhs, 1e-10, 50, 200);
    const Vector reference = Eigen::PartialPivLU<Matrix>(a).solve(rhs);
    CHECK((result.solution - reference).norm() <= 1e-8 * reference.norm());
    CHECK(result.achieved_relative_residual <= 1e-10);
}

TEST_CASE("gmres: zero right-hand side returns zero immediately") {
    const auto result = gmres(matrix_operator(Matrix::Identity(4, 4)), Vector::Zero(4),
                              1e-10, 50, 100);
    CHECK(result.iterations == 0);
    CHECK(result.solution.norm() == 0.0);
    CHECK(result.achieved_relative_residual == 0.0);
}

TEST_CASE("gmres: restart still reaches the solution") {
    Matrix a = test::random_matrix(30, 30, 17);
    a += 30.0 * Matrix::Identity(30, 30);
    const Vector rhs = test::random_vector(30, 18);
    const auto result = gmres(matrix_operator(a), rhs, 1e-10, 5, 500);
    CHECK((a * result.solution - rhs).norm() <= 1e-9 * rhs.norm());
}

TEST_CASE("gmres: exhausted iterations return the best-effort iterate") {
    Matrix a = test::random_matrix(30, 30, 27);
    a += 30.0 * Matrix::Identity(30, 30);
    const Vector rhs = test::random_vector(30, 28);
    const auto result = gmres(matrix_operator(a), rhs, 1e-14, 5, 7);
    CHECK(result.iterations == 7);
    // Honest achieved residual for the returned iterate.
    const double true_rel = (a * result.solution - rhs).norm() / rhs.norm();
    CHECK(result.achieved_relative_residual == doctest::Approx(true_rel).epsilon(1e-12));
    CHECK(result.achieved_relative_residual < 1.0);
}

TEST_CASE("gmres: right preconditioning preserves the solution") {
    Matrix a = Matrix::Zero(4, 4);
    a.diagonal() << 100.0, 10.0, 1.0, 0.1;
    Vector rhs(4);
    rhs << 1, 1, 1, 1;
    Matrix m_inv = Matrix::Zero(4, 4);
    m_inv.diagonal() << 0.01, 0.1, 1.0, 10.0;
    const auto result =
        gmres(matrix_operator(a), rhs, 1e-12, 50, 100, matrix_operator(m_inv));
    CHECK((a * result.solution - rhs).norm() <= 1e-10 * rhs.norm());
    CHECK(result.iterations <= 2);  // preconditioned operator is the identity
}

TEST_CASE("gmres residual estimates are non-increasing within a cycle (SPD case)") {
    Matrix a = test::random_matrix(25, 25, 37);
    a = Matrix(a.transpose() * a) + 25.0 * Matrix::Identity(25, 25);
    const Vector rhs = test::random_vector(25, 38);
    const auto result = gmres(matrix_operator(a), rhs, 1e-12, 25, 25);
    for (size_t i = 1; i < result.residual_trace.size(); ++i)
        CHECK(result.residual_trace[i] <= result.residual_trace[i - 1] * (1.0 + 1e-12));
}

TEST_CASE("dense_solve: identity and diagonal cases") {
    Vector b(2);
    b << 3, 7;
    CHECK((dense_solve(Matrix::Identity(2, 2), b) - b).norm() == 0.0);

    Matrix a = Matrix::Zero(2, 2);
    a.diagonal() << 2, 4;
    Vector b2(2);
    b2 << 2, 8;
    Vector expected(2);
    expected << 1, 2;
    CHECK((dense_solve(a, b2) - expected).norm() < 1e-15);
}

TEST_CASE("dense_solve: random system solved to tight residual") {
    Matrix a = test::random_matrix(8, 8, 47);
    a += 8.0 * Matrix::Identity(8, 8);
    const Vector b = test::random_vector(8, 48);
    const Vector x = dense_solve(a, b);
    CHECK((a * x - b).norm() <= 1e-12 * b.norm());
}

TEST_CASE("dense_solve: singular matrix is rejected") {
    Matrix a(2, 2);
    a << 1, 2, 2, 4;
    Vector b(2);
    b << 1, 1;
    CHECK_THROWS_AS((void)dense_solve(a, b), SingularMatrixError);
}

TEST_CASE("truncated SVD: orthogonal input columns span themselves") {
    Matrix m = Matrix::Zero(4, 2);
    m(0, 0) = 1.0;
    m(1, 1) = 1.0;
    const Matrix u = truncated_left_singular_vectors(m, 2);
    // Span check: projecting m onto the computed basis loses nothing.
    CHECK((u * (u.transpose() * m) - m).norm() < 1e-10);
    CHECK((u.transpose() * u - Matrix::Identity(2, 2)).cwiseAbs().maxCoeff() < 1e-10);
}

TEST_CASE("truncated SVD: repeated column collapses to its direction") {
    Vector col = test::random_vector(6, 57);
    Matrix m(6, 2);
    m.col(0) = col;
    m.col(1) = col;
    const Matrix u = truncated_left_singular_vectors(m, 1);
    const Vector unit = col / col.norm();
    CHECK(std::min((u.col(0) - unit).norm(), (u.col(0) + unit).norm()) < 1e-10);
}

TEST_CASE("truncated SVD: energy matches the Gram-eigenvalue oracle") {
    const Matrix m = test::random_matrix(50, 8, 67);
    const int d = 3;
    const Matrix u = truncated_left_singular_vectors(m, d);

    CHECK((u.transpose() * u - Matrix::Identity(d, d)).cwiseAbs().maxCoeff() < 1e-10);

    const double energy = (u * (u.transpose() * m)).squaredNorm();
    const Vector evals = test::jacobi_eigenvalues(m.transpose() * m);
    double expected = 0.0;
    for (int i = 0; i < d; ++i) expected += evals[i];
    CHECK(energy == doctest::Approx(expected).epsilon(1e-8));
}

TEST_CASE("truncated SVD: rank deficiency is reported") {
    Vector col = test::random_vector(5, 77);
    Matrix m(5, 3);
    m.col(0) = col;
    m.col(1) = 2.0 * col;
    m.col(2) = -0.5 * col;
    CHECK_THROWS_AS((void)truncated_left_singular_vectors(m, 2), RankDeficiencyError);
}

TEST_CASE("linear operator applications are additive on random probes") {
    Matrix a = test::random_matrix(12, 12, 87);
    const auto op = matrix_operator(a);
    for (unsigned seed = 0; seed < 5; ++seed) {
        const Vector u = test::random_vector(12, 100 + seed);
        const Vector v = test::random_vector(12, 200 + seed);
        const Vector lhs = op.apply(u + v) - op.apply(u) - op.apply(v);
        CHECK(lhs.norm() <= 1e-10 * (op.apply(u).norm() + op.apply(v).norm()));
    }
}
