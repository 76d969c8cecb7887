#include "forge/jacobian.hpp"

#include <cmath>
#include <limits>
#include <string>

namespace forge {

namespace {
const double kSqrtEps = std::sqrt(std::numeric_limits<double>::epsilon());
}

Matrix finite_difference_jacobian(const NonlinearSystem& system, const Vector& x) {
    Vector fx = system.residual(x);
    if (!fx.allFinite())
        throw EvaluationError("finite_difference_jacobian: non-finite residual at base point");
    return finite_difference_jacobian(system, x, fx);
}

Matrix finite_difference_jacobian(const NonlinearSystem& system, const Vector& x,
                                  const Vector& fx) {
    const Index n = system.dimension;
    Matrix jac(n, n);
    Vector probe = x;
    for (Index j = 0; j < n; ++j) {
        const double h = kSqrtEps * std::max(std::abs(x[j]), 1.0);
        probe[j] = x[j] + h;
        Vector fp = system.residual(probe);
        probe[j] = x[j];
        if (!fp.allFinite())
            throw EvaluationError("finite_difference_jacobian: non-finite residual at column " +
                                  std::to_string(j));
        jac.col(j) = (fp - fx) / h;
    }
    return jac;
}

Vector jacobian_vector_product(const NonlinearSystem& system, const Vector& x,
                               const Vector& v, const Vector& fx) {
    if (system.jacobian_product) return system.jacobian_product(x, v);
    if (system.jacobian) return system.jacobian(x) * v;

    const double vnorm = v.norm();
    if (vnorm == 0.0) return Vector::Zero(v.size());
    const double h = kSqrtEps * (1.0 + x.norm()) / vnorm;
    Vector fp = system.residual(x + h * v);
    if (!fp.allFinite())
        throw EvaluationError("jacobian_vector_product: non-finite residual at probe point");
    return (fp - fx) / h;
}

Linearization::Linearization(const NonlinearSystem& system, Vector x, Vector fx)
    : system_(&system), x_(std::move(x)), fx_(std::move(fx)) {
    if (system.jacobian) {
        sparse_ = system.jacobian(x_);
        mode_ = Mode::SparseMatrix;
    } else if (system.jacobian_product) {
        mode_ = Mode::ProductClosure;
    } else {
        dense_ = finite_difference_jacobian(system, x_, fx_);
        mode_ = Mode::DenseMatrix;
    }
}

Vector Linearization::apply(const Vector& v) const {
    switch (mode_) {
        case Mode::SparseMatrix: return sparse_ * v;
        case Mode::DenseMatrix: return dense_ * v;
        case Mode::ProductClosure: return system_->jacobian_product(x_, v);
    }
    return Vector();
}

LinearOperator Linearization::as_operator() const {
    return LinearOperator{x_.size(), [this](const Vector& v) { return apply(v); }};
}

}  // namespace forge
