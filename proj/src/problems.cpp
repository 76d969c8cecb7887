#include "forge/problems.hpp"

#include <cmath>
#include <stdexcept>
#include <vector>

namespace forge::problems {

namespace {

SolverOptions reference_defaults() {
    SolverOptions opt;
    opt.abs_tol = 1e-8;
    opt.rel_tol = 1e-12;
    opt.max_newton_iters = 200;
    opt.eta0 = 0.25;
    opt.backtrack_rho = 0.5;
    opt.armijo_alpha = 1e-4;
    opt.sigma1 = 0.3;
    opt.sigma2 = 0.25;
    opt.gmres_restart = 50;
    return opt;
}

using Triplets = std::vector<Eigen::Triplet<double>>;

SparseMatrix from_triplets(Index n, const Triplets& trips) {
    SparseMatrix jac(n, n);
    jac.setFromTriplets(trips.begin(), trips.end());
    return jac;
}

double sigmoid(double t) { return 1.0 / (1.0 + std::exp(-t)); }

// phi(x) = 10 x (1-x) exp(x^4.5) and derivatives; the manufactured solution
// factors as u(x,y) = phi(x) psi(y) with psi(y) = y (1-y).
double phi(double x) { return 10.0 * x * (1.0 - x) * std::exp(std::pow(x, 4.5)); }

double phi_prime(double x) {
    const double e = std::exp(std::pow(x, 4.5));
    const double t = (1.0 - 2.0 * x) + 4.5 * (std::pow(x, 4.5) - std::pow(x, 5.5));
    return 10.0 * e * t;
}

double phi_second(double x) {
    const double e = std::exp(std::pow(x, 4.5));
    const double t = (1.0 - 2.0 * x) + 4.5 * (std::pow(x, 4.5) - std::pow(x, 5.5));
    const double t_prime = -2.0 + 4.5 * (4.5 * std::pow(x, 3.5) - 5.5 * std::pow(x, 4.5));
    return 10.0 * e * (4.5 * std::pow(x, 3.5) * t + t_prime);
}

}  // namespace

double convdiff_exact_solution(double x, double y) { return phi(x) * (y * (1.0 - y)); }

double convdiff_forcing(double x, double y, double c) {
    const double psi = y * (1.0 - y);
    const double psi_prime = 1.0 - 2.0 * y;
    const double f = phi(x);
    const double fp = phi_prime(x);
    const double fpp = phi_second(x);
    return fpp * psi + f * (-2.0) + c * f * psi * (fp * psi + f * psi_prime);
}

BenchmarkSpec chemical_equilibrium() {
    constexpr int n = 5;
    const double r = 10.0;
    const double r5 = 0.193;
    const double r6 = 0.002597 / std::sqrt(40.0);
    const double r7 = 0.003448 / std::sqrt(40.0);
    const double r8 = 0.00001799 / 40.0;
    const double r9 = 0.0002155 / std::sqrt(40.0);
    const double r10 = 0.00003846 / 40.0;

    BenchmarkSpec spec;
    spec.name = "chemical";
    spec.system.dimension = n;
    spec.system.residual = [=](const Vector& x) {
        const double x1 = x[0], x2 = x[1], x3 = x[2], x4 = x[3], x5 = x[4];
        Vector f(n);
        f[0] = x1 * x2 + x1 - 3.0 * x5;
        f[1] = 2.0 * x1 * x2 + x1 + x2 * x3 * x3 + r8 * x2 - r * x5 +
               2.0 * r10 * x2 * x2 + r7 * x2 * x3 + r9 * x2 * x4;
        f[2] = 2.0 * x2 * x3 * x3 - 8.0 * x5 + r6 * x3 + r7 * x2 * x3;
        f[3] = r9 * x2 * x4 + 2.0 * x4 * x4 - 4.0 * r * x5;
        f[4] = x1 * (x2 + 1.0) + r10 * x2 * x2 + r8 * x2 + r5 * x3 * x3 - 1.0 +
               r6 * x3 + r7 * x2 * x3 + r9 * x2 * x4;
        return f;
    };
    spec.initial_guess = Vector::Zero(n);
    spec.recommended = reference_defaults();
    spec.recommended.g_max = 36;
    spec.recommended.stagnation_tau = 1e-6;
    spec.recommended.pinl_training_size = 8;
    spec.recommended.pinl_components = 2;
    return spec;
}

BenchmarkSpec convection_diffusion(double c, int grid_n) {
    if (grid_n < 3) throw std::invalid_argument("convection_diffusion: grid_n must be >= 3");
    const int nn = grid_n;
    const Index n = static_cast<Index>(nn) * nn;
    const double h = 1.0 / (nn + 1);

    // Forcing samples are fixed by the mesh; precompute them once.
    Vector g(n);
    for (int iy = 0; iy < nn; ++iy)
        for (int ix = 0; ix < nn; ++ix)
            g[static_cast<Index>(iy) * nn + ix] =
                convdiff_forcing((ix + 1) * h, (iy + 1) * h, c);

    BenchmarkSpec spec;
    spec.name = "convdiff";
    spec.system.dimension = n;
    spec.system.residual = [=](const Vector& u) {
        Vector f(n);
        const double inv_h2 = 1.0 / (h * h);
        const double inv_2h = 1.0 / (2.0 * h);
        for (int iy = 0; iy < nn; ++iy) {
            for (int ix = 0; ix < nn; ++ix) {
                const Index k = static_cast<Index>(iy) * nn + ix;
                const double uc = u[k];
                const double ue = ix + 1 < nn ? u[k + 1] : 0.0;
                const double uw = ix > 0 ? u[k - 1] : 0.0;
                const double un = iy + 1 < nn ? u[k + nn] : 0.0;
                const double us = iy > 0 ? u[k - nn] : 0.0;
                const double lap = (ue + uw + un + us - 4.0 * uc) * inv_h2;
                const double conv = c * uc * ((ue - uw) + (un - us)) * inv_2h;
                f[k] = lap + conv - g[k];
            }
        }
        return f;
    };
    spec.system.jacobian = [=](const Vector& u) {
        const double inv_h2 = 1.0 / (h * h);
        const double inv_2h = 1.0 / (2.0 * h);
        Triplets trips;
        trips.reserve(static_cast<size_t>(5 * n));
        for (int iy = 0; iy < nn; ++iy) {
            for (int ix = 0; ix < nn; ++ix) {
                const Index k = static_cast<Index>(iy) * nn + ix;
                const double uc = u[k];
                const double ue = ix + 1 < nn ? u[k + 1] : 0.0;
                const double uw = ix > 0 ? u[k - 1] : 0.0;
                const double un = iy + 1 < nn ? u[k + nn] : 0.0;
                const double us = iy > 0 ? u[k - nn] : 0.0;
                trips.emplace_back(k, k,
                                   -4.0 * inv_h2 + c * ((ue - uw) + (un - us)) * inv_2h);
                if (ix + 1 < nn) trips.emplace_back(k, k + 1, inv_h2 + c * uc * inv_2h);
                if (ix > 0) trips.emplace_back(k, k - 1, inv_h2 - c * uc * inv_2h);
                if (iy + 1 < nn) trips.emplace_back(k, k + nn, inv_h2 + c * uc * inv_2h);
                if (iy > 0) trips.emplace_back(k, k - nn, inv_h2 - c * uc * inv_2h);
            }
        }
        return from_triplets(n, trips);
    };
    spec.initial_guess = Vector::Zero(n);
    spec.recommended = reference_defaults();
    spec.recommended.rel_tol = 1e-10;
    spec.recommended.stagnation_tau = 1e-2;
    spec.recommended.g_max = 24;
    spec.recommended.pinl_training_size = 6;
    spec.recommended.pinl_components = 3;
    return spec;
}

BenchmarkSpec modified_rosenbrock(int n) {
    if (n < 2 || n % 2 != 0)
        throw std::invalid_argument("modified_rosenbrock: n must be even and >= 2");

    BenchmarkSpec spec;
    spec.name = "p1";
    spec.system.dimension = n;
    spec.system.residual = [n](const Vector& x) {
        Vector f(n);
        for (int i = 0; i < n; ++i) {
            if (i % 2 == 0)
                f[i] = sigmoid(x[i]) - 0.73;
            else
                f[i] = 10.0 * (x[i] - x[i - 1] * x[i - 1]);
        }
        return f;
    };
    spec.system.jacobian = [n](const Vector& x) {
        Triplets trips;
        trips.reserve(static_cast<size_t>(2 * n));
        for (int i = 0; i < n; ++i) {
            if (i % 2 == 0) {
                const double s = sigmoid(x[i]);
                trips.emplace_back(i, i, s * (1.0 - s));
            } else {
                trips.emplace_back(i, i, 10.0);
                trips.emplace_back(i, i - 1, -20.0 * x[i - 1]);
            }
        }
        return from_triplets(n, trips);
    };
    spec.initial_guess = Vector(n);
    for (int i = 0; i < n; ++i) spec.initial_guess[i] = (i % 2 == 0) ? -1.8 : -1.0;

    const double root = std::log(0.73 / 0.27);
    spec.known_solution = Vector(n);
    for (int i = 0; i < n; ++i)
        (*spec.known_solution)[i] = (i % 2 == 0) ? root : root * root;

    spec.recommended = reference_defaults();
    spec.recommended.g_max = 12;
    spec.recommended.stagnation_tau = 1e-2;
    return spec;
}

BenchmarkSpec augmented_rosenbrock(int n) {
    if (n < 4 || n % 4 != 0)
        throw std::invalid_argument("augmented_rosenbrock: n must be a multiple of 4");

    BenchmarkSpec spec;
    spec.name = "p2";
    spec.system.dimension = n;
    spec.system.residual = [n](const Vector& x) {
        Vector f(n);
        for (int i = 0; i < n; ++i) {
            switch (i % 4) {
                case 0: f[i] = 10.0 * (x[i + 1] - x[i] * x[i]); break;
                case 1: f[i] = 1.0 - x[i - 1]; break;
                case 2: f[i] = 1.25 * x[i] - 0.25 * x[i] * x[i] * x[i]; break;
                default: f[i] = x[i]; break;
            }
        }
        return f;
    };
    spec.system.jacobian = [n](const Vector& x) {
        Triplets trips;
        trips.reserve(static_cast<size_t>(2 * n));
        for (int i = 0; i < n; ++i) {
            switch (i % 4) {
                case 0:
                    trips.emplace_back(i, i, -20.0 * x[i]);
                    trips.emplace_back(i, i + 1, 10.0);
                    break;
                case 1: trips.emplace_back(i, i - 1, -1.0); break;
                case 2: trips.emplace_back(i, i, 1.25 - 0.75 * x[i] * x[i]); break;
                default: trips.emplace_back(i, i, 1.0); break;
            }
        }
        return from_triplets(n, trips);
    };
    spec.initial_guess = Vector(n);
    for (int i = 0; i < n; ++i) {
        switch (i % 4) {
            case 0: spec.initial_guess[i] = -1.2; break;
            case 1: spec.initial_guess[i] = 1.0; break;
            case 2: spec.initial_guess[i] = -1.0; break;
            default: spec.initial_guess[i] = 20.0; break;
        }
    }
    spec.recommended = reference_defaults();
    spec.recommended.g_max = 12;
    return spec;
}

BenchmarkSpec tridiagonal(int n) {
    if (n < 3) throw std::invalid_argument("tridiagonal: n must be >= 3");

    BenchmarkSpec spec;
    spec.name = "p3";
    spec.system.dimension = n;
    spec.system.residual = [n](const Vector& x) {
        Vector f(n);
        f[0] = 4.0 * (x[0] - x[1] * x[1]);
        for (int i = 1; i < n - 1; ++i)
            f[i] = 8.0 * x[i] * (x[i] * x[i] - x[i - 1]) - 2.0 * (1.0 - x[i]) +
                   4.0 * (x[i] - x[i + 1] * x[i + 1]);
        f[n - 1] = 8.0 * x[n - 1] * (x[n - 1] * x[n - 1] - x[n - 2]) -
                   2.0 * (1.0 - x[n - 1]);
        return f;
    };
    spec.system.jacobian = [n](const Vector& x) {
        Triplets trips;
        trips.reserve(static_cast<size_t>(3 * n));
        trips.emplace_back(0, 0, 4.0);
        trips.emplace_back(0, 1, -8.0 * x[1]);
        for (int i = 1; i < n - 1; ++i) {
            trips.emplace_back(i, i - 1, -8.0 * x[i]);
            trips.emplace_back(i, i, 24.0 * x[i] * x[i] - 8.0 * x[i - 1] + 6.0);
            trips.emplace_back(i, i + 1, -8.0 * x[i + 1]);
        }
        trips.emplace_back(n - 1, n - 2, -8.0 * x[n - 1]);
        trips.emplace_back(n - 1, n - 1, 24.0 * x[n - 1] * x[n - 1] - 8.0 * x[n - 2] + 2.0);
        return from_triplets(n, trips);
    };
    spec.initial_guess = Vector::Constant(n, 12.0);
    spec.known_solution = Vector::Ones(n);
    spec.recommended = reference_defaults();
    spec.recommended.g_max = 12;
    return spec;
}

BenchmarkSpec five_diagonal(int n) {
    if (n < 5) throw std::invalid_argument("five_diagonal: n must be >= 5");

    BenchmarkSpec spec;
    spec.name = "p4";
    spec.system.dimension = n;
    spec.system.residual = [n](const Vector& x) {
        Vector f(n);
        f[0] = 4.0 * (x[0] - x[1] * x[1]) + x[1] - x[2] * x[2];
        f[1] = 8.0 * x[1] * (x[1] * x[1] - x[0]) - 2.0 * (1.0 - x[1]) +
               4.0 * (x[1] - x[2] * x[2]) + x[2] - x[3] * x[3];
        for (int i = 2; i < n - 2; ++i)
            f[i] = 8.0 * x[i] * (x[i] * x[i] - x[i - 1]) - 2.0 * (1.0 - x[i]) +
                   4.0 * (x[i] - x[i + 1] * x[i + 1]) + x[i - 1] * x[i - 1] - x[i - 2] +
                   x[i - 1] - x[i - 2] * x[i - 2];
        f[n - 2] = 8.0 * x[n - 2] * (x[n - 2] * x[n - 2] - x[n - 3]) -
                   2.0 * (1.0 - x[n - 2]) + 4.0 * (x[n - 2] - x[n - 1] * x[n - 1]) +
                   x[n - 3] * x[n - 3] - x[n - 4];
        f[n - 1] = 8.0 * x[n - 1] * (x[n - 1] * x[n - 1] - x[n - 2]) -
                   2.0 * (1.0 - x[n - 1]) + x[n - 2] * x[n - 2] - x[n - 3];
        return f;
    };
    spec.system.jacobian = [n](const Vector& x) {
        Triplets trips;
        trips.reserve(static_cast<size_t>(5 * n));
        trips.emplace_back(0, 0, 4.0);
        trips.emplace_back(0, 1, -8.0 * x[1] + 1.0);
        trips.emplace_back(0, 2, -2.0 * x[2]);
        trips.emplace_back(1, 0, -8.0 * x[1]);
        trips.emplace_back(1, 1, 24.0 * x[1] * x[1] - 8.0 * x[0] + 6.0);
        trips.emplace_back(1, 2, -8.0 * x[2] + 1.0);
        trips.emplace_back(1, 3, -2.0 * x[3]);
        for (int i = 2; i < n - 2; ++i) {
            trips.emplace_back(i, i - 2, -1.0 - 2.0 * x[i - 2]);
            trips.emplace_back(i, i - 1, -8.0 * x[i] + 2.0 * x[i - 1] + 1.0);
            trips.emplace_back(i, i, 24.0 * x[i] * x[i] - 8.0 * x[i - 1] + 6.0);
            trips.emplace_back(i, i + 1, -8.0 * x[i + 1]);
        }
        trips.emplace_back(n - 2, n - 4, -1.0);
        trips.emplace_back(n - 2, n - 3, -8.0 * x[n - 2] + 2.0 * x[n - 3]);
        trips.emplace_back(n - 2, n - 2, 24.0 * x[n - 2] * x[n - 2] - 8.0 * x[n - 3] + 6.0);
        trips.emplace_back(n - 2, n - 1, -8.0 * x[n - 1]);
        trips.emplace_back(n - 1, n - 3, -1.0);
        trips.emplace_back(n - 1, n - 2, -8.0 * x[n - 1] + 2.0 * x[n - 2]);
        trips.emplace_back(n - 1, n - 1, 24.0 * x[n - 1] * x[n - 1] - 8.0 * x[n - 2] + 2.0);
        return from_triplets(n, trips);
    };
    spec.initial_guess = Vector::Constant(n, 12.0);
    spec.known_solution = Vector::Ones(n);
    spec.recommended = reference_defaults();
    spec.recommended.g_max = 12;
    return spec;
}

BenchmarkSpec tridimensional_valley(int n) {
    if (n < 3 || n % 3 != 0)
        throw std::invalid_argument("tridimensional_valley: n must be a multiple of 3");
    const double c1 = 1.003344481605351;
    const double c2 = -3.344481605351171e-3;

    BenchmarkSpec spec;
    spec.name = "p5";
    spec.system.dimension = n;
    spec.system.residual = [=](const Vector& x) {
        Vector f(n);
        for (int i = 0; i < n; ++i) {
            switch (i % 3) {
                case 0: {
                    const double xi = x[i];
                    f[i] = (c2 * xi * xi * xi + c1 * xi) * std::exp(-xi * xi / 100.0) - 1.0;
                    break;
                }
                case 1: f[i] = 10.0 * (std::sin(x[i - 1]) - x[i]); break;
                default: f[i] = 10.0 * (std::cos(x[i - 2]) - x[i]); break;
            }
        }
        return f;
    };
    spec.system.jacobian = [=](const Vector& x) {
        Triplets trips;
        trips.reserve(static_cast<size_t>(2 * n));
        for (int i = 0; i < n; ++i) {
            switch (i % 3) {
                case 0: {
                    const double xi = x[i];
                    const double e = std::exp(-xi * xi / 100.0);
                    const double poly = c2 * xi * xi * xi + c1 * xi;
                    trips.emplace_back(i, i,
                                       e * ((3.0 * c2 * xi * xi + c1) - xi / 50.0 * poly));
                    break;
                }
                case 1:
                    trips.emplace_back(i, i - 1, 10.0 * std::cos(x[i - 1]));
                    trips.emplace_back(i, i, -10.0);
                    break;
                default:
                    trips.emplace_back(i, i - 2, -10.0 * std::sin(x[i - 2]));
                    trips.emplace_back(i, i, -10.0);
                    break;
            }
        }
        return from_triplets(n, trips);
    };
    spec.initial_guess = Vector(n);
    for (int i = 0; i < n; ++i) {
        switch (i % 3) {
            case 0: spec.initial_guess[i] = -4.0; break;
            case 1: spec.initial_guess[i] = 1.0; break;
            default: spec.initial_guess[i] = 2.0; break;
        }
    }
    spec.recommended = reference_defaults();
    spec.recommended.g_max = 12;
    spec.recommended.stagnation_tau = 1e-2;
    return spec;
}

BenchmarkSpec make_problem(const std::string& id, const ProblemParams& params) {
    if (id == "chemical") return chemical_equilibrium();
    if (id == "convdiff")
        return convection_diffusion(params.c.value_or(100.0), params.grid.value_or(50));
    if (id == "p1") return modified_rosenbrock(params.size.value_or(60));
    if (id == "p2") return augmented_rosenbrock(params.size.value_or(6000));
    if (id == "p3") return tridiagonal(params.size.value_or(60));
    if (id == "p4") return five_diagonal(params.size.value_or(100));
    if (id == "p5") return tridimensional_valley(params.size.value_or(1200));
    throw std::invalid_argument("unknown problem id '" + id + "'");
}

std::vector<std::string> problem_ids() {
    return {"chemical", "convdiff", "p1", "p2", "p3", "p4", "p5"};
}

}  // namespace forge::problems
