#pragma once

#include <optional>
#include <string>
#include <vector>

#include "forge/core.hpp"

namespace forge::problems {

/// A benchmark system with its prescribed starting point and the solver
/// settings used for it in the reference experiments.
struct BenchmarkSpec {
    std::string name;
    NonlinearSystem system;
    Vector initial_guess;
    SolverOptions recommended;
    std::optional<Vector> known_solution;
};

/// Five-species chemical equilibrium system, finite-difference Jacobian.
[[nodiscard]] BenchmarkSpec chemical_equilibrium();

/// Central-difference discretization of Delta u + C u (u_x + u_y) = g on the
/// unit square with zero Dirichlet data, grid_n x grid_n interior unknowns.
/// g is chosen analytically so u = 10 x y (1-x)(1-y) exp(x^4.5) solves the
/// PDE.
[[nodiscard]] BenchmarkSpec convection_diffusion(double c, int grid_n);

/// Modified Rosenbrock system (n even).
[[nodiscard]] BenchmarkSpec modified_rosenbrock(int n);

/// Augmented Rosenbrock system (n a multiple of 4).
[[nodiscard]] BenchmarkSpec augmented_rosenbrock(int n);

/// Tridiagonal system (n >= 3).
[[nodiscard]] BenchmarkSpec tridiagonal(int n);

/// Five-diagonal system (n >= 5).
[[nodiscard]] BenchmarkSpec five_diagonal(int n);

/// Tridimensional-valley system (n a multiple of 3).
[[nodiscard]] BenchmarkSpec tridimensional_valley(int n);

/// The manufactured convection-diffusion solution and forcing, exposed for
/// consistency checks.
[[nodiscard]] double convdiff_exact_solution(double x, double y);
[[nodiscard]] double convdiff_forcing(double x, double y, double c);

struct ProblemParams {
    std::optional<int> size;
    std::optional<double> c;
    std::optional<int> grid;
};

/// Registry keyed by `chemical | convdiff | p1 | p2 | p3 | p4 | p5`; missing
/// parameters fall back to the smallest size used in the reference tables.
/// Throws std::invalid_argument for unknown ids or invalid sizes.
[[nodiscard]] BenchmarkSpec make_problem(const std::string& id,
                                         const ProblemParams& params = {});

[[nodiscard]] std::vector<std::string> problem_ids();

}  // namespace forge::problems
