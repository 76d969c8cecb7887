#pragma once

#include <vector>

#include "forge/core.hpp"

namespace forge::detail {

/// The Newton-with-backtracking loop shared by INB and ARDN. With
/// adaptive_weights=false the weight vector stays at the initial weights and
/// the records carry no weight statistics, which is exactly INB. Optional
/// logs collect the iterate/residual sequences (including the initial point)
/// for training-data capture.
SolveReport newton_backtracking_solve(const NonlinearSystem& system, const Vector& x0,
                                      const SolverOptions& options, bool adaptive_weights,
                                      const char* solver_name,
                                      std::vector<Vector>* iterate_log = nullptr,
                                      std::vector<Vector>* residual_log = nullptr);

}  // namespace forge::detail
