#pragma once

#include <iosfwd>
#include <string>

#include <json.hpp>

#include "forge/core.hpp"

namespace forge {

[[nodiscard]] nlohmann::json to_json(const IterationRecord& rec);
[[nodiscard]] nlohmann::json to_json(const SolveReport& report);

/// History CSV with header
/// `k,residual_norm,step_length,line_search_count,forcing_term,stagnant`.
void write_history_csv(std::ostream& os, const SolveReport& report);

/// Residual-history plot data: `k,residual_norm` rows starting at the
/// initial point. PIN^L reports instead emit `phase,k,residual_norm` rows,
/// one per sample or step across the training/subspace/global phases.
void write_history_plot_data(std::ostream& os, const SolveReport& report);

/// One-line summary `problem solver N_ite T N_sta converged`. For PIN^L
/// reports N_ite and N_sta are the across-phase totals.
[[nodiscard]] std::string summary_line(const std::string& problem,
                                       const SolveReport& report);

void write_report_files(const SolveReport& report, const std::string& out_path);

}  // namespace forge
