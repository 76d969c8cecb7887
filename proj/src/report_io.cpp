#include "forge/report_io.hpp"

#include <cstdio>
#include <fstream>
#include <ostream>
#include <sstream>
#include <stdexcept>

namespace forge {

namespace {

std::string format_double(double v) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

std::string stem_of(const std::string& path) {
    const auto dot = path.rfind('.');
    const auto slash = path.rfind('/');
    if (dot == std::string::npos || (slash != std::string::npos && dot < slash))
        return path;
    return path.substr(0, dot);
}

void write_plot_rows(std::ostream& os, const char* phase,
                     const std::vector<IterationRecord>& history, int k0) {
    int k = k0;
    for (const IterationRecord& rec : history)
        os << phase << ',' << k++ << ',' << format_double(rec.residual_norm) << '\n';
}

}  // namespace

nlohmann::json to_json(const IterationRecord& rec) {
    nlohmann::json j{{"k", rec.index},
                     {"residual_norm", rec.residual_norm},
                     {"step_length", rec.step_length},
                     {"line_search_count", rec.line_search_count},
                     {"forcing_term", rec.forcing_term},
                     {"stagnant", rec.stagnant},
                     {"armijo_satisfied", rec.armijo_satisfied},
                     {"merit_before", rec.merit_before},
                     {"merit_after", rec.merit_after},
                     {"directional_term", rec.directional_term},
                     {"linear_model_norm", rec.linear_model_norm},
                     {"gmres_achieved_rel", rec.gmres_achieved_rel},
                     {"gmres_iterations", rec.gmres_iterations}};
    if (rec.weight_min) j["weight_min"] = *rec.weight_min;
    if (rec.weight_max) j["weight_max"] = *rec.weight_max;
    return j;
}

nlohmann::json to_json(const SolveReport& report) {
    nlohmann::json j{{"solver", report.solver},
                     {"converged", report.converged},
                     {"n_ite", report.n_ite},
                     {"n_sta", report.n_sta},
                     {"wall_time_seconds", report.wall_time_seconds},
                     {"initial_residual_norm", report.initial_residual_norm},
                     {"final_residual_norm", report.final_residual_norm}};
    if (!report.failure_reason.empty()) j["failure_reason"] = report.failure_reason;

    j["final_point"] = nlohmann::json::array();
    for (Index i = 0; i < report.final_point.size(); ++i)
        j["final_point"].push_back(report.final_point[i]);

    j["history"] = nlohmann::json::array();
    for (const IterationRecord& rec : report.history) j["history"].push_back(to_json(rec));

    if (report.phases) {
        const PinlPhases& ph = *report.phases;
        nlohmann::json p;
        p["training"] = to_json(ph.training);
        p["training_samples"] = ph.training_samples;
        p["subspace"] = to_json(ph.subspace);
        p["global"] = to_json(ph.global);
        p["subspace_projected_norms"] = ph.subspace_projected_norms;
        p["early_convergence"] = ph.early_convergence;
        p["subspace_fallback"] = ph.subspace_fallback;
        j["phases"] = std::move(p);
    }
    return j;
}

void write_history_csv(std::ostream& os, const SolveReport& report) {
    os << "k,residual_norm,step_length,line_search_count,forcing_term,stagnant\n";
    for (const IterationRecord& rec : report.history) {
        os << rec.index << ',' << format_double(rec.residual_norm) << ','
           << format_double(rec.step_length) << ',' << rec.line_search_count << ','
           << format_double(rec.forcing_term) << ',' << (rec.stagnant ? 1 : 0) << '\n';
    }
}

void write_history_plot_data(std::ostream& os, const SolveReport& report) {
    if (report.phases && !report.phases->early_convergence) {
        const PinlPhases& ph = *report.phases;
        os << "phase,k,residual_norm\n";
        os << "training,0," << format_double(ph.training.initial_residual_norm) << '\n';
        write_plot_rows(os, "training", ph.training.history, 1);
        write_plot_rows(os, "subspace", ph.subspace.history, 1);
        write_plot_rows(os, "global", ph.global.history, 1);
        return;
    }
    os << "k,residual_norm\n";
    os << "0," << format_double(report.initial_residual_norm) << '\n';
    for (const IterationRecord& rec : report.history)
        os << rec.index << ',' << format_double(rec.residual_norm) << '\n';
}

std::string summary_line(const std::string& problem, const SolveReport& report) {
    std::ostringstream os;
    os << problem << ' ' << report.solver << ' ' << report.n_ite << ' '
       << format_double(report.wall_time_seconds) << ' ' << report.n_sta << ' '
       << (report.converged ? "true" : "false");
    return os.str();
}

void write_report_files(const SolveReport& report, const std::string& out_path) {
    {
        std::ofstream json_out(out_path);
        if (!json_out) throw std::runtime_error("cannot open output file " + out_path);
        json_out << to_json(report).dump(2) << '\n';
    }
    const std::string stem = stem_of(out_path);
    {
        std::ofstream csv_out(stem + ".history.csv");
        write_history_csv(csv_out, report);
    }
    {
        std::ofstream plot_out(stem + ".plot.csv");
        write_history_plot_data(plot_out, report);
    }
}

}  // namespace forge
