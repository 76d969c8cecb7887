#include <doctest.h>

#include <sstream>

#include "forge/sweep.hpp"

using namespace forge;

TEST_CASE("run spec parsing splits problem parameters from option overrides") {
    const auto row = nlohmann::json::parse(
        R"({"problem":"p3","solver":"ardn","size":60,"gmax":12,"alpha_star":0.24})");
    const RunSpec spec = parse_run_spec(row);
    CHECK(spec.problem == "p3");
    CHECK(spec.solver == "ardn");
    REQUIRE(spec.params.size.has_value());
    CHECK(*spec.params.size == 60);
    CHECK(spec.option_overrides.size() == 2);

    SolverOptions opt = apply_option_overrides(SolverOptions{}, spec.option_overrides);
    CHECK(opt.g_max == 12);
    CHECK(opt.initial_learning_rate == 0.24);
}

TEST_CASE("unknown option keys and solvers are rejected") {
    CHECK_THROWS_AS(
        (void)parse_run_spec(nlohmann::json::parse(
            R"({"problem":"p3","solver":"ardn","gmx":12})")),
        std::invalid_argument);
    CHECK_THROWS_AS(
        (void)parse_run_spec(nlohmann::json::parse(
            R"({"problem":"p3","solver":"newton"})")),
        std::invalid_argument);
    CHECK_THROWS_AS(
        (void)parse_run_spec(nlohmann::json::parse(R"({"solver":"inb"})")),
        std::invalid_argument);
}

TEST_CASE("empty manifest produces a header-only CSV") {
    std::istringstream manifest("\n \n");
    const auto rows = parse_manifest(manifest);
    CHECK(rows.empty());
    const auto result = run_sweep(rows, 1);
    CHECK_FALSE(result.any_error());

    std::ostringstream os;
    write_sweep_csv(os, result);
    CHECK(os.str() ==
          "problem,params,solver,n_ite,wall_time_seconds,n_sta,converged,error\n");
}

TEST_CASE("sweep keeps manifest order, records per-row errors, and runs concurrently") {
    std::istringstream manifest(R"({"problem":"p3","solver":"ardn","size":12}
{"problem":"nope","solver":"inb"}
not even json
{"problem":"p3","solver":"inb","size":12}
)");
    const auto rows = parse_manifest(manifest);
    REQUIRE(rows.size() == 4);
    CHECK(rows[0].spec.has_value());
    CHECK(rows[1].spec.has_value());  // parses fine; fails at execution
    CHECK_FALSE(rows[2].spec.has_value());

    const auto result = run_sweep(rows, 2);
    REQUIRE(result.rows.size() == 4);
    CHECK(result.rows[0].error.empty());
    CHECK(result.rows[0].report.has_value());
    CHECK(result.rows[0].report->converged);
    CHECK_FALSE(result.rows[1].error.empty());
    CHECK_FALSE(result.rows[2].error.empty());
    CHECK(result.rows[3].error.empty());
    CHECK(result.any_error());

    // Output order matches the manifest regardless of scheduling.
    CHECK(result.rows[0].solver == "ardn");
    CHECK(result.rows[3].solver == "inb");
    CHECK(result.rows[0].params == "size=12");
}

TEST_CASE("sequential and concurrent sweeps agree") {
    std::istringstream manifest(R"({"problem":"p3","solver":"ardn","size":12}
{"problem":"p1","solver":"ardn","size":10}
)");
    const auto rows = parse_manifest(manifest);
    const auto seq = run_sweep(rows, 1);
    const auto par = run_sweep(rows, 2);
    REQUIRE(seq.rows.size() == par.rows.size());
    for (size_t i = 0; i < seq.rows.size(); ++i) {
        REQUIRE(seq.rows[i].report.has_value());
        REQUIRE(par.rows[i].report.has_value());
        CHECK(seq.rows[i].report->n_ite == par.rows[i].report->n_ite);
        CHECK(seq.rows[i].report->final_residual_norm ==
              par.rows[i].report->final_residual_norm);
    }
}
