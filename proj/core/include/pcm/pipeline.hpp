#pragma once

#include <optional>
#include <string>
#include <vector>

#include "pcm/monte_carlo.hpp"
#include "pcm/pce_model.hpp"
#include "pcm/problem_spec.hpp"

namespace pcm {

// Command-line overrides; spec values win unless overridden.
struct RunOptions {
    std::optional<unsigned> degree;
    std::optional<std::uint64_t> seed;
    std::optional<std::size_t> mc_samples;
    std::optional<long> timeout_ms;
    bool emit_plan = false;
    std::string out_dir = ".";
};

struct FitOutcome {
    PceModel model;
    CollocationPlan plan;
    std::size_t model_evals = 0;
    std::vector<std::string> files_written;
};

struct CompareOutcome {
    ComparisonRow row;
    StatReport pcm_report;
    StatReport mc_report;
    PceModel model;
    std::size_t model_evals = 0;
    std::vector<std::string> files_written;
};

// In-memory pipelines (no file output); used by the commands and by tests.
FitOutcome fit_problem(const ProblemSpec& spec, const RunOptions& opts = {});
CompareOutcome compare_problem(const ProblemSpec& spec, const RunOptions& opts = {});

// fit: transforms -> plan -> model evaluations at collocation points ->
// coefficient solve -> <name>.pce.json (+ <name>.plan.json).
FitOutcome run_fit(const std::string& spec_path, const RunOptions& opts);

// compare: fit pipeline, sampled PCM stats, MC oracle, comparison row and
// two PDF curves on a shared abscissa.
CompareOutcome run_compare(const std::string& spec_path, const RunOptions& opts);

struct TableOutcome {
    std::string csv_path;
    std::size_t rows_ok = 0;
    std::size_t rows_failed = 0;
};

// table: one comparison row per spec file in the directory.
TableOutcome run_table(const std::string& spec_dir, const RunOptions& opts);

// Shared exit-code mapping: 0 ok, 2 schema, 3 solve, 4 external model.
int exit_code_for_current_exception();

}  // namespace pcm
