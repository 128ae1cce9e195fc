#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "pcm/distributions.hpp"
#include "pcm/gate_models.hpp"
#include "pcm/pce_model.hpp"

namespace pcm {

struct McConfig {
    std::size_t sample_count = 100000;
    std::uint64_t seed = 0;
    std::optional<double> truncation = 3.0;  // srv units
};

// Direct model sampling: srv draws (truncated per config / per input),
// transformed to physical values, pushed through the gate model.
StatReport mc_run(const GateModel& model, const std::vector<InputSpec>& specs,
                  const McConfig& cfg, std::size_t pdf_grid_size = 256);

struct ComparisonRow {
    double mc_mean = 0.0;
    double pcm_mean = 0.0;
    double mean_err_pct = 0.0;  // 100*(pcm-mc)/mc, signed
    double mc_sd = 0.0;
    double pcm_sd = 0.0;
    double sd_err_pct = 0.0;
    double max_pdf_gap = 0.0;  // max |pcm - mc| density on a common grid
    bool mean_err_is_absolute = false;  // mc mean was zero
    bool sd_err_is_absolute = false;
};

ComparisonRow compare(const StatReport& pcm_report, const StatReport& mc_report);

}  // namespace pcm
