#include "pcm/monte_carlo.hpp"

#include <algorithm>
#include <cmath>

#include "pcm/errors.hpp"
#include "pcm/rng.hpp"

namespace pcm {

StatReport mc_run(const GateModel& model, const std::vector<InputSpec>& specs,
                  const McConfig& cfg, std::size_t pdf_grid_size) {
    if (cfg.sample_count < 100)
        throw ParamDomainError("mc_run: sample_count must be >= 100");
    validate(model);
    for (const auto& s : specs) validate(s);
    for (const auto& [name, arg] : model.binding) {
        (void)arg;
        if (std::none_of(specs.begin(), specs.end(),
                         [&](const InputSpec& s) { return s.name == name; }))
            throw SpecError("mc_run: bound input '" + name + "' has no InputSpec");
    }

    NormalSampler sampler(cfg.seed);
    std::vector<double> samples(cfg.sample_count);
    std::map<std::string, double> physical;
    for (std::size_t i = 0; i < cfg.sample_count; ++i) {
        for (const auto& spec : specs) {
            auto k = spec.truncation ? spec.truncation : cfg.truncation;
            double xi = k ? sampler.next_truncated(*k) : sampler.next();
            physical[spec.name] = to_physical(spec, xi);
        }
        try {
            samples[i] = eval_gate(model, physical);
        } catch (const ExternalModelError& e) {
            throw ExternalModelError("mc_run: sample " + std::to_string(i) + ": " +
                                         e.what(),
                                     e.captured_output);
        }
    }
    return report_from_samples(std::move(samples), pdf_grid_size);
}

ComparisonRow compare(const StatReport& pcm_report, const StatReport& mc_report) {
    if (pcm_report.sample_count < 2 || mc_report.sample_count < 2)
        throw ParamDomainError("compare: reports must be nondegenerate");
    ComparisonRow row;
    row.pcm_mean = pcm_report.mean;
    row.mc_mean = mc_report.mean;
    row.pcm_sd = pcm_report.std_dev;
    row.mc_sd = mc_report.std_dev;
    if (mc_report.mean != 0.0) {
        row.mean_err_pct = 100.0 * (pcm_report.mean - mc_report.mean) / mc_report.mean;
    } else {
        row.mean_err_pct = pcm_report.mean - mc_report.mean;
        row.mean_err_is_absolute = true;
    }
    if (mc_report.std_dev != 0.0) {
        row.sd_err_pct = 100.0 * (pcm_report.std_dev - mc_report.std_dev) / mc_report.std_dev;
    } else {
        row.sd_err_pct = pcm_report.std_dev - mc_report.std_dev;
        row.sd_err_is_absolute = true;
    }

    // PDF gap on the union grid, each curve re-evaluated from its samples
    // with its own bandwidth.
    if (!pcm_report.pdf_curve.degenerate && !mc_report.pdf_curve.degenerate &&
        !pcm_report.pdf_curve.points.empty() && !mc_report.pdf_curve.points.empty() &&
        !pcm_report.samples.empty() && !mc_report.samples.empty()) {
        double lo = std::min(pcm_report.pdf_curve.points.front().x,
                             mc_report.pdf_curve.points.front().x);
        double hi = std::max(pcm_report.pdf_curve.points.back().x,
                             mc_report.pdf_curve.points.back().x);
        const std::size_t g = std::max<std::size_t>(pcm_report.pdf_curve.points.size(),
                                                    mc_report.pdf_curve.points.size());
        std::vector<double> grid(g);
        double step = (hi - lo) / static_cast<double>(g - 1);
        for (std::size_t i = 0; i < g; ++i) grid[i] = lo + step * static_cast<double>(i);
        auto dp = kde_on_grid(pcm_report.samples, pcm_report.pdf_curve.bandwidth, grid);
        auto dm = kde_on_grid(mc_report.samples, mc_report.pdf_curve.bandwidth, grid);
        double gap = 0.0;
        for (std::size_t i = 0; i < g; ++i) gap = std::max(gap, std::abs(dp[i] - dm[i]));
        row.max_pdf_gap = gap;
    }
    return row;
}

}  // namespace pcm
