#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "pcm/collocation.hpp"
#include "pcm/distributions.hpp"
#include "pcm/hermite.hpp"

namespace pcm {

struct FitMeta {
    double rcond = 0.0;
    std::string solve_path;  // "square" | "least_squares"
    std::uint64_t seed = 0;
    std::optional<CollocationPlan> plan;
};

// Fitted Hermite chaos expansion of one scalar output.
struct PceModel {
    std::vector<InputSpec> inputs;
    unsigned degree = 0;
    std::vector<MultiIndex> terms;
    std::vector<double> coeffs;
    FitMeta fit_meta;

    unsigned dim() const { return static_cast<unsigned>(inputs.size()); }
};

struct PdfPoint {
    double x = 0.0;
    double density = 0.0;
};

struct PdfCurve {
    std::vector<PdfPoint> points;
    double bandwidth = 0.0;
    bool degenerate = false;  // zero-variance sample set, single spike
};

struct StatReport {
    double mean = 0.0;      // Eq.-style 1/N estimator
    double variance = 0.0;  // 1/(N-1) estimator
    double std_dev = 0.0;
    double skewness = 0.0;  // sample third standardized moment
    std::size_t sample_count = 0;
    std::optional<double> analytic_mean;      // a0 (expansion-based reports only)
    std::optional<double> analytic_variance;  // sum a_t^2 * norm_sq(t), t != 0
    PdfCurve pdf_curve;
    std::vector<double> samples;
};

double evaluate(const PceModel& pce, std::span<const double> xi);

// Evaluates the expansion at seed-reproducible iid standard normal xi
// vectors. No model runs are involved.
std::vector<double> sample_output(const PceModel& pce, std::size_t count,
                                  std::uint64_t seed);

StatReport stats(const PceModel& pce, std::size_t count, std::uint64_t seed,
                 std::size_t pdf_grid_size = 256);

double analytic_mean(const PceModel& pce);
double analytic_variance(const PceModel& pce);

// Gaussian KDE with Silverman's bandwidth on a uniform grid spanning
// [min-3h, max+3h]. Degenerate (zero variance) sample sets return a
// single-spike curve with the degenerate flag set.
PdfCurve pdf_estimate(std::span<const double> samples, std::size_t grid_size = 256);

// KDE with a caller-supplied bandwidth evaluated on a caller-supplied grid;
// used to compare two curves on a common abscissa.
std::vector<double> kde_on_grid(std::span<const double> samples, double bandwidth,
                                std::span<const double> grid);

double silverman_bandwidth(std::span<const double> samples);

// Builds a StatReport (moments, skewness, KDE) from raw output samples.
StatReport report_from_samples(std::vector<double> samples, std::size_t pdf_grid_size = 256);

}  // namespace pcm
