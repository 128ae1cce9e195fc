#include "pcm/pce_model.hpp"

#include <algorithm>
#include <cmath>

#include "pcm/errors.hpp"
#include "pcm/rng.hpp"

namespace pcm {

double evaluate(const PceModel& pce, std::span<const double> xi) {
    if (xi.size() != pce.dim()) throw ShapeError("evaluate: dimension mismatch");
    double y = 0.0;
    for (std::size_t t = 0; t < pce.terms.size(); ++t)
        y += pce.coeffs[t] * basis_eval(pce.terms[t], xi);
    return y;
}

std::vector<double> sample_output(const PceModel& pce, std::size_t count,
                                  std::uint64_t seed) {
    NormalSampler s(seed);
    const unsigned n = pce.dim();
    std::vector<double> xi(n), out(count);
    for (std::size_t i = 0; i < count; ++i) {
        for (unsigned j = 0; j < n; ++j) xi[j] = s.next();
        out[i] = evaluate(pce, xi);
    }
    return out;
}

double analytic_mean(const PceModel& pce) { return pce.coeffs.empty() ? 0.0 : pce.coeffs[0]; }

double analytic_variance(const PceModel& pce) {
    double v = 0.0;
    for (std::size_t t = 1; t < pce.terms.size(); ++t)
        v += pce.coeffs[t] * pce.coeffs[t] * basis_norm_sq(pce.terms[t]);
    return v;
}

double silverman_bandwidth(std::span<const double> samples) {
    const std::size_t n = samples.size();
    double mean = 0.0;
    for (double x : samples) mean += x;
    mean /= static_cast<double>(n);
    double ss = 0.0;
    for (double x : samples) ss += (x - mean) * (x - mean);
    double sd = n > 1 ? std::sqrt(ss / static_cast<double>(n - 1)) : 0.0;

    std::vector<double> sorted(samples.begin(), samples.end());
    std::sort(sorted.begin(), sorted.end());
    auto quantile = [&](double q) {
        double pos = q * static_cast<double>(n - 1);
        std::size_t lo = static_cast<std::size_t>(pos);
        double frac = pos - static_cast<double>(lo);
        return lo + 1 < n ? sorted[lo] * (1.0 - frac) + sorted[lo + 1] * frac : sorted[lo];
    };
    double iqr = quantile(0.75) - quantile(0.25);
    double spread = sd;
    if (iqr > 0.0) spread = std::min(sd, iqr / 1.34);
    return 0.9 * spread * std::pow(static_cast<double>(n), -0.2);
}

std::vector<double> kde_on_grid(std::span<const double> samples, double bandwidth,
                                std::span<const double> grid) {
    const std::size_t n = samples.size();
    const double h = bandwidth;
    // Linear binning keeps the cost at O(N + bins*grid); with bin widths
    // far below h the binning error is negligible next to the KDE error.
    auto [mn_it, mx_it] = std::minmax_element(samples.begin(), samples.end());
    double mn = *mn_it, mx = *mx_it;
    const std::size_t nbins = std::max<std::size_t>(2048, 8 * grid.size());
    double span = mx - mn;
    if (span <= 0.0) span = 1.0;
    double bw = span / static_cast<double>(nbins - 1);
    std::vector<double> weight(nbins, 0.0);
    for (double x : samples) {
        double pos = (x - mn) / bw;
        std::size_t lo = std::min(static_cast<std::size_t>(pos), nbins - 2);
        double frac = pos - static_cast<double>(lo);
        weight[lo] += 1.0 - frac;
        weight[lo + 1] += frac;
    }
    const double norm = 1.0 / (static_cast<double>(n) * h * std::sqrt(2.0 * M_PI));
    std::vector<double> density(grid.size(), 0.0);
    for (std::size_t g = 0; g < grid.size(); ++g) {
        double acc = 0.0;
        for (std::size_t b = 0; b < nbins; ++b) {
            if (weight[b] == 0.0) continue;
            double z = (grid[g] - (mn + bw * static_cast<double>(b))) / h;
            if (std::abs(z) > 8.0) continue;
            acc += weight[b] * std::exp(-0.5 * z * z);
        }
        density[g] = acc * norm;
    }
    return density;
}

PdfCurve pdf_estimate(std::span<const double> samples, std::size_t grid_size) {
    if (samples.size() < 100) throw ParamDomainError("pdf_estimate: needs >= 100 samples");
    if (grid_size < 16) throw ParamDomainError("pdf_estimate: grid_size must be >= 16");
    PdfCurve curve;
    double h = silverman_bandwidth(samples);
    auto [mn_it, mx_it] = std::minmax_element(samples.begin(), samples.end());
    // Constant data still yields a tiny positive bandwidth via rounding in
    // the mean; anything below the data's own precision is a point mass.
    double scale = std::max({1.0, std::abs(*mn_it), std::abs(*mx_it)});
    if (!(h > 1e-12 * scale)) {
        curve.degenerate = true;
        curve.points = {{samples[0], 1.0}};
        return curve;
    }
    curve.bandwidth = h;
    double lo = *mn_it - 3.0 * h, hi = *mx_it + 3.0 * h;
    std::vector<double> grid(grid_size);
    double step = (hi - lo) / static_cast<double>(grid_size - 1);
    for (std::size_t i = 0; i < grid_size; ++i) grid[i] = lo + step * static_cast<double>(i);
    auto density = kde_on_grid(samples, h, grid);
    curve.points.resize(grid_size);
    for (std::size_t i = 0; i < grid_size; ++i) curve.points[i] = {grid[i], density[i]};
    return curve;
}

StatReport report_from_samples(std::vector<double> samples, std::size_t pdf_grid_size) {
    if (samples.size() < 2) throw ParamDomainError("report_from_samples: needs >= 2 samples");
    StatReport r;
    const double N = static_cast<double>(samples.size());
    double mean = 0.0;
    for (double x : samples) mean += x;
    mean /= N;
    double m2 = 0.0, m3 = 0.0;
    for (double x : samples) {
        double dlt = x - mean;
        m2 += dlt * dlt;
        m3 += dlt * dlt * dlt;
    }
    // Constant outputs accumulate O(eps) in the mean; snap the spread to zero
    // so downstream consumers see an exact point mass.
    if (std::sqrt(m2 / N) <= 1e-12 * std::max(1.0, std::abs(mean))) {
        m2 = 0.0;
        m3 = 0.0;
        for (double& x : samples) x = mean;
    }
    r.mean = mean;
    r.variance = m2 / (N - 1.0);
    r.std_dev = std::sqrt(r.variance);
    double sd_pop = std::sqrt(m2 / N);
    r.skewness = sd_pop > 0.0 ? (m3 / N) / (sd_pop * sd_pop * sd_pop) : 0.0;
    r.sample_count = samples.size();
    r.pdf_curve = samples.size() >= 100 ? pdf_estimate(samples, pdf_grid_size)
                                        : PdfCurve{};
    r.samples = std::move(samples);
    return r;
}

StatReport stats(const PceModel& pce, std::size_t count, std::uint64_t seed,
                 std::size_t pdf_grid_size) {
    if (count < 2) throw ParamDomainError("stats: count must be >= 2");
    auto r = report_from_samples(sample_output(pce, count, seed), pdf_grid_size);
    r.analytic_mean = analytic_mean(pce);
    r.analytic_variance = analytic_variance(pce);
    return r;
}

}  // namespace pcm
