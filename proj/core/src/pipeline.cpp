#include "pcm/pipeline.hpp"

#include <algorithm>
#include <filesystem>

#include "pcm/collocation.hpp"
#include "pcm/errors.hpp"
#include "pcm/rng.hpp"

namespace pcm {

namespace fs = std::filesystem;

namespace {

constexpr std::size_t kDefaultReportSamples = 100000;

ProblemSpec with_overrides(ProblemSpec spec, const RunOptions& opts) {
    if (opts.degree) spec.degree = *opts.degree;
    if (opts.seed) spec.seed = *opts.seed;
    if (opts.mc_samples) spec.mc.sample_count = *opts.mc_samples;
    if (opts.timeout_ms) spec.model.timeout = std::chrono::milliseconds(*opts.timeout_ms);
    validate(spec);
    return spec;
}

SrvModelFn srv_model(const ProblemSpec& spec) {
    return [&spec](std::span<const double> xi) {
        std::map<std::string, double> physical;
        for (std::size_t i = 0; i < spec.inputs.size(); ++i)
            physical[spec.inputs[i].name] = to_physical(spec.inputs[i], xi[i]);
        return eval_gate(spec.model, physical);
    };
}

std::string out_path(const RunOptions& opts, const std::string& name,
                     const std::string& suffix) {
    fs::create_directories(opts.out_dir);
    return (fs::path(opts.out_dir) / (name + suffix)).string();
}

// Both PDF curves evaluated on the union grid so the emitted CSVs share
// their abscissas.
struct AlignedCurves {
    std::vector<double> grid;
    std::vector<double> pcm_density;
    std::vector<double> mc_density;
};

AlignedCurves aligned_curves(const StatReport& pcm_report, const StatReport& mc_report) {
    AlignedCurves ac;
    double lo = std::min(pcm_report.pdf_curve.points.front().x,
                         mc_report.pdf_curve.points.front().x);
    double hi = std::max(pcm_report.pdf_curve.points.back().x,
                         mc_report.pdf_curve.points.back().x);
    const std::size_t g = std::max(pcm_report.pdf_curve.points.size(),
                                   mc_report.pdf_curve.points.size());
    ac.grid.resize(g);
    double step = (hi - lo) / static_cast<double>(g - 1);
    for (std::size_t i = 0; i < g; ++i) ac.grid[i] = lo + step * static_cast<double>(i);
    ac.pcm_density = kde_on_grid(pcm_report.samples, pcm_report.pdf_curve.bandwidth, ac.grid);
    ac.mc_density = kde_on_grid(mc_report.samples, mc_report.pdf_curve.bandwidth, ac.grid);
    return ac;
}

std::string comparison_csv_header() {
    return "example,mc_mean,pcm_mean,mean_err_pct,mc_sd,pcm_sd,sd_err_pct,max_pdf_gap\r\n";
}

std::string comparison_csv_row(const std::string& name, const ComparisonRow& row) {
    return csv_escape(name) + "," + format_double(row.mc_mean) + "," +
           format_double(row.pcm_mean) + "," + format_double(row.mean_err_pct) + "," +
           format_double(row.mc_sd) + "," + format_double(row.pcm_sd) + "," +
           format_double(row.sd_err_pct) + "," + format_double(row.max_pdf_gap) + "\r\n";
}

std::string stats_json(const CompareOutcome& oc) {
    auto block = [](const StatReport& r) {
        std::string s = "{\n";
        s += "    \"mean\": " + format_double(r.mean) + ",\n";
        s += "    \"variance\": " + format_double(r.variance) + ",\n";
        s += "    \"std_dev\": " + format_double(r.std_dev) + ",\n";
        s += "    \"skewness\": " + format_double(r.skewness) + ",\n";
        s += "    \"sample_count\": " + std::to_string(r.sample_count);
        if (r.analytic_mean)
            s += ",\n    \"analytic_mean\": " + format_double(*r.analytic_mean);
        if (r.analytic_variance)
            s += ",\n    \"analytic_variance\": " + format_double(*r.analytic_variance);
        s += "\n  }";
        return s;
    };
    return "{\n  \"pcm\": " + block(oc.pcm_report) + ",\n  \"mc\": " + block(oc.mc_report) +
           "\n}\n";
}

}  // namespace

FitOutcome fit_problem(const ProblemSpec& raw, const RunOptions& opts) {
    ProblemSpec spec = with_overrides(raw, opts);
    auto model = srv_model(spec);
    auto fr = fit_pce(model, static_cast<unsigned>(spec.inputs.size()), spec.degree,
                      spec.seed);
    FitOutcome out;
    out.model.inputs = spec.inputs;
    out.model.degree = spec.degree;
    out.model.terms = std::move(fr.terms);
    out.model.coeffs = std::move(fr.coeffs);
    out.model.fit_meta = {fr.info.rcond, fr.info.path, spec.seed, fr.plan};
    out.plan = std::move(fr.plan);
    out.model_evals = fr.model_evals;
    return out;
}

CompareOutcome compare_problem(const ProblemSpec& raw, const RunOptions& opts) {
    ProblemSpec spec = with_overrides(raw, opts);
    if (!spec.has_mc) throw SpecError("spec '" + spec.name + "': compare needs an mc block");
    auto fit = fit_problem(spec, {});
    CompareOutcome oc;
    oc.model = std::move(fit.model);
    oc.model_evals = fit.model_evals;
    std::size_t pcm_count = spec.has_mc ? spec.mc.sample_count : kDefaultReportSamples;
    oc.pcm_report = stats(oc.model, pcm_count, derive_seed(spec.seed, /*tag=*/1));
    oc.mc_report = mc_run(spec.model, spec.inputs, spec.mc);
    oc.row = compare(oc.pcm_report, oc.mc_report);
    return oc;
}

FitOutcome run_fit(const std::string& spec_path, const RunOptions& opts) {
    ProblemSpec spec = with_overrides(load_problem_spec(spec_path), opts);
    auto out = fit_problem(spec, {});
    if (spec.outputs.empty() || spec.outputs.count("pce")) {
        auto p = out_path(opts, spec.name, ".pce.json");
        write_text_file(p, pce_model_to_json(out.model));
        out.files_written.push_back(p);
    }
    if (opts.emit_plan || spec.outputs.count("plan")) {
        auto p = out_path(opts, spec.name, ".plan.json");
        write_text_file(p, plan_to_json(out.plan, out.model.fit_meta.rcond,
                                        out.model.fit_meta.solve_path));
        out.files_written.push_back(p);
    }
    return out;
}

CompareOutcome run_compare(const std::string& spec_path, const RunOptions& opts) {
    ProblemSpec spec = with_overrides(load_problem_spec(spec_path), opts);
    auto oc = compare_problem(spec, {});

    auto pc = out_path(opts, spec.name, ".comparison.csv");
    write_text_file(pc, comparison_csv_header() + comparison_csv_row(spec.name, oc.row));
    oc.files_written.push_back(pc);

    auto ac = aligned_curves(oc.pcm_report, oc.mc_report);
    auto pp = out_path(opts, spec.name, ".pcm_pdf.csv");
    write_text_file(pp, pdf_curve_to_csv(ac.grid, ac.pcm_density));
    oc.files_written.push_back(pp);
    auto pm = out_path(opts, spec.name, ".mc_pdf.csv");
    write_text_file(pm, pdf_curve_to_csv(ac.grid, ac.mc_density));
    oc.files_written.push_back(pm);

    if (spec.outputs.count("pce")) {
        auto p = out_path(opts, spec.name, ".pce.json");
        write_text_file(p, pce_model_to_json(oc.model));
        oc.files_written.push_back(p);
    }
    if (opts.emit_plan || spec.outputs.count("plan")) {
        auto p = out_path(opts, spec.name, ".plan.json");
        write_text_file(p, plan_to_json(*oc.model.fit_meta.plan, oc.model.fit_meta.rcond,
                                        oc.model.fit_meta.solve_path));
        oc.files_written.push_back(p);
    }
    if (spec.outputs.count("stats")) {
        auto p = out_path(opts, spec.name, ".stats.json");
        write_text_file(p, stats_json(oc));
        oc.files_written.push_back(p);
    }
    return oc;
}

TableOutcome run_table(const std::string& spec_dir, const RunOptions& opts) {
    std::vector<std::string> spec_files;
    if (!fs::is_directory(spec_dir)) throw SpecError("not a directory: " + spec_dir);
    for (const auto& e : fs::directory_iterator(spec_dir))
        if (e.is_regular_file() && e.path().extension() == ".json")
            spec_files.push_back(e.path().string());
    std::sort(spec_files.begin(), spec_files.end());
    if (spec_files.empty()) throw SpecError("no .json specs in directory: " + spec_dir);

    std::string csv = "example,mc_mean,pcm_mean,mean_err_pct,mc_sd,pcm_sd,sd_err_pct,error\r\n";
    TableOutcome out;
    for (const auto& f : spec_files) {
        std::string name = fs::path(f).stem().string();
        try {
            ProblemSpec spec = with_overrides(load_problem_spec(f), opts);
            auto oc = compare_problem(spec, {});
            csv += csv_escape(spec.name) + "," + format_double(oc.row.mc_mean) + "," +
                   format_double(oc.row.pcm_mean) + "," +
                   format_double(oc.row.mean_err_pct) + "," +
                   format_double(oc.row.mc_sd) + "," + format_double(oc.row.pcm_sd) + "," +
                   format_double(oc.row.sd_err_pct) + ",\r\n";
            ++out.rows_ok;
        } catch (const Error& e) {
            csv += csv_escape(name) + ",,,,,,," + csv_escape(e.what()) + "\r\n";
            ++out.rows_failed;
        }
    }
    out.csv_path = out_path(opts, "table", ".csv");
    write_text_file(out.csv_path, csv);
    return out;
}

int exit_code_for_current_exception() {
    try {
        throw;
    } catch (const SpecError&) {
        return 2;
    } catch (const ExternalModelError&) {
        return 4;
    } catch (const SingularSystemError&) {
        return 3;
    } catch (const PlanningError&) {
        return 3;
    } catch (...) {
        return 1;
    }
}

}  // namespace pcm
