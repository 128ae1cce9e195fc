#include "pcm/collocation.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <set>

#include "pcm/errors.hpp"
#include "pcm/rng.hpp"

namespace pcm {

namespace {

double sq_norm(const std::vector<double>& p) {
    double s = 0.0;
    for (double x : p) s += x * x;
    return s;
}

std::vector<double> negated(const std::vector<double>& p) {
    std::vector<double> q(p.size());
    for (std::size_t i = 0; i < p.size(); ++i) q[i] = p[i] == 0.0 ? 0.0 : -p[i];
    return q;
}

}  // namespace

CandidateSet candidate_points(unsigned n, unsigned d) {
    if (n < 1 || d < 1) throw RangeError("candidate_points: n and d must be >= 1");
    auto roots = hermite_roots(d + 1);
    CandidateSet cs;
    cs.axis_values = roots;
    if (std::find(roots.begin(), roots.end(), 0.0) == roots.end()) {
        cs.axis_values.push_back(0.0);
        std::sort(cs.axis_values.begin(), cs.axis_values.end());
    }
    std::size_t root_only = 1, augmented = 1;
    for (unsigned i = 0; i < n; ++i) {
        root_only *= roots.size();
        augmented *= cs.axis_values.size();
    }
    cs.root_only_count = root_only;
    cs.augmented_count = augmented;
    cs.points.reserve(augmented);
    std::vector<std::size_t> idx(n, 0);
    for (;;) {
        std::vector<double> p(n);
        for (unsigned i = 0; i < n; ++i) p[i] = cs.axis_values[idx[i]];
        cs.points.push_back(std::move(p));
        unsigned pos = n;
        while (pos > 0) {
            --pos;
            if (++idx[pos] < cs.axis_values.size()) break;
            idx[pos] = 0;
            if (pos == 0) return cs;
        }
    }
}

CollocationPlan select_points(unsigned n, unsigned d, std::uint64_t seed) {
    auto terms = basis_terms(n, d);
    auto roots = hermite_roots(d + 1);
    std::vector<double> nonzero_roots;
    for (double r : roots)
        if (r != 0.0) nonzero_roots.push_back(r);

    CollocationPlan plan;
    plan.n = n;
    plan.d = d;
    {
        auto cs = candidate_points(n, d);
        plan.root_only_candidates = cs.root_only_count;
        plan.augmented_candidates = cs.augmented_count;
    }

    std::set<std::vector<double>> taken;
    std::mt19937_64 rng(derive_seed(seed, /*tag=*/0x706c616e));

    for (std::size_t ti = 0; ti < terms.size(); ++ti) {
        std::vector<std::size_t> support;
        for (std::size_t i = 0; i < n; ++i)
            if (terms[ti].exponents[i] > 0) support.push_back(i);

        if (support.empty()) {
            std::vector<double> origin(n, 0.0);
            taken.insert(origin);
            plan.points.push_back(std::move(origin));
            plan.provenance.push_back({ti, "origin"});
            continue;
        }

        // Admissible: nonzero roots on the support, zero elsewhere.
        std::vector<std::vector<double>> cands;
        std::vector<std::size_t> ci(support.size(), 0);
        for (;;) {
            std::vector<double> p(n, 0.0);
            for (std::size_t k = 0; k < support.size(); ++k)
                p[support[k]] = nonzero_roots[ci[k]];
            if (!taken.count(p)) cands.push_back(std::move(p));
            std::size_t pos = support.size();
            bool done = false;
            while (pos > 0) {
                --pos;
                if (++ci[pos] < nonzero_roots.size()) break;
                ci[pos] = 0;
                if (pos == 0) done = true;
            }
            if (done) break;
        }
        if (cands.empty())
            throw PlanningError("select_points: no admissible candidate for term " +
                                std::to_string(ti));

        std::string rule = "unique";
        if (cands.size() > 1) {
            // Closer to the origin first.
            double best = sq_norm(cands[0]);
            for (const auto& p : cands) best = std::min(best, sq_norm(p));
            std::erase_if(cands, [&](const auto& p) { return sq_norm(p) > best + 1e-12; });
            rule = "norm";
        }
        if (cands.size() > 1) {
            // Prefer a candidate whose negation is already selected.
            std::vector<std::vector<double>> sym;
            for (const auto& p : cands)
                if (taken.count(negated(p))) sym.push_back(p);
            if (!sym.empty() && sym.size() < cands.size()) {
                cands = std::move(sym);
                rule = "symmetry";
            }
        }
        std::vector<double> chosen;
        if (cands.size() == 1) {
            chosen = cands[0];
        } else {
            chosen = cands[rng() % cands.size()];
            rule = "random";
        }
        taken.insert(chosen);
        plan.points.push_back(std::move(chosen));
        plan.provenance.push_back({ti, rule});
    }
    return plan;
}

Eigen::MatrixXd assemble_system(const CollocationPlan& plan,
                                const std::vector<MultiIndex>& basis) {
    const std::size_t m = basis.size();
    if (plan.points.size() != m)
        throw ShapeError("assemble_system: |basis| != |points|");
    Eigen::MatrixXd Z(m, m);
    for (std::size_t t = 0; t < m; ++t)
        for (std::size_t j = 0; j < m; ++j)
            Z(t, j) = basis_eval(basis[t], plan.points[j]);
    return Z;
}

std::vector<double> solve_square(const Eigen::MatrixXd& Z, std::span<const double> y,
                                 double* rcond_out) {
    if (Z.rows() != Z.cols() || static_cast<std::size_t>(Z.rows()) != y.size())
        throw ShapeError("solve_square: dimension mismatch");
    Eigen::MatrixXd A = Z.transpose();
    Eigen::JacobiSVD<Eigen::MatrixXd> svd(A, Eigen::ComputeThinU | Eigen::ComputeThinV);
    double smax = svd.singularValues()(0);
    double smin = svd.singularValues()(svd.singularValues().size() - 1);
    double rcond = smax > 0.0 ? smin / smax : 0.0;
    if (rcond_out) *rcond_out = rcond;
    Eigen::Map<const Eigen::VectorXd> b(y.data(), y.size());
    Eigen::VectorXd a = svd.solve(b);
    return {a.data(), a.data() + a.size()};
}

std::vector<double> solve_least_squares(const Eigen::MatrixXd& A,
                                        std::span<const double> y,
                                        double* rcond_out) {
    if (static_cast<std::size_t>(A.rows()) != y.size())
        throw ShapeError("solve_least_squares: dimension mismatch");
    Eigen::JacobiSVD<Eigen::MatrixXd> svd(A, Eigen::ComputeThinU | Eigen::ComputeThinV);
    double smax = svd.singularValues()(0);
    double smin = svd.singularValues()(svd.singularValues().size() - 1);
    double rcond = smax > 0.0 ? smin / smax : 0.0;
    if (rcond_out) *rcond_out = rcond;
    svd.setThreshold(1e-12);
    if (svd.rank() < A.cols())
        throw SingularSystemError("collocation system rank deficient after augmentation");
    Eigen::Map<const Eigen::VectorXd> b(y.data(), y.size());
    Eigen::VectorXd a = svd.solve(b);
    return {a.data(), a.data() + a.size()};
}

double residual_at(double model_value, double pce_value) {
    return pce_value - model_value;
}

FitResult fit_pce(const SrvModelFn& model, unsigned n, unsigned d, std::uint64_t seed) {
    FitResult fr;
    fr.terms = basis_terms(n, d);
    fr.plan = select_points(n, d, seed);
    const std::size_t m = fr.terms.size();
    fr.point_values.reserve(m);
    for (const auto& p : fr.plan.points) {
        fr.point_values.push_back(model(p));
        ++fr.model_evals;
    }
    Eigen::MatrixXd Z = assemble_system(fr.plan, fr.terms);
    double rcond = 0.0;
    auto coeffs = solve_square(Z, fr.point_values, &rcond);
    if (rcond >= kRcondFloor) {
        fr.coeffs = std::move(coeffs);
        fr.info = {rcond, "square"};
        return fr;
    }

    // Ill-conditioned plan: augment with the nearest unused candidates and
    // refit in the least-squares sense.
    auto cs = candidate_points(n, d);
    std::set<std::vector<double>> taken(fr.plan.points.begin(), fr.plan.points.end());
    std::vector<std::vector<double>> extra;
    for (auto& p : cs.points)
        if (!taken.count(p)) extra.push_back(std::move(p));
    std::stable_sort(extra.begin(), extra.end(),
                     [](const auto& a, const auto& b) { return sq_norm(a) < sq_norm(b); });
    if (extra.size() > m) extra.resize(m);  // at most 2m rows total

    std::vector<double> y = fr.point_values;
    Eigen::MatrixXd A(m + extra.size(), m);
    A.topRows(m) = Z.transpose();
    for (std::size_t r = 0; r < extra.size(); ++r) {
        for (std::size_t t = 0; t < m; ++t)
            A(m + r, t) = basis_eval(fr.terms[t], extra[r]);
        y.push_back(model(extra[r]));
        ++fr.model_evals;
    }
    double rcond_ls = 0.0;
    fr.coeffs = solve_least_squares(A, y, &rcond_ls);
    fr.info = {rcond_ls, "least_squares"};
    return fr;
}

}  // namespace pcm
