#pragma once

#include <Eigen/Dense>
#include <cstdint>
#include <functional>
#include <span>
#include <string>
#include <vector>

#include "pcm/hermite.hpp"

namespace pcm {

// Which rule finalized a point choice.
struct PointProvenance {
    std::size_t term_index = 0;
    std::string rule;  // "origin" | "unique" | "norm" | "symmetry" | "random"
};

struct CollocationPlan {
    unsigned n = 0;
    unsigned d = 0;
    std::vector<std::vector<double>> points;  // m = C(n+d,d) srv-space points
    std::vector<PointProvenance> provenance;
    std::size_t root_only_candidates = 0;  // (d+1)^n
    std::size_t augmented_candidates = 0;  // |{0} u roots(He_{d+1})|^n
};

struct CandidateSet {
    std::vector<double> axis_values;  // {0} u roots(He_{d+1}), ascending
    std::vector<std::vector<double>> points;  // full Cartesian product
    std::size_t root_only_count = 0;
    std::size_t augmented_count = 0;
};

// Origin-augmented candidate universe. For even d the origin is already a
// root and both counts coincide; for odd d the augmented universe is a
// strict superset of the (d+1)^n root-only grid.
CandidateSet candidate_points(unsigned n, unsigned d);

// Term-by-term heuristic assignment: origin for the constant, axis roots
// for single-variable terms, root combinations on the term's support for
// mixed terms. Ties broken by smaller norm, then origin symmetry, then a
// seeded pseudo-random choice. Deterministic for fixed (n, d, seed).
CollocationPlan select_points(unsigned n, unsigned d, std::uint64_t seed);

// Z[row=term, col=point] = basis_eval(term, point); Z^T * a = y.
Eigen::MatrixXd assemble_system(const CollocationPlan& plan,
                                const std::vector<MultiIndex>& basis);

struct SolveInfo {
    double rcond = 0.0;
    std::string path;  // "square" | "least_squares"
};

inline constexpr double kRcondFloor = 1e-10;

// Square collocation solve of Z^T a = y. rcond is the ratio of extreme
// singular values; callers switch to the least-squares path when it falls
// below kRcondFloor.
std::vector<double> solve_square(const Eigen::MatrixXd& Z, std::span<const double> y,
                                 double* rcond_out = nullptr);

// Overdetermined solve of A a = y (rows = points). Throws
// SingularSystemError if A is rank deficient.
std::vector<double> solve_least_squares(const Eigen::MatrixXd& A,
                                        std::span<const double> y,
                                        double* rcond_out = nullptr);

// pce_value - model_value (the collocation residual).
double residual_at(double model_value, double pce_value);

// Black-box model in srv space.
using SrvModelFn = std::function<double(std::span<const double>)>;

struct FitResult {
    std::vector<MultiIndex> terms;
    std::vector<double> coeffs;
    CollocationPlan plan;
    std::vector<double> point_values;  // model outputs at plan points
    SolveInfo info;
    std::size_t model_evals = 0;
};

// Full collocation fit: plan, model evaluations at the plan points,
// square solve; on ill-conditioning, augments with the nearest unused
// candidates (up to 2m rows) and solves in the least-squares sense.
FitResult fit_pce(const SrvModelFn& model, unsigned n, unsigned d, std::uint64_t seed);

}  // namespace pcm
