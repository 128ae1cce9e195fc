#include "pcm/hermite.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>

#include "pcm/errors.hpp"

namespace pcm {

double hermite_eval(unsigned k, double xi) {
    if (k == 0) return 1.0;
    double prev = 1.0, cur = xi;
    for (unsigned i = 1; i < k; ++i) {
        double next = xi * cur - static_cast<double>(i) * prev;
        prev = cur;
        cur = next;
    }
    return cur;
}

namespace {

double hermite_deriv(unsigned k, double xi) {
    // He_k' = k * He_{k-1}
    return k == 0 ? 0.0 : static_cast<double>(k) * hermite_eval(k - 1, xi);
}

}  // namespace

std::vector<double> hermite_roots(unsigned k) {
    if (k < 1 || k > kMaxRootDegree)
        throw RangeError("hermite_roots: degree must be in [1, " +
                         std::to_string(kMaxRootDegree) + "]");
    // Jacobi matrix of the He recurrence: zero diagonal, off-diagonal sqrt(i).
    Eigen::MatrixXd J = Eigen::MatrixXd::Zero(k, k);
    for (unsigned i = 1; i < k; ++i) {
        double b = std::sqrt(static_cast<double>(i));
        J(i, i - 1) = b;
        J(i - 1, i) = b;
    }
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(J, Eigen::EigenvaluesOnly);
    std::vector<double> roots(es.eigenvalues().data(), es.eigenvalues().data() + k);
    for (double& r : roots) {
        double d = hermite_deriv(k, r);
        if (d != 0.0) r -= hermite_eval(k, r) / d;
    }
    std::sort(roots.begin(), roots.end());
    // Force exact sign symmetry in the stored values.
    for (unsigned i = 0; i < k / 2; ++i) {
        double m = 0.5 * (std::abs(roots[i]) + std::abs(roots[k - 1 - i]));
        roots[i] = -m;
        roots[k - 1 - i] = m;
    }
    if (k % 2 == 1) roots[k / 2] = 0.0;
    return roots;
}

unsigned MultiIndex::total_degree() const {
    unsigned s = 0;
    for (unsigned e : exponents) s += e;
    return s;
}

namespace {

unsigned active_count(const MultiIndex& m) {
    unsigned c = 0;
    for (unsigned e : m.exponents) c += (e > 0);
    return c;
}

// Degree, then active-variable count, then earlier dimensions carrying the
// larger exponents first. Matches the second-order two-input ordering
// 1, xi1, xi2, xi1^2-1, xi2^2-1, xi1*xi2.
bool term_less(const MultiIndex& a, const MultiIndex& b) {
    unsigned da = a.total_degree(), db = b.total_degree();
    if (da != db) return da < db;
    unsigned ca = active_count(a), cb = active_count(b);
    if (ca != cb) return ca < cb;
    return a.exponents > b.exponents;
}

void enumerate(unsigned n, unsigned d, unsigned pos, unsigned remaining,
               std::vector<unsigned>& cur, std::vector<MultiIndex>& out) {
    if (pos == n) {
        out.push_back(MultiIndex{cur});
        return;
    }
    for (unsigned e = 0; e <= remaining; ++e) {
        cur[pos] = e;
        enumerate(n, d, pos + 1, remaining - e, cur, out);
    }
    cur[pos] = 0;
}

}  // namespace

std::vector<MultiIndex> basis_terms(unsigned n, unsigned d) {
    if (n < 1 || d < 1) throw RangeError("basis_terms: n and d must be >= 1");
    std::vector<MultiIndex> out;
    std::vector<unsigned> cur(n, 0);
    enumerate(n, d, 0, d, cur, out);
    std::sort(out.begin(), out.end(), term_less);
    return out;
}

double basis_eval(const MultiIndex& idx, std::span<const double> xi) {
    if (idx.dim() != xi.size())
        throw ShapeError("basis_eval: dimension mismatch");
    double v = 1.0;
    for (std::size_t i = 0; i < xi.size(); ++i)
        v *= hermite_eval(idx.exponents[i], xi[i]);
    return v;
}

double basis_norm_sq(const MultiIndex& idx) {
    double v = 1.0;
    for (unsigned k : idx.exponents)
        for (unsigned i = 2; i <= k; ++i) v *= static_cast<double>(i);
    return v;
}

std::size_t basis_count(unsigned n, unsigned d) {
    // C(n+d, d)
    std::size_t c = 1;
    for (unsigned i = 1; i <= d; ++i) c = c * (n + i) / i;
    return c;
}

}  // namespace pcm
