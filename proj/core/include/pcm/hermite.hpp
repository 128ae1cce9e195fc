#pragma once

#include <cstddef>
#include <span>
#include <vector>

namespace pcm {

// Probabilists' Hermite polynomial He_k(xi) via the three-term recurrence
// He_0 = 1, He_1 = xi, He_{k+1} = xi*He_k - k*He_{k-1}.
double hermite_eval(unsigned k, double xi);

inline constexpr unsigned kMaxRootDegree = 12;

// All k real roots of He_k, ascending. Computed from the symmetric Jacobi
// matrix of the recurrence, then polished with one Newton step and
// symmetrized so that roots[i] == -roots[k-1-i] exactly as stored.
// Throws RangeError for k outside [1, kMaxRootDegree].
std::vector<double> hermite_roots(unsigned k);

// Exponent tuple identifying one tensor-product basis term.
struct MultiIndex {
    std::vector<unsigned> exponents;

    unsigned total_degree() const;
    std::size_t dim() const { return exponents.size(); }
    bool operator==(const MultiIndex&) const = default;
};

// All multi-indices over n dimensions with total degree <= d, ordered by
// total degree ascending, then by number of active variables ascending,
// then lexicographically with higher leading exponents first. For n=2,
// d=2 this yields (0,0) (1,0) (0,1) (2,0) (0,2) (1,1): constant, linears,
// pure quadratics, cross term. Count is C(n+d, d).
std::vector<MultiIndex> basis_terms(unsigned n, unsigned d);

// Product over dimensions of He_{k_i}(xi_i). Throws ShapeError on
// dimension mismatch.
double basis_eval(const MultiIndex& idx, std::span<const double> xi);

// E[Psi_idx(xi)^2] under iid standard normal xi = product of k_i!.
double basis_norm_sq(const MultiIndex& idx);

// C(n+d, d), the basis size.
std::size_t basis_count(unsigned n, unsigned d);

}  // namespace pcm
