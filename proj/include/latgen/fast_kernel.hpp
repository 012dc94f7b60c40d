#pragma once

#include <cstdint>
#include <vector>

#include "latgen/korobov.hpp"
#include "latgen/params.hpp"
#include "latgen/reduction.hpp"

namespace latgen {

// Work attributable to one construction step.
struct StepWork {
    std::uint64_t error_evaluations = 0;
    std::uint64_t exclusion_checks = 0;
    std::uint64_t kernel_ops = 0;
};

// Per-point kernel products prod_j (1 + gamma_j * omega(k ztilde_j / n)),
// extended one coordinate at a time as the construction fixes components.
struct ProductVector {
    std::vector<double> p;
    std::uint32_t dims = 0;

    static ProductVector ones(std::uint64_t n) {
        ProductVector pv;
        pv.p.assign(n, 1.0);
        return pv;
    }

    // (1/n) sum_k p[k] - 1, which equals the squared error of the current
    // prefix.  Exposed for the invariant check.
    double implied_error() const;
};

void update_products(ProductVector& pv, std::uint64_t ztilde, double gamma_j,
                     const OmegaTable& table);

// Residue-class sums of the product vector: q[r] = sum over k = r (mod
// modulus) of p[k].  With modulus = b^{m-w}, the error of candidate z at
// level w depends on p only through q.
struct FoldedVector {
    std::uint64_t modulus = 1;
    std::vector<double> q;
};

FoldedVector fold_products(const ProductVector& pv, std::uint64_t modulus);

// Error of every candidate in `space` when appended to the prefix summarised
// by q: errors[i] = prior_error + (gamma_next / n) * sum_r q[r] *
// omega(r * candidates[i] / modulus).  The direct path evaluates the sum per
// candidate; the fft path computes all candidates at once via unit-group
// circular correlations.  Both paths agree to 1e-9 absolute.
std::vector<double> sweep_errors_direct(const FoldedVector& q, double gamma_next,
                                        const SearchSpace& space, const LatticeParams& p,
                                        const OmegaTable& table, double prior_error,
                                        StepWork* work = nullptr);

// Falls back to the direct path (counting the event) when the modulus is too
// small for the group decomposition to pay off.
std::vector<double> sweep_errors_fft(const FoldedVector& q, double gamma_next,
                                     const SearchSpace& space, const LatticeParams& p,
                                     const OmegaTable& table, double prior_error,
                                     StepWork* work = nullptr,
                                     std::uint64_t* fft_fallbacks = nullptr);

// Smallest primitive root mod b^e for odd prime b (also handles b^e in {2, 4}).
std::uint64_t primitive_root_prime_power(std::uint64_t b, std::uint32_t e);

}  // namespace latgen
