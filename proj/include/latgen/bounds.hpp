#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "latgen/cbc.hpp"
#include "latgen/params.hpp"
#include "latgen/reduction.hpp"

namespace latgen {

// Everything needed to evaluate the two worst-case-error bounds for a prefix
// of length d: the problem parameters, the reduction levels, and how many
// candidates each step excluded.
struct BoundInputs {
    LatticeParams params;
    std::vector<std::uint32_t> w;                // levels, at least d entries
    std::vector<std::uint64_t> exclusion_sizes;  // |E_j|, at least d entries
    std::uint32_t d = 1;
    double lambda = 1.0;

    void validate() const;  // throws std::invalid_argument
};

// First bound: squared error of the constructed vector is at most
//   [ (1/phi(N)) * prod_j (1 + gamma_j^lambda * 2 zeta(alpha lambda)
//                             * phi(N) / (|Z_j| - |E_j|)) ]^(1/lambda).
// The denominator uses that the auxiliary excluded count phi(N) - |Z_j| + |E_j|
// leaves exactly |Z_j| - |E_j| admissible residues.
double theorem1_bound(const BoundInputs& in);

// Second bound, sensitive to where the reduction collapses each coordinate:
//   value^lambda = 1/phi(N) + sum_k [ gamma_k^lambda * 4 zeta(alpha lambda)
//                  * c_k / |Z_k| ] * prod_{j<k} (1 + gamma_j^lambda
//                  * 4 zeta(alpha lambda) * c_j),
// with c_j = |Z_j| / (|Z_j| - |E_j|).  This is the subset sum grouped by each
// subset's largest element, valid because the levels are nondecreasing.
double theorem2_bound(const BoundInputs& in);

// Brute-force oracles: literal sums over all 2^d coordinate subsets.  Used to
// cross-check the closed product form and the grouped evaluation.
double theorem1_bound_direct(const BoundInputs& in);
double theorem2_bound_direct(const BoundInputs& in);

enum class BoundKind { theorem1, theorem2 };

struct LambdaOpt {
    double lambda_star = 1.0;
    double value = 0.0;
};

// Minimizes the chosen bound over lambda.  Default interval is
// (1/alpha + 1e-6, 1]; pass lo = hi to pin lambda.  Coarse grid first, then
// golden-section refinement around the grid minimum (no unimodality assumed,
// hence the grid).
LambdaOpt optimize_lambda(BoundKind kind, const BoundInputs& base,
                          std::uint32_t grid_points = 64,
                          std::optional<double> lo = std::nullopt,
                          std::optional<double> hi = std::nullopt);

struct BoundPoint {
    std::uint32_t d = 1;
    double lambda_star_1 = 1.0;
    double thm1 = 0.0;
    double lambda_star_2 = 1.0;
    double thm2 = 0.0;
};

struct BoundReport {
    double thm1_value = 0.0;
    double thm2_value = 0.0;
    double lambda_star_1 = 1.0;
    double lambda_star_2 = 1.0;
    std::vector<BoundPoint> per_d;  // filled when a curve is requested
};

// Bound inputs matching a finished construction, truncated to prefix d.
BoundInputs bound_inputs_for(const ConstructionResult& r, std::uint32_t d);

// Report at prefix length in.d; fixed_lambda skips optimization.  with_curve
// adds one entry per prefix length.
BoundReport bound_report(const BoundInputs& in, std::optional<double> fixed_lambda,
                         std::uint32_t grid_points, bool with_curve);

}  // namespace latgen
