#pragma once

#include <cstdint>
#include <vector>

#include "latgen/cbc.hpp"

namespace latgen {

// Degenerate 2-D projections: equal components put every projected point on
// the main diagonal, negated components on the antidiagonal.
struct PairProjection {
    std::uint32_t i = 1;  // 1-based coordinate indices, i < j
    std::uint32_t j = 2;
    bool diagonal = false;
    bool antidiagonal = false;
    std::uint64_t distinct_points = 1;  // N / gcd(N, ztilde_i, ztilde_j)
};

struct ProjectionReport {
    std::vector<PairProjection> pairs;

    // Any diagonal pair with both coordinates below `limit` (exclusive)?
    bool diagonal_before(std::uint32_t limit) const;
};

ProjectionReport projection_report(const ConstructionResult& r);

// Brute-force distinct count of the projected 2-D point set; test oracle for
// the gcd formula.
std::uint64_t distinct_projected_points(std::uint64_t zi, std::uint64_t zj, std::uint64_t n);

struct CostAudit {
    std::uint64_t exclusion_checks = 0;
    std::uint64_t budget = 0;  // s * N
    bool within_budget = true;
};

CostAudit cost_audit(const ConstructionResult& r);

}  // namespace latgen
