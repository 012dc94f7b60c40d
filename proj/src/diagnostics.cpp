#include "latgen/diagnostics.hpp"

#include <numeric>
#include <set>
#include <utility>

namespace latgen {

bool ProjectionReport::diagonal_before(std::uint32_t limit) const {
    for (const PairProjection& pr : pairs)
        if (pr.diagonal && pr.j < limit)
            return true;
    return false;
}

ProjectionReport projection_report(const ConstructionResult& r) {
    ProjectionReport rep;
    const std::uint64_t n = r.params.n;
    const std::size_t s = r.ztilde.size();
    rep.pairs.reserve(s * (s - 1) / 2);
    for (std::size_t i = 0; i < s; ++i) {
        for (std::size_t j = i + 1; j < s; ++j) {
            PairProjection pr;
            pr.i = static_cast<std::uint32_t>(i + 1);
            pr.j = static_cast<std::uint32_t>(j + 1);
            const std::uint64_t zi = r.ztilde[i] % n;
            const std::uint64_t zj = r.ztilde[j] % n;
            pr.diagonal = zi == zj;
            pr.antidiagonal = (zi + zj) % n == 0;
            pr.distinct_points = n / std::gcd(std::gcd(n, zi), zj);
            rep.pairs.push_back(pr);
        }
    }
    return rep;
}

std::uint64_t distinct_projected_points(std::uint64_t zi, std::uint64_t zj, std::uint64_t n) {
    std::set<std::pair<std::uint64_t, std::uint64_t>> pts;
    for (std::uint64_t k = 0; k < n; ++k)
        pts.emplace(k * zi % n, k * zj % n);
    return pts.size();
}

CostAudit cost_audit(const ConstructionResult& r) {
    CostAudit audit;
    audit.exclusion_checks = r.work.exclusion_checks;
    audit.budget = static_cast<std::uint64_t>(r.params.s) * r.params.n;
    audit.within_budget = audit.exclusion_checks <= audit.budget;
    return audit;
}

}  // namespace latgen
