#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <numeric>

#include "latgen/diagnostics.hpp"

using namespace latgen;

namespace {

ConstructionResult fake_result(std::uint64_t b, std::uint32_t m,
                               std::vector<std::uint64_t> ztilde) {
    ConstructionResult r;
    const std::uint32_t s = static_cast<std::uint32_t>(ztilde.size());
    r.params = LatticeParams::make(b, m, s, 2.0, constant_weights(s, 1.0));
    r.ztilde = std::move(ztilde);
    return r;
}

const PairProjection& pair_at(const ProjectionReport& rep, std::uint32_t i, std::uint32_t j) {
    for (const PairProjection& pr : rep.pairs)
        if (pr.i == i && pr.j == j)
            return pr;
    REQUIRE(false);
    return rep.pairs.front();
}

}  // namespace

TEST_CASE("pair projections flag degenerate diagonals") {
    ConstructionResult r = fake_result(2, 3, {1, 1, 7, 2});
    ProjectionReport rep = projection_report(r);
    REQUIRE(rep.pairs.size() == 6);

    const PairProjection& d12 = pair_at(rep, 1, 2);
    CHECK(d12.diagonal);
    CHECK_FALSE(d12.antidiagonal);
    CHECK(d12.distinct_points == 8);

    const PairProjection& d13 = pair_at(rep, 1, 3);
    CHECK_FALSE(d13.diagonal);
    CHECK(d13.antidiagonal);
    CHECK(d13.distinct_points == 8);

    const PairProjection& d14 = pair_at(rep, 1, 4);
    CHECK_FALSE(d14.diagonal);
    CHECK_FALSE(d14.antidiagonal);
    CHECK(d14.distinct_points == 8);

    // both components even: the projection coarsens to 4 points
    const PairProjection& d34 = pair_at(rep, 3, 4);
    CHECK(d34.distinct_points == 8);
    ConstructionResult r2 = fake_result(2, 3, {2, 4});
    CHECK(projection_report(r2).pairs[0].distinct_points == 4);
}

TEST_CASE("collapsed pair sits at the origin") {
    ConstructionResult r = fake_result(2, 3, {1, 0, 0});
    ProjectionReport rep = projection_report(r);
    const PairProjection& d23 = pair_at(rep, 2, 3);
    CHECK(d23.diagonal);
    CHECK(d23.antidiagonal);
    CHECK(d23.distinct_points == 1);
    CHECK(pair_at(rep, 1, 2).distinct_points == 8);
}

TEST_CASE("distinct-point formula matches brute force") {
    for (std::uint64_t n : {std::uint64_t{8}, std::uint64_t{9}, std::uint64_t{25}}) {
        for (std::uint64_t zi = 0; zi < n; ++zi) {
            for (std::uint64_t zj = 0; zj < n; ++zj) {
                std::uint64_t g = std::gcd(std::gcd(n, zi), zj);
                CHECK(distinct_projected_points(zi, zj, n) == n / g);
            }
        }
    }
}

TEST_CASE("diagonal_before looks only below the limit") {
    ConstructionResult r = fake_result(2, 3, {1, 3, 3});
    ProjectionReport rep = projection_report(r);
    CHECK(rep.diagonal_before(4));
    CHECK_FALSE(rep.diagonal_before(3));  // the diagonal pair is (2,3)

    ConstructionResult clean = fake_result(2, 3, {1, 3, 5});
    CHECK_FALSE(projection_report(clean).diagonal_before(4));
}

TEST_CASE("no-repeat constructions avoid early diagonal pairs") {
    LatticeParams p = LatticeParams::make(3, 2, 4, 2.0, constant_weights(4, 1.0));
    ConstructionResult r = construct(p, ReductionSchedule::constant(0, 4),
                                     ExclusionPolicy::parse("no-repeat"), Engine::naive);
    ProjectionReport rep = projection_report(r);
    if (r.forced_drop_steps.empty())
        CHECK_FALSE(rep.diagonal_before(r.t2));
}

TEST_CASE("cost audit compares against the scan budget") {
    LatticeParams p = LatticeParams::make(2, 3, 4, 2.0, constant_weights(4, 1.0));
    ConstructionResult r = construct(p, ReductionSchedule::constant(0, 4),
                                     ExclusionPolicy::parse("anti-diagonal"), Engine::naive);
    CostAudit audit = cost_audit(r);
    CHECK(audit.budget == 4 * 8);
    CHECK(audit.exclusion_checks == r.work.exclusion_checks);
    CHECK(audit.within_budget);

    ConstructionResult fake = fake_result(2, 3, {1, 3});
    fake.work.exclusion_checks = 1000;
    CHECK_FALSE(cost_audit(fake).within_budget);
}
