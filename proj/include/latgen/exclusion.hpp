#pragma once

#include <cstdint>
#include <map>
#include <span>
#include <stdexcept>
#include <string_view>
#include <vector>

#include "latgen/params.hpp"
#include "latgen/reduction.hpp"

namespace latgen {

enum class PolicyKind { none, no_repeat, anti_diagonal, custom };

const char* policy_name(PolicyKind kind);

struct ExclusionPolicy {
    PolicyKind kind = PolicyKind::none;
    // Only for kind == custom: component index (1-based) -> excluded candidate
    // values, given unscaled.  Components without an entry get no exclusions.
    std::map<std::uint32_t, std::vector<std::uint64_t>> custom_sets;

    // "none" | "no-repeat" | "anti-diagonal"; custom policies are built from a
    // file by the CLI layer.
    static ExclusionPolicy parse(std::string_view text);
};

// Raised when a custom exclusion set leaves no admissible candidate.
struct policy_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Components chosen so far (1..d), parallel arrays.
struct StepHistory {
    std::span<const std::uint64_t> z;       // unscaled choices
    std::span<const std::uint64_t> ztilde;  // scaled values b^{w_j} z_j (0 once collapsed)
    std::span<const std::uint32_t> w;       // reduction level per component
};

struct ExclusionSet {
    std::vector<std::uint64_t> values;  // sorted ascending, subset of the candidates
    bool forced_drop = false;

    bool contains(std::uint64_t z) const;
    std::uint64_t size() const { return values.size(); }
};

// Exclusion set for the step choosing component d+1 from `space`.
//
// no-repeat bars candidates whose scaled value would equal an earlier
// component's; since scaled values at different reduction levels have
// different b-adic valuations, only earlier components at the same level can
// collide, and they are excluded by their unscaled value directly.
// anti-diagonal additionally bars candidates z with b^w z = -ztilde_j (mod N),
// found by solving for z rather than scanning the space.
//
// The result never covers the whole space: built-in policies drop their
// largest elements until one candidate is admissible (flagged via
// forced_drop); a custom set that would cover everything raises policy_error.
ExclusionSet next_exclusion(const ExclusionPolicy& policy, const StepHistory& history,
                            const SearchSpace& space, const LatticeParams& p);

}  // namespace latgen
