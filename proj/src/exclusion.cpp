#include "latgen/exclusion.hpp"

#include <algorithm>
#include <string>

namespace latgen {

const char* policy_name(PolicyKind kind) {
    switch (kind) {
        case PolicyKind::none: return "none";
        case PolicyKind::no_repeat: return "no-repeat";
        case PolicyKind::anti_diagonal: return "anti-diagonal";
        case PolicyKind::custom: return "custom";
    }
    return "?";
}

ExclusionPolicy ExclusionPolicy::parse(std::string_view text) {
    ExclusionPolicy p;
    if (text == "none")
        p.kind = PolicyKind::none;
    else if (text == "no-repeat")
        p.kind = PolicyKind::no_repeat;
    else if (text == "anti-diagonal")
        p.kind = PolicyKind::anti_diagonal;
    else
        throw std::invalid_argument("unknown exclusion policy '" + std::string(text) +
                                    "' (expected none, no-repeat or anti-diagonal)");
    return p;
}

bool ExclusionSet::contains(std::uint64_t z) const {
    return std::binary_search(values.begin(), values.end(), z);
}

namespace {

// If some candidate z in `space` satisfies b^w z = target (mod N), return it.
// Such z exists only when target is b^w times a unit below the modulus, so
// this is a divisibility test, not a search.
bool solve_scaled_match(std::uint64_t target, const SearchSpace& space, std::uint64_t b,
                        std::uint64_t* out) {
    if (target == 0 || space.modulus == 1)
        return false;  // scaled candidates are nonzero; collapsed space handled upstream
    if (target % space.scale != 0)
        return false;
    std::uint64_t q = target / space.scale;
    if (q >= space.modulus || q % b == 0)
        return false;
    *out = q;
    return true;
}

}  // namespace

ExclusionSet next_exclusion(const ExclusionPolicy& policy, const StepHistory& history,
                            const SearchSpace& space, const LatticeParams& p) {
    if (space.candidates.empty())
        throw std::invalid_argument("next_exclusion: empty search space");
    const std::size_t d = history.z.size();
    if (history.ztilde.size() != d || history.w.size() != d)
        throw std::invalid_argument("next_exclusion: history arrays disagree on length");

    ExclusionSet result;
    auto& ex = result.values;

    switch (policy.kind) {
        case PolicyKind::none:
            break;
        case PolicyKind::anti_diagonal:
            for (std::size_t i = 0; i < d; ++i) {
                std::uint64_t target = (p.n - history.ztilde[i] % p.n) % p.n;
                std::uint64_t z;
                if (solve_scaled_match(target, space, p.b, &z))
                    ex.push_back(z);
            }
            [[fallthrough]];
        case PolicyKind::no_repeat:
            for (std::size_t i = 0; i < d; ++i) {
                std::uint64_t z;
                if (solve_scaled_match(history.ztilde[i], space, p.b, &z))
                    ex.push_back(z);
            }
            break;
        case PolicyKind::custom: {
            auto it = policy.custom_sets.find(static_cast<std::uint32_t>(d + 1));
            if (it != policy.custom_sets.end()) {
                for (std::uint64_t z : it->second) {
                    if (std::binary_search(space.candidates.begin(), space.candidates.end(), z))
                        ex.push_back(z);
                }
            }
            break;
        }
    }

    std::sort(ex.begin(), ex.end());
    ex.erase(std::unique(ex.begin(), ex.end()), ex.end());

    if (ex.size() >= space.candidates.size()) {
        if (policy.kind == PolicyKind::custom)
            throw policy_error("empty candidate set: custom exclusions cover the whole space at component " +
                               std::to_string(d + 1));
        while (ex.size() >= space.candidates.size()) {
            ex.pop_back();
            result.forced_drop = true;
        }
    }
    return result;
}

}  // namespace latgen
