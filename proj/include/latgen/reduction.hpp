#pragma once

#include <cstdint>
#include <string_view>
#include <vector>

#include "latgen/params.hpp"

namespace latgen {

// Nondecreasing per-coordinate reduction exponents w_1 <= w_2 <= ..., with
// w_1 = 0 so the first coordinate always searches the full space.
struct ReductionSchedule {
    std::vector<std::uint32_t> w;

    void validate(std::uint32_t s) const;  // throws std::invalid_argument

    static ReductionSchedule constant(std::uint32_t c, std::uint32_t s);
    // w_j = floor(c * (j - 1))
    static ReductionSchedule linear(double c, std::uint32_t s);
    // w_j = floor(log_b(j)), shown in logarithmic growth examples
    static ReductionSchedule logarithmic(std::uint64_t b, std::uint32_t s);

    // "const:0" | "linear:0.5" | "log" | "list:0,0,1,2"
    static ReductionSchedule parse(std::string_view text, std::uint64_t b, std::uint32_t s);
};

std::uint64_t totient_prime_power(std::uint64_t b, std::uint32_t k);

// Candidate multipliers at reduction level w: integers in [1, b^{m-w}) coprime
// to b, collapsing to {1} once w reaches m.  A chosen candidate z enters the
// generating vector as ztilde = b^w * z.
struct SearchSpace {
    std::uint32_t w = 0;
    std::uint64_t modulus = 1;  // b^{m-w}, or 1 when w >= m
    std::uint64_t scale = 1;    // b^min(w, m)
    std::vector<std::uint64_t> candidates;

    std::uint64_t size() const { return candidates.size(); }
};

SearchSpace search_space(const LatticeParams& p, std::uint32_t w);

// Count of candidates without materialising them: phi(b^{max(0, m-w)}).
std::uint64_t search_space_size(const LatticeParams& p, std::uint32_t w);

// t1: last coordinate still searching the full space (w_j = 0).
// t2: first coordinate whose space collapsed (w_j >= m), or s + 1 if none did.
struct Thresholds {
    std::uint32_t t1 = 1;
    std::uint32_t t2 = 2;
};

Thresholds thresholds(const ReductionSchedule& sched, std::uint32_t m, std::uint32_t s);

}  // namespace latgen
