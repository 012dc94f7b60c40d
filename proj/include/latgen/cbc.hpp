#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "latgen/exclusion.hpp"
#include "latgen/fast_kernel.hpp"
#include "latgen/korobov.hpp"
#include "latgen/params.hpp"
#include "latgen/reduction.hpp"

namespace latgen {

enum class Engine { naive, fast };

const char* engine_name(Engine e);
Engine parse_engine(std::string_view text);

struct WorkCounters {
    std::uint64_t error_evaluations = 0;
    std::uint64_t exclusion_checks = 0;
    std::uint64_t kernel_ops = 0;
    std::uint64_t fft_fallbacks = 0;
    std::vector<StepWork> per_step;
};

struct ConstructionResult {
    LatticeParams params;
    std::vector<std::uint32_t> w;  // schedule actually used, one level per coordinate
    std::uint32_t t1 = 1;          // last coordinate searching the full space
    std::uint32_t t2 = 2;          // first collapsed coordinate, s + 1 if none
    PolicyKind policy = PolicyKind::none;
    Engine engine = Engine::naive;
    std::vector<std::uint64_t> z;        // unscaled components
    std::vector<std::uint64_t> ztilde;   // scaled components b^{w_j} z_j (0 from t2 on)
    std::vector<double> step_errors;     // squared error of each prefix
    std::vector<std::uint64_t> exclusion_sizes;
    std::vector<std::uint32_t> forced_drop_steps;
    WorkCounters work;
};

struct StepChoice {
    std::uint64_t z = 1;
    double error = 0.0;
};

// One search step evaluated the obvious way: squared_error from scratch for
// every admissible candidate.  Slow but definitionally simple; the fast
// engine is validated against it.
StepChoice cbc_step_naive(std::span<const std::uint64_t> prefix, const SearchSpace& space,
                          const ExclusionSet& excluded, const LatticeParams& p,
                          const OmegaTable& table, StepWork* work = nullptr);

// Full component-by-component construction.  The first component is fixed to
// 1; components from t2 on are forced to scaled value 0 without any search.
// Both engines make identical choices: candidates within max(1e-12, 1e-9 *
// min) of the step minimum are treated as tied and the smallest wins, which
// absorbs the engines' differing rounding noise, and reported step errors
// always come from the same squared_error evaluation.
ConstructionResult construct(const LatticeParams& p, const ReductionSchedule& sched,
                             const ExclusionPolicy& policy, Engine engine);

}  // namespace latgen
