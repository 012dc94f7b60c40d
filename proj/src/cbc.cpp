#include "latgen/cbc.hpp"

#include <algorithm>
#include <cassert>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>

#include "latgen/util.hpp"

namespace latgen {

const char* engine_name(Engine e) {
    return e == Engine::naive ? "naive" : "fast";
}

Engine parse_engine(std::string_view text) {
    if (text == "naive")
        return Engine::naive;
    if (text == "fast")
        return Engine::fast;
    throw std::invalid_argument("unknown engine '" + std::string(text) +
                                "' (expected naive or fast)");
}

namespace {

constexpr double infinity = std::numeric_limits<double>::infinity();

// Smallest candidate within a small window of the minimum.  The window is wide
// enough to cover evaluation noise between the engines, and far narrower than
// any structural gap between genuinely different error values at desk scale.
std::size_t pick_candidate(const std::vector<double>& values) {
    double vmin = infinity;
    for (double v : values)
        vmin = std::min(vmin, v);
    if (vmin == infinity)
        throw std::logic_error("no admissible candidate to pick");
    const double window = std::max(1e-12, 1e-9 * std::abs(vmin));
    for (std::size_t i = 0; i < values.size(); ++i)
        if (values[i] <= vmin + window)
            return i;
    return 0;  // unreachable
}

}  // namespace

StepChoice cbc_step_naive(std::span<const std::uint64_t> prefix, const SearchSpace& space,
                          const ExclusionSet& excluded, const LatticeParams& p,
                          const OmegaTable& table, StepWork* work) {
    if (space.candidates.empty())
        throw std::invalid_argument("cbc_step_naive: empty search space");
    if (excluded.size() >= space.candidates.size())
        throw std::invalid_argument("cbc_step_naive: exclusions cover the whole space");

    const std::size_t count = space.candidates.size();
    std::vector<double> values(count, infinity);
    std::uint64_t evaluated = 0;

    parallel_for(count, [&](std::uint64_t lo, std::uint64_t hi) {
        std::vector<std::uint64_t> extended(prefix.begin(), prefix.end());
        extended.push_back(0);
        for (std::uint64_t i = lo; i < hi; ++i) {
            const std::uint64_t z = space.candidates[i];
            if (!excluded.values.empty() && excluded.contains(z))
                continue;
            extended.back() = space.scale * z % p.n;
            values[i] = squared_error(extended, p, table);
        }
    });
    for (double v : values)
        if (v != infinity)
            ++evaluated;

    if (work) {
        work->error_evaluations += evaluated;
        if (!excluded.values.empty())
            work->exclusion_checks += count;
        work->kernel_ops += evaluated * p.n * (prefix.size() + 1);
    }

    const std::size_t best = pick_candidate(values);
    return {space.candidates[best], values[best]};
}

ConstructionResult construct(const LatticeParams& p, const ReductionSchedule& sched,
                             const ExclusionPolicy& policy, Engine engine) {
    p.validate();
    sched.validate(p.s);
    const Thresholds th = thresholds(sched, p.m, p.s);

    ConstructionResult r;
    r.params = p;
    r.w.assign(sched.w.begin(), sched.w.begin() + p.s);
    r.t1 = th.t1;
    r.t2 = th.t2;
    r.policy = policy.kind;
    r.engine = engine;
    r.work.per_step.resize(p.s);

    OmegaTable table(p.n, p.alpha);

    // Step 1 is fixed, never searched.
    r.z.push_back(1);
    r.ztilde.push_back(1);
    r.exclusion_sizes.push_back(0);
    r.step_errors.push_back(squared_error(r.ztilde, p, table));

    ProductVector pv;
    if (engine == Engine::fast) {
        pv = ProductVector::ones(p.n);
        update_products(pv, 1, p.gamma[0], table);
    }

    for (std::uint32_t j = 2; j <= p.s; ++j) {
        StepWork& sw = r.work.per_step[j - 1];
        const std::uint32_t wj = r.w[j - 1];

        if (j >= r.t2) {
            // collapsed space: the only candidate scales to 0 mod N
            r.z.push_back(1);
            r.ztilde.push_back(0);
            r.exclusion_sizes.push_back(0);
            r.step_errors.push_back(squared_error(r.ztilde, p, table));
            if (engine == Engine::fast)
                update_products(pv, 0, p.gamma[j - 1], table);
            continue;
        }

        SearchSpace space = search_space(p, wj);
        StepHistory history;
        history.z = {r.z.data(), r.z.size()};
        history.ztilde = {r.ztilde.data(), r.ztilde.size()};
        history.w = {r.w.data(), r.z.size()};
        ExclusionSet ex = next_exclusion(policy, history, space, p);
        if (ex.forced_drop)
            r.forced_drop_steps.push_back(j);
        r.exclusion_sizes.push_back(ex.size());

        std::uint64_t chosen;
        if (engine == Engine::naive) {
            StepChoice ch = cbc_step_naive(r.ztilde, space, ex, p, table, &sw);
            chosen = ch.z;
        } else {
            sw.kernel_ops += p.n;  // fold pass
            FoldedVector q = fold_products(pv, space.modulus);
            std::vector<double> values =
                sweep_errors_fft(q, p.gamma[j - 1], space, p, table, r.step_errors.back(),
                                 &sw, &r.work.fft_fallbacks);
            std::uint64_t admissible = values.size();
            if (!ex.values.empty()) {
                sw.exclusion_checks += space.candidates.size();
                for (std::size_t i = 0; i < space.candidates.size(); ++i) {
                    if (ex.contains(space.candidates[i])) {
                        values[i] = std::numeric_limits<double>::infinity();
                        --admissible;
                    }
                }
            }
            sw.error_evaluations += admissible;
            chosen = space.candidates[pick_candidate(values)];
        }

        r.z.push_back(chosen);
        r.ztilde.push_back(space.scale * chosen % p.n);
        r.step_errors.push_back(squared_error(r.ztilde, p, table));

        if (engine == Engine::fast) {
            update_products(pv, r.ztilde.back(), p.gamma[j - 1], table);
            sw.kernel_ops += p.n;  // product update pass
#ifndef NDEBUG
            assert(std::abs(pv.implied_error() - r.step_errors.back()) <=
                   1e-9 * std::max(1.0, std::abs(r.step_errors.back())));
#endif
        }
    }

    for (const StepWork& sw : r.work.per_step) {
        r.work.error_evaluations += sw.error_evaluations;
        r.work.exclusion_checks += sw.exclusion_checks;
        r.work.kernel_ops += sw.kernel_ops;
    }
    return r;
}

}  // namespace latgen
