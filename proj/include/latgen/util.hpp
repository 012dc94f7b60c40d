#pragma once

#include <cmath>
#include <cstdint>
#include <cstdlib>
#include <functional>
#include <string>
#include <thread>
#include <vector>

namespace latgen {

// Neumaier's variant of compensated summation.  Unlike plain Kahan it stays
// accurate when an incoming term is larger than the running sum, which happens
// a lot when product terms straddle several orders of magnitude.
class NeumaierSum {
public:
    void add(double x) {
        double t = sum_ + x;
        if (std::abs(sum_) >= std::abs(x))
            comp_ += (sum_ - t) + x;
        else
            comp_ += (x - t) + sum_;
        sum_ = t;
    }
    double value() const { return sum_ + comp_; }

private:
    double sum_ = 0.0;
    double comp_ = 0.0;
};

inline unsigned thread_budget() {
    if (const char* env = std::getenv("LATGEN_THREADS")) {
        char* end = nullptr;
        long v = std::strtol(env, &end, 10);
        if (end != env && v >= 1)
            return static_cast<unsigned>(v);
    }
    unsigned hw = std::thread::hardware_concurrency();
    return hw ? hw : 1;
}

// Splits [0, count) into contiguous chunks, one worker per chunk.  Results must
// be written by index so the outcome does not depend on the thread count.
inline void parallel_for(std::uint64_t count, const std::function<void(std::uint64_t, std::uint64_t)>& body) {
    unsigned workers = thread_budget();
    if (workers <= 1 || count < 2048) {
        body(0, count);
        return;
    }
    if (workers > count)
        workers = static_cast<unsigned>(count);
    std::vector<std::thread> pool;
    pool.reserve(workers);
    std::uint64_t chunk = (count + workers - 1) / workers;
    for (unsigned t = 0; t < workers; ++t) {
        std::uint64_t lo = static_cast<std::uint64_t>(t) * chunk;
        std::uint64_t hi = std::min(count, lo + chunk);
        if (lo >= hi)
            break;
        pool.emplace_back([&body, lo, hi] { body(lo, hi); });
    }
    for (auto& th : pool)
        th.join();
}

}  // namespace latgen
