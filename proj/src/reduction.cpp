#include "latgen/reduction.hpp"

#include <charconv>
#include <cmath>
#include <string>

namespace latgen {

void ReductionSchedule::validate(std::uint32_t s) const {
    if (w.size() < s)
        throw std::invalid_argument("schedule has " + std::to_string(w.size()) +
                                    " entries but dimension is " + std::to_string(s));
    if (s == 0)
        throw std::invalid_argument("dimension must be positive");
    if (w[0] != 0)
        throw std::invalid_argument("schedule must start at level 0 (first coordinate searches the full space)");
    for (std::uint32_t j = 1; j < s; ++j)
        if (w[j] < w[j - 1])
            throw std::invalid_argument("schedule must be nondecreasing; entry " +
                                        std::to_string(j + 1) + " drops below its predecessor");
}

ReductionSchedule ReductionSchedule::constant(std::uint32_t c, std::uint32_t s) {
    return {std::vector<std::uint32_t>(s, c)};
}

ReductionSchedule ReductionSchedule::linear(double c, std::uint32_t s) {
    if (!(c >= 0.0) || !std::isfinite(c))
        throw std::invalid_argument("linear schedule slope must be finite and nonnegative");
    ReductionSchedule r;
    r.w.resize(s);
    for (std::uint32_t j = 0; j < s; ++j)
        r.w[j] = static_cast<std::uint32_t>(std::floor(c * j));
    return r;
}

ReductionSchedule ReductionSchedule::logarithmic(std::uint64_t b, std::uint32_t s) {
    if (b < 2)
        throw std::invalid_argument("logarithmic schedule needs base >= 2");
    ReductionSchedule r;
    r.w.resize(s);
    for (std::uint32_t j = 1; j <= s; ++j) {
        // largest e with b^e <= j
        std::uint32_t e = 0;
        std::uint64_t pw = 1;
        while (pw * b <= j) {
            pw *= b;
            ++e;
        }
        r.w[j - 1] = e;
    }
    return r;
}

ReductionSchedule ReductionSchedule::parse(std::string_view text, std::uint64_t b, std::uint32_t s) {
    auto bad = [&](const std::string& why) {
        return std::invalid_argument("bad schedule spec '" + std::string(text) + "': " + why);
    };
    if (text == "log")
        return logarithmic(b, s);
    auto colon = text.find(':');
    if (colon == std::string_view::npos)
        throw bad("expected const:<c>, linear:<c>, log or list:<w1,w2,...>");
    std::string_view head = text.substr(0, colon);
    std::string_view tail = text.substr(colon + 1);
    if (head == "const") {
        std::uint32_t c = 0;
        auto [ptr, ec] = std::from_chars(tail.data(), tail.data() + tail.size(), c);
        if (ec != std::errc{} || ptr != tail.data() + tail.size())
            throw bad("constant level must be a nonnegative integer");
        return constant(c, s);
    }
    if (head == "linear") {
        double c = 0.0;
        std::size_t used = 0;
        try {
            c = std::stod(std::string(tail), &used);
        } catch (const std::exception&) {
            throw bad("slope must be a number");
        }
        if (used != tail.size())
            throw bad("trailing characters after slope");
        return linear(c, s);
    }
    if (head == "list") {
        ReductionSchedule r;
        std::size_t pos = 0;
        while (pos <= tail.size()) {
            auto comma = tail.find(',', pos);
            std::string_view item = tail.substr(pos, comma == std::string_view::npos
                                                         ? std::string_view::npos
                                                         : comma - pos);
            std::uint32_t v = 0;
            auto [ptr, ec] = std::from_chars(item.data(), item.data() + item.size(), v);
            if (ec != std::errc{} || ptr != item.data() + item.size())
                throw bad("list entries must be nonnegative integers");
            r.w.push_back(v);
            if (comma == std::string_view::npos)
                break;
            pos = comma + 1;
        }
        return r;
    }
    throw bad("unknown schedule family '" + std::string(head) + "'");
}

std::uint64_t totient_prime_power(std::uint64_t b, std::uint32_t k) {
    if (k == 0)
        return 1;
    std::uint64_t pw = checked_pow(b, k);
    return pw - pw / b;
}

SearchSpace search_space(const LatticeParams& p, std::uint32_t w) {
    SearchSpace sp;
    sp.w = w;
    if (w >= p.m) {
        sp.modulus = 1;
        sp.scale = p.n;  // b^w = 0 mod N for any w >= m
        sp.candidates = {1};
        return sp;
    }
    sp.modulus = checked_pow(p.b, p.m - w);
    sp.scale = p.n / sp.modulus;  // b^w
    sp.candidates.reserve(sp.modulus - sp.modulus / p.b);
    for (std::uint64_t z = 1; z < sp.modulus; ++z)
        if (z % p.b != 0)
            sp.candidates.push_back(z);
    return sp;
}

std::uint64_t search_space_size(const LatticeParams& p, std::uint32_t w) {
    if (w >= p.m)
        return 1;
    return totient_prime_power(p.b, p.m - w);
}

Thresholds thresholds(const ReductionSchedule& sched, std::uint32_t m, std::uint32_t s) {
    sched.validate(s);
    Thresholds t;
    t.t1 = 1;
    for (std::uint32_t j = 1; j <= s; ++j)
        if (sched.w[j - 1] == 0)
            t.t1 = j;
    t.t2 = s + 1;
    for (std::uint32_t j = 1; j <= s; ++j) {
        if (sched.w[j - 1] >= m) {
            t.t2 = j;
            break;
        }
    }
    return t;
}

}  // namespace latgen
