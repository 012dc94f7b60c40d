#include "latgen/params.hpp"

#include <cmath>
#include <limits>
#include <string>

namespace latgen {

bool is_prime(std::uint64_t n) {
    if (n < 2)
        return false;
    if (n < 4)
        return true;
    if (n % 2 == 0 || n % 3 == 0)
        return false;
    for (std::uint64_t p = 5; p * p <= n; p += 6) {
        if (n % p == 0 || n % (p + 2) == 0)
            return false;
    }
    return true;
}

std::uint64_t checked_pow(std::uint64_t b, std::uint32_t m) {
    // Point counts are capped below 2^32 so k * ztilde stays inside uint64
    // arithmetic everywhere downstream.
    constexpr std::uint64_t limit = std::uint64_t{1} << 32;
    std::uint64_t r = 1;
    for (std::uint32_t i = 0; i < m; ++i) {
        if (r >= (limit + b - 1) / b)
            throw std::invalid_argument("point count b^m must be below 2^32");
        r *= b;
    }
    return r;
}

LatticeParams LatticeParams::make(std::uint64_t b, std::uint32_t m, std::uint32_t s,
                                  double alpha, std::vector<double> gamma) {
    LatticeParams p;
    p.b = b;
    p.m = m;
    p.n = checked_pow(b, m);
    p.s = s;
    p.alpha = alpha;
    p.gamma = std::move(gamma);
    p.validate();
    return p;
}

void LatticeParams::validate() const {
    if (!is_prime(b))
        throw std::invalid_argument("base b must be prime, got " + std::to_string(b));
    if (m < 1)
        throw std::invalid_argument("exponent m must be at least 1");
    if (n != checked_pow(b, m))
        throw std::invalid_argument("point count n does not equal b^m");
    if (s < 1)
        throw std::invalid_argument("dimension s must be at least 1");
    if (!(alpha > 1.0) || !std::isfinite(alpha))
        throw std::invalid_argument("smoothness alpha must be finite and greater than 1");
    if (gamma.size() < s)
        throw std::invalid_argument("need at least s weights, got " + std::to_string(gamma.size()));
    for (std::size_t j = 0; j < gamma.size(); ++j) {
        if (!(gamma[j] > 0.0) || !std::isfinite(gamma[j]))
            throw std::invalid_argument("weight gamma[" + std::to_string(j + 1) +
                                        "] must be finite and positive");
    }
}

std::uint64_t LatticeParams::totient() const {
    return n - n / b;
}

std::vector<double> constant_weights(std::uint32_t s, double c) {
    return std::vector<double>(s, c);
}

std::vector<double> polynomial_weights(std::uint32_t s, double a) {
    std::vector<double> g(s);
    for (std::uint32_t j = 0; j < s; ++j)
        g[j] = std::pow(static_cast<double>(j + 1), -a);
    return g;
}

}  // namespace latgen
