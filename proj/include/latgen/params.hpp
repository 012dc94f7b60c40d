#pragma once

#include <cstdint>
#include <span>
#include <stdexcept>
#include <vector>

namespace latgen {

bool is_prime(std::uint64_t n);

// b^m, throwing if the result would not fit the supported point-count range.
std::uint64_t checked_pow(std::uint64_t b, std::uint32_t m);

// Problem description for a rank-1 lattice search: n = b^m points in s
// dimensions, Korobov smoothness alpha, one product weight per coordinate.
struct LatticeParams {
    std::uint64_t b = 2;
    std::uint32_t m = 1;
    std::uint64_t n = 2;
    std::uint32_t s = 1;
    double alpha = 2.0;
    std::vector<double> gamma;

    static LatticeParams make(std::uint64_t b, std::uint32_t m, std::uint32_t s,
                              double alpha, std::vector<double> gamma);

    // Throws std::invalid_argument naming the offending field.
    void validate() const;

    std::uint64_t totient() const;  // phi(b^m)
};

// Weight sequences used by the CLI and tests.
std::vector<double> constant_weights(std::uint32_t s, double c);
std::vector<double> polynomial_weights(std::uint32_t s, double a);  // gamma_j = j^-a

}  // namespace latgen
