#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "latgen/params.hpp"

namespace latgen {

// Decay factor of a single frequency: 1 at h = 0, gamma / |h|^alpha otherwise.
double r_alpha(double gamma_j, std::int64_t h, double alpha);

// Product of per-coordinate factors for a frequency vector.
double r_alpha(std::span<const double> gamma, std::span<const std::int64_t> h,
               double alpha);

// omega(x) = 2 * sum_{h >= 1} cos(2 pi h x) / h^alpha.  Even integer alpha up
// to 6 uses the exact Bernoulli-polynomial form; anything else falls back to a
// truncated cosine series driven to `tol` absolute accuracy.  Throws
// std::runtime_error if the series needs more than 10^8 terms (x too close to
// an integer for the requested tolerance).
double omega(double x, double alpha, double tol = 1e-12);

// Series evaluation regardless of alpha; cross-check oracle for the closed
// forms above.
double omega_series_reference(double x, double alpha, double tol = 1e-12);

// omega evaluated on the grid i/n, i = 0..n-1.  Built once per construction
// and shared by every error evaluation.
class OmegaTable {
public:
    OmegaTable(std::uint64_t n, double alpha, double tol = 1e-12);

    double operator[](std::uint64_t i) const { return values_[i]; }
    std::uint64_t size() const { return values_.size(); }
    double alpha() const { return alpha_; }
    std::span<const double> values() const { return values_; }

private:
    std::vector<double> values_;
    double alpha_;
};

// Worst-case squared integration error of the rank-1 lattice with the given
// scaled generating vector over the first ztilde.size() coordinates.  The
// one-coordinate case is evaluated in closed form (exact up to one rounding),
// higher dimensions by compensated summation of the n kernel products.
double squared_error(std::span<const std::uint64_t> ztilde, const LatticeParams& p,
                     const OmegaTable& table);
double squared_error(std::span<const std::uint64_t> ztilde, const LatticeParams& p);

// Reference evaluation that enumerates the dual lattice directly, truncated to
// |h_j| <= trunc per coordinate.  Deliberately simple; meant as a test oracle
// for up to 4 coordinates.
double dual_lattice_error(std::span<const std::uint64_t> ztilde, const LatticeParams& p,
                          std::uint64_t trunc);

}  // namespace latgen
