#include "latgen/korobov.hpp"

#include <cmath>
#include <numbers>
#include <numeric>
#include <stdexcept>

#include "latgen/util.hpp"
#include "latgen/zeta.hpp"

namespace latgen {

double r_alpha(double gamma_j, std::int64_t h, double alpha) {
    if (h == 0)
        return 1.0;
    return gamma_j * std::pow(std::abs(static_cast<double>(h)), -alpha);
}

double r_alpha(std::span<const double> gamma, std::span<const std::int64_t> h,
               double alpha) {
    if (gamma.size() < h.size())
        throw std::invalid_argument("r_alpha: fewer weights than frequency entries");
    double prod = 1.0;
    for (std::size_t j = 0; j < h.size(); ++j)
        prod *= r_alpha(gamma[j], h[j], alpha);
    return prod;
}

namespace {

constexpr double pi = std::numbers::pi;

bool has_closed_form(double alpha) {
    return alpha == 2.0 || alpha == 4.0 || alpha == 6.0;
}

double omega_closed(double x, double alpha) {
    // (-1)^{a/2+1} (2 pi)^a B_a(x) / a!  for even integer a
    if (alpha == 2.0)
        return 2.0 * pi * pi * (x * x - x + 1.0 / 6.0);
    if (alpha == 4.0) {
        double b4 = ((x - 2.0) * x + 1.0) * x * x - 1.0 / 30.0;
        return -(2.0 / 3.0) * pi * pi * pi * pi * b4;
    }
    double p6 = pi * pi * pi * pi * pi * pi;
    double x2 = x * x;
    double b6 = ((((x - 3.0) * x + 2.5) * x2) - 0.5) * x2 + 1.0 / 42.0;
    return (4.0 / 45.0) * p6 * b6;
}

// Cosine series with a Dirichlet-test tail bound.  The recurrence
// cos((h+1)t) = 2 cos t cos(ht) - cos((h-1)t) is reseeded at every block
// boundary to stop rounding drift on long runs.
double omega_series(double x, double alpha, double tol) {
    x -= std::floor(x);
    if (x == 0.0)
        return 2.0 * riemann_zeta(alpha);

    const double theta = 2.0 * pi * x;
    const double two_cos = 2.0 * std::cos(theta);
    const double inv_sin = 1.0 / std::abs(std::sin(pi * x));
    constexpr std::uint64_t max_terms = 100000000;
    constexpr std::uint64_t block = 1024;

    NeumaierSum acc;
    std::uint64_t h = 1;
    while (h <= max_terms) {
        double c_prev = std::cos(theta * static_cast<double>(h - 1));
        double c_cur = std::cos(theta * static_cast<double>(h));
        const std::uint64_t stop = std::min(h + block, max_terms + 1);
        for (; h < stop; ++h) {
            acc.add(c_cur * std::pow(static_cast<double>(h), -alpha));
            double c_next = two_cos * c_cur - c_prev;
            c_prev = c_cur;
            c_cur = c_next;
        }
        // |sum_{j >= h} cos(2 pi j x)/j^alpha| <= h^-alpha / |sin(pi x)|
        if (std::pow(static_cast<double>(h), -alpha) * inv_sin <= 0.5 * tol)
            return 2.0 * acc.value();
    }
    throw std::runtime_error("omega series did not converge within the term cap");
}

}  // namespace

double omega(double x, double alpha, double tol) {
    x -= std::floor(x);
    if (has_closed_form(alpha))
        return omega_closed(x, alpha);
    return omega_series(x, alpha, tol);
}

double omega_series_reference(double x, double alpha, double tol) {
    if (!(alpha > 1.0))
        throw std::domain_error("omega needs alpha > 1");
    return omega_series(x, alpha, tol);
}

OmegaTable::OmegaTable(std::uint64_t n, double alpha, double tol) : alpha_(alpha) {
    if (n < 1)
        throw std::invalid_argument("OmegaTable needs n >= 1");
    values_.resize(n);
    values_[0] = has_closed_form(alpha) ? omega_closed(0.0, alpha)
                                        : 2.0 * riemann_zeta(alpha);
    // omega(x) = omega(1 - x), so fill the first half and mirror.
    const std::uint64_t half = n / 2;
    parallel_for(half, [&](std::uint64_t lo, std::uint64_t hi) {
        for (std::uint64_t i = lo; i < hi; ++i) {
            std::uint64_t idx = i + 1;
            values_[idx] = omega(static_cast<double>(idx) / static_cast<double>(n),
                                 alpha, tol);
        }
    });
    for (std::uint64_t i = half + 1; i < n; ++i)
        values_[i] = values_[n - i];
}

namespace {

// Exact closed form for one coordinate: frequencies h with h * ztilde = 0
// (mod n) are exactly the multiples of n / gcd(ztilde, n).
double squared_error_1d(std::uint64_t ztilde, const LatticeParams& p) {
    std::uint64_t g = std::gcd(ztilde, p.n);
    double ratio = static_cast<double>(g) / static_cast<double>(p.n);
    return p.gamma[0] * 2.0 * riemann_zeta(p.alpha) * std::pow(ratio, p.alpha);
}

}  // namespace

double squared_error(std::span<const std::uint64_t> ztilde, const LatticeParams& p,
                     const OmegaTable& table) {
    if (ztilde.empty())
        throw std::invalid_argument("squared_error: empty generating vector");
    if (ztilde.size() > p.gamma.size())
        throw std::invalid_argument("squared_error: more components than weights");
    if (table.size() != p.n)
        throw std::invalid_argument("squared_error: omega table size mismatch");
    for (std::uint64_t zj : ztilde)
        if (zj >= p.n)
            throw std::invalid_argument("squared_error: component out of range");

    if (ztilde.size() == 1)
        return squared_error_1d(ztilde[0], p);

    const std::uint64_t n = p.n;
    const std::size_t d = ztilde.size();

    // Each k contributes prod_j (1 + gamma_j * omega(k ztilde_j / n)) - 1.
    // Sum in fixed 4096-point blocks merged in index order, so the result is
    // bitwise identical no matter how many threads run the blocks.
    constexpr std::uint64_t block = 4096;
    const std::uint64_t nblocks = (n + block - 1) / block;
    std::vector<double> block_sum(nblocks);
    parallel_for(nblocks, [&](std::uint64_t blo, std::uint64_t bhi) {
        std::vector<std::uint64_t> res(d);
        for (std::uint64_t bi = blo; bi < bhi; ++bi) {
            const std::uint64_t lo = bi * block;
            const std::uint64_t hi = std::min(n, lo + block);
            for (std::size_t j = 0; j < d; ++j)
                res[j] = (lo % n) * (ztilde[j] % n) % n;
            NeumaierSum local;
            for (std::uint64_t k = lo; k < hi; ++k) {
                double prod = 1.0;
                for (std::size_t j = 0; j < d; ++j) {
                    prod *= 1.0 + p.gamma[j] * table[res[j]];
                    res[j] += ztilde[j];
                    if (res[j] >= n)
                        res[j] -= n;
                }
                local.add(prod - 1.0);
            }
            block_sum[bi] = local.value();
        }
    });
    NeumaierSum total;
    for (std::uint64_t bi = 0; bi < nblocks; ++bi)
        total.add(block_sum[bi]);
    return total.value() / static_cast<double>(n);
}

double squared_error(std::span<const std::uint64_t> ztilde, const LatticeParams& p) {
    if (ztilde.size() == 1) {
        if (ztilde[0] >= p.n)
            throw std::invalid_argument("squared_error: component out of range");
        return squared_error_1d(ztilde[0], p);
    }
    OmegaTable table(p.n, p.alpha);
    return squared_error(ztilde, p, table);
}

double dual_lattice_error(std::span<const std::uint64_t> ztilde, const LatticeParams& p,
                          std::uint64_t trunc) {
    const std::size_t d = ztilde.size();
    if (d == 0 || d > 4)
        throw std::invalid_argument("dual_lattice_error supports 1 to 4 coordinates");
    if (d > p.gamma.size())
        throw std::invalid_argument("dual_lattice_error: more components than weights");
    const std::uint64_t n = p.n;
    const std::int64_t H = static_cast<std::int64_t>(trunc);
    const std::size_t row = 2 * trunc + 1;

    // weight[j][h + H] = r_alpha(gamma_j, h)
    std::vector<std::vector<double>> weight(d);
    for (std::size_t j = 0; j < d; ++j) {
        weight[j].resize(row);
        for (std::int64_t h = -H; h <= H; ++h)
            weight[j][static_cast<std::size_t>(h + H)] = r_alpha(p.gamma[j], h, p.alpha);
    }
    std::vector<std::uint64_t> step(d);
    std::vector<std::uint64_t> back(d);  // (-H * ztilde_j) mod n
    for (std::size_t j = 0; j < d; ++j) {
        step[j] = ztilde[j] % n;
        back[j] = (n - (trunc % n) * step[j] % n) % n;
    }

    NeumaierSum acc;
    // Recursive descent over coordinates; the innermost level walks its 2H+1
    // frequencies with an incrementally stepped residue.
    auto descend = [&](auto&& self, std::size_t level, std::uint64_t res, double w) -> void {
        if (level + 1 == d) {
            std::uint64_t r = (res + back[level]) % n;
            const double* wrow = weight[level].data();
            for (std::size_t i = 0; i < row; ++i) {
                if (r == 0)
                    acc.add(w * wrow[i]);
                r += step[level];
                if (r >= n)
                    r -= n;
            }
            return;
        }
        std::uint64_t r = (res + back[level]) % n;
        for (std::size_t i = 0; i < row; ++i) {
            self(self, level + 1, r, w * weight[level][i]);
            r += step[level];
            if (r >= n)
                r -= n;
        }
    };
    descend(descend, 0, 0, 1.0);
    acc.add(-1.0);  // remove the all-zero frequency counted above
    return acc.value();
}

}  // namespace latgen
