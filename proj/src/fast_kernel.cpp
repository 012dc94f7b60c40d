#include "latgen/fast_kernel.hpp"

#include <fftw3.h>

#include <complex>
#include <mutex>
#include <stdexcept>

#include "latgen/util.hpp"

namespace latgen {

double ProductVector::implied_error() const {
    NeumaierSum acc;
    for (double v : p)
        acc.add(v - 1.0);
    return acc.value() / static_cast<double>(p.size());
}

void update_products(ProductVector& pv, std::uint64_t ztilde, double gamma_j,
                     const OmegaTable& table) {
    const std::uint64_t n = pv.p.size();
    if (table.size() != n)
        throw std::invalid_argument("update_products: omega table size mismatch");
    const std::uint64_t step = ztilde % n;
    std::uint64_t r = 0;
    for (std::uint64_t k = 0; k < n; ++k) {
        pv.p[k] *= 1.0 + gamma_j * table[r];
        r += step;
        if (r >= n)
            r -= n;
    }
    ++pv.dims;
}

FoldedVector fold_products(const ProductVector& pv, std::uint64_t modulus) {
    const std::uint64_t n = pv.p.size();
    if (modulus == 0 || n % modulus != 0)
        throw std::invalid_argument("fold_products: modulus must divide the point count");
    FoldedVector f;
    f.modulus = modulus;
    f.q.resize(modulus);
    parallel_for(modulus, [&](std::uint64_t lo, std::uint64_t hi) {
        for (std::uint64_t r = lo; r < hi; ++r) {
            NeumaierSum acc;
            for (std::uint64_t k = r; k < n; k += modulus)
                acc.add(pv.p[k]);
            f.q[r] = acc.value();
        }
    });
    return f;
}

std::vector<double> sweep_errors_direct(const FoldedVector& q, double gamma_next,
                                        const SearchSpace& space, const LatticeParams& p,
                                        const OmegaTable& table, double prior_error,
                                        StepWork* work) {
    const std::uint64_t M = q.modulus;
    if (space.modulus != M)
        throw std::invalid_argument("sweep: fold modulus does not match the search space");
    const std::uint64_t stride = p.n / M;  // exact: table[i * stride] = omega(i / M)
    const double inv_n = 1.0 / static_cast<double>(p.n);

    std::vector<double> errors(space.candidates.size());
    parallel_for(space.candidates.size(), [&](std::uint64_t lo, std::uint64_t hi) {
        for (std::uint64_t i = lo; i < hi; ++i) {
            const std::uint64_t step = space.candidates[i] % M;
            std::uint64_t idx = 0;
            NeumaierSum t;
            for (std::uint64_t r = 0; r < M; ++r) {
                t.add(q.q[r] * table[idx * stride]);
                idx += step;
                if (idx >= M)
                    idx -= M;
            }
            errors[i] = prior_error + gamma_next * t.value() * inv_n;
        }
    });
    if (work)
        work->kernel_ops += space.candidates.size() * M;
    return errors;
}

namespace {

std::uint64_t mul_mod(std::uint64_t a, std::uint64_t b, std::uint64_t m) {
    return static_cast<std::uint64_t>((static_cast<unsigned __int128>(a) * b) % m);
}

std::uint64_t pow_mod(std::uint64_t base, std::uint64_t exp, std::uint64_t m) {
    std::uint64_t r = 1 % m;
    base %= m;
    while (exp) {
        if (exp & 1)
            r = mul_mod(r, base, m);
        base = mul_mod(base, base, m);
        exp >>= 1;
    }
    return r;
}

std::uint32_t ceil_log2(std::uint64_t x) {
    std::uint32_t l = 0;
    while ((std::uint64_t{1} << l) < x)
        ++l;
    return l;
}

// c[j] = sum_i a[i] * k[(i + j) mod L]
std::vector<double> correlate_direct(const std::vector<double>& a, const std::vector<double>& k) {
    const std::size_t L = a.size();
    std::vector<double> c(L);
    for (std::size_t j = 0; j < L; ++j) {
        NeumaierSum acc;
        for (std::size_t i = 0; i < L; ++i) {
            std::size_t idx = i + j;
            if (idx >= L)
                idx -= L;
            acc.add(a[i] * k[idx]);
        }
        c[j] = acc.value();
    }
    return c;
}

// FFTW plan management is not thread-safe; execution is.
std::mutex& fftw_mutex() {
    static std::mutex mu;
    return mu;
}

std::vector<double> correlate_fft(const std::vector<double>& a, const std::vector<double>& k) {
    const std::size_t L = a.size();
    std::vector<std::complex<double>> in(L), out(L), fa(L), fk(L);
    auto* in_c = reinterpret_cast<fftw_complex*>(in.data());
    auto* out_c = reinterpret_cast<fftw_complex*>(out.data());

    fftw_plan fwd, bwd;
    {
        std::lock_guard<std::mutex> lock(fftw_mutex());
        fwd = fftw_plan_dft_1d(static_cast<int>(L), in_c, out_c, FFTW_FORWARD, FFTW_ESTIMATE);
        bwd = fftw_plan_dft_1d(static_cast<int>(L), in_c, out_c, FFTW_BACKWARD, FFTW_ESTIMATE);
    }

    for (std::size_t i = 0; i < L; ++i)
        in[i] = a[i];
    fftw_execute(fwd);
    fa.assign(out.begin(), out.end());
    for (std::size_t i = 0; i < L; ++i)
        in[i] = k[i];
    fftw_execute(fwd);
    fk.assign(out.begin(), out.end());

    // correlation theorem for real a: spectrum = fk * conj(fa)
    for (std::size_t i = 0; i < L; ++i)
        in[i] = fk[i] * std::conj(fa[i]);
    fftw_execute(bwd);

    std::vector<double> c(L);
    const double scale = 1.0 / static_cast<double>(L);
    for (std::size_t i = 0; i < L; ++i)
        c[i] = out[i].real() * scale;
    {
        std::lock_guard<std::mutex> lock(fftw_mutex());
        fftw_destroy_plan(fwd);
        fftw_destroy_plan(bwd);
    }
    return c;
}

constexpr std::size_t direct_correlation_cutoff = 32;

struct SweepLevel {
    std::uint64_t group_modulus = 1;        // b^e
    std::vector<std::uint32_t> index;       // residue mod b^e -> correlation slot
    std::vector<double> c;                  // correlation output per slot
};

}  // namespace

std::uint64_t primitive_root_prime_power(std::uint64_t b, std::uint32_t e) {
    if (b == 2) {
        std::uint64_t be = checked_pow(2, e);
        if (be <= 2)
            return 1;
        if (be == 4)
            return 3;
        throw std::invalid_argument("units mod 2^e are not cyclic for e >= 3");
    }
    // factor b - 1
    std::vector<std::uint64_t> factors;
    std::uint64_t rem = b - 1;
    for (std::uint64_t f = 2; f * f <= rem; ++f) {
        if (rem % f == 0) {
            factors.push_back(f);
            while (rem % f == 0)
                rem /= f;
        }
    }
    if (rem > 1)
        factors.push_back(rem);

    std::uint64_t g = 0;
    for (std::uint64_t cand = 2; cand < b; ++cand) {
        bool ok = true;
        for (std::uint64_t f : factors) {
            if (pow_mod(cand, (b - 1) / f, b) == 1) {
                ok = false;
                break;
            }
        }
        if (ok) {
            g = cand;
            break;
        }
    }
    if (g == 0)
        throw std::logic_error("no primitive root found; base not prime?");
    if (e >= 2 && pow_mod(g, b - 1, b * b) == 1)
        g += b;  // standard lift so g generates every power
    return g;
}

std::vector<double> sweep_errors_fft(const FoldedVector& q, double gamma_next,
                                     const SearchSpace& space, const LatticeParams& p,
                                     const OmegaTable& table, double prior_error,
                                     StepWork* work, std::uint64_t* fft_fallbacks) {
    const std::uint64_t M = q.modulus;
    if (space.modulus != M)
        throw std::invalid_argument("sweep: fold modulus does not match the search space");
    if (M < p.b * p.b) {
        // group structure too small to decompose; the direct scan is exact and cheap
        if (fft_fallbacks)
            ++*fft_fallbacks;
        return sweep_errors_direct(q, gamma_next, space, p, table, prior_error, work);
    }

    std::uint32_t t = 0;
    for (std::uint64_t v = M; v > 1; v /= p.b)
        ++t;

    // T(z) = q[0]*omega(0) + sum over levels v of C_v[slot of z], where level v
    // collects residues r = b^v * u with u a unit mod b^(t-v).
    std::vector<SweepLevel> levels;
    levels.reserve(t);
    std::uint64_t bv = 1;  // b^v
    for (std::uint32_t v = 0; v < t; ++v, bv *= p.b) {
        const std::uint32_t e = t - v;
        const std::uint64_t be = M / bv;  // b^e
        const std::uint64_t stride = p.n / be;
        SweepLevel lvl;
        lvl.group_modulus = be;
        lvl.index.assign(be, 0);

        std::vector<double> a, kern;
        if (p.b == 2 && e >= 3) {
            // units mod 2^e split as {+-1} x <3>; omega's x <-> 1-x symmetry
            // makes the kernel even, so both sign classes share one
            // correlation over the <3> block of length 2^(e-2)
            const std::uint64_t L = be / 4;
            a.resize(L);
            kern.resize(L);
            std::uint64_t pw = 1;
            for (std::uint64_t i = 0; i < L; ++i) {
                lvl.index[pw] = static_cast<std::uint32_t>(i);
                lvl.index[be - pw] = static_cast<std::uint32_t>(i);
                kern[i] = table[pw * stride];
                a[i] = q.q[bv * pw] + q.q[bv * (be - pw)];
                pw = pw * 3 % be;
            }
        } else {
            const std::uint64_t L = be - be / p.b;  // phi(b^e)
            const std::uint64_t g = primitive_root_prime_power(p.b, e);
            a.resize(L);
            kern.resize(L);
            std::uint64_t pw = 1;
            for (std::uint64_t i = 0; i < L; ++i) {
                lvl.index[pw] = static_cast<std::uint32_t>(i);
                kern[i] = table[pw * stride];
                a[i] = q.q[bv * pw];
                pw = mul_mod(pw, g, be);
            }
        }

        if (a.size() < direct_correlation_cutoff) {
            lvl.c = correlate_direct(a, kern);
            if (work)
                work->kernel_ops += a.size() * a.size();
        } else {
            lvl.c = correlate_fft(a, kern);
            if (work)
                work->kernel_ops += 3 * a.size() * ceil_log2(a.size());
        }
        levels.push_back(std::move(lvl));
    }

    const double base_term = q.q[0] * table[0];
    const double inv_n = 1.0 / static_cast<double>(p.n);
    std::vector<double> errors(space.candidates.size());
    for (std::size_t i = 0; i < space.candidates.size(); ++i) {
        const std::uint64_t z = space.candidates[i];
        double tsum = base_term;
        for (const SweepLevel& lvl : levels)
            tsum += lvl.c[lvl.index[z % lvl.group_modulus]];
        errors[i] = prior_error + gamma_next * tsum * inv_n;
    }
    if (work)
        work->kernel_ops += space.candidates.size() * (t + 1);
    return errors;
}

}  // namespace latgen
