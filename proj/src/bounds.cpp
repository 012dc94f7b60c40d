#include "latgen/bounds.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

#include "latgen/util.hpp"
#include "latgen/zeta.hpp"

namespace latgen {

void BoundInputs::validate() const {
    params.validate();
    if (d < 1)
        throw std::invalid_argument("bound inputs need d >= 1");
    if (w.size() < d || exclusion_sizes.size() < d)
        throw std::invalid_argument("bound inputs need levels and exclusion sizes for all d coordinates");
    if (params.gamma.size() < d)
        throw std::invalid_argument("bound inputs need a weight per coordinate");
    if (!(lambda <= 1.0))
        throw std::invalid_argument("lambda must be at most 1");
    if (!(params.alpha * lambda >= 1.0 + 1e-9))
        throw std::invalid_argument("alpha * lambda too close to 1; the zeta factor diverges");
    if (w[0] != 0)
        throw std::invalid_argument("first coordinate must be at level 0");
    for (std::uint32_t j = 1; j < d; ++j)
        if (w[j] < w[j - 1])
            throw std::invalid_argument("levels must be nondecreasing");
    for (std::uint32_t j = 0; j < d; ++j) {
        std::uint64_t zj = search_space_size(params, w[j]);
        if (exclusion_sizes[j] >= zj)
            throw std::invalid_argument("exclusion size " + std::to_string(exclusion_sizes[j]) +
                                        " at coordinate " + std::to_string(j + 1) +
                                        " covers its whole search space");
    }
}

double theorem1_bound(const BoundInputs& in) {
    in.validate();
    const double zeta2 = 2.0 * riemann_zeta(in.params.alpha * in.lambda);
    const double phi = static_cast<double>(in.params.totient());
    double prod = 1.0;
    for (std::uint32_t j = 0; j < in.d; ++j) {
        const std::uint64_t admissible =
            search_space_size(in.params, in.w[j]) - in.exclusion_sizes[j];
        prod *= 1.0 + std::pow(in.params.gamma[j], in.lambda) * zeta2 *
                          (phi / static_cast<double>(admissible));
    }
    return std::pow(prod / phi, 1.0 / in.lambda);
}

double theorem1_bound_direct(const BoundInputs& in) {
    in.validate();
    if (in.d > 20)
        throw std::invalid_argument("direct subset enumeration capped at d = 20");
    const double zeta2 = 2.0 * riemann_zeta(in.params.alpha * in.lambda);
    const double phi = static_cast<double>(in.params.totient());
    std::vector<double> term(in.d);
    for (std::uint32_t j = 0; j < in.d; ++j) {
        const std::uint64_t admissible =
            search_space_size(in.params, in.w[j]) - in.exclusion_sizes[j];
        term[j] = std::pow(in.params.gamma[j], in.lambda) * zeta2 *
                  (phi / static_cast<double>(admissible));
    }
    NeumaierSum acc;
    for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << in.d); ++mask) {
        double prod = 1.0;
        for (std::uint32_t j = 0; j < in.d; ++j)
            if (mask & (std::uint64_t{1} << j))
                prod *= term[j];
        acc.add(prod);
    }
    return std::pow(acc.value() / phi, 1.0 / in.lambda);
}

double theorem2_bound(const BoundInputs& in) {
    in.validate();
    const double zeta4 = 4.0 * riemann_zeta(in.params.alpha * in.lambda);
    NeumaierSum acc;
    acc.add(1.0 / static_cast<double>(in.params.totient()));
    double running = 1.0;  // prod_{j<k} (1 + gamma_j^lambda zeta4 c_j)
    for (std::uint32_t k = 0; k < in.d; ++k) {
        const std::uint64_t zk = search_space_size(in.params, in.w[k]);
        const std::uint64_t admissible = zk - in.exclusion_sizes[k];
        const double gk = std::pow(in.params.gamma[k], in.lambda);
        // c_k / |Z_k| = 1 / (|Z_k| - |E_k|)
        acc.add(gk * zeta4 / static_cast<double>(admissible) * running);
        const double ck = static_cast<double>(zk) / static_cast<double>(admissible);
        running *= 1.0 + gk * zeta4 * ck;
    }
    return std::pow(acc.value(), 1.0 / in.lambda);
}

double theorem2_bound_direct(const BoundInputs& in) {
    in.validate();
    if (in.d > 20)
        throw std::invalid_argument("direct subset enumeration capped at d = 20");
    const double zeta4 = 4.0 * riemann_zeta(in.params.alpha * in.lambda);
    std::vector<double> factor(in.d);
    for (std::uint32_t j = 0; j < in.d; ++j) {
        const std::uint64_t zj = search_space_size(in.params, in.w[j]);
        const std::uint64_t admissible = zj - in.exclusion_sizes[j];
        factor[j] = std::pow(in.params.gamma[j], in.lambda) * zeta4 *
                    static_cast<double>(zj) / static_cast<double>(admissible);
    }
    NeumaierSum acc;
    for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << in.d); ++mask) {
        double prod = 1.0;
        std::uint32_t wmax = 0;
        for (std::uint32_t j = 0; j < in.d; ++j) {
            if (mask & (std::uint64_t{1} << j)) {
                prod *= factor[j];
                wmax = std::max(wmax, in.w[j]);  // empty subset keeps wmax = 0
            }
        }
        const std::uint32_t depth = in.params.m > wmax ? in.params.m - wmax : 0;
        acc.add(prod / static_cast<double>(totient_prime_power(in.params.b, depth)));
    }
    return std::pow(acc.value(), 1.0 / in.lambda);
}

namespace {

double eval_bound(BoundKind kind, BoundInputs& scratch, double lambda) {
    scratch.lambda = lambda;
    return kind == BoundKind::theorem1 ? theorem1_bound(scratch) : theorem2_bound(scratch);
}

}  // namespace

LambdaOpt optimize_lambda(BoundKind kind, const BoundInputs& base, std::uint32_t grid_points,
                          std::optional<double> lo_opt, std::optional<double> hi_opt) {
    const double alpha = base.params.alpha;
    double lo = lo_opt.value_or(1.0 / alpha + 1e-6);
    double hi = hi_opt.value_or(1.0);
    if (lo > hi)
        throw std::invalid_argument("lambda interval is empty");
    if (grid_points < 2)
        grid_points = 2;

    BoundInputs scratch = base;
    LambdaOpt best{lo, eval_bound(kind, scratch, lo)};
    if (lo == hi)
        return best;

    std::uint32_t best_idx = 0;
    for (std::uint32_t i = 1; i < grid_points; ++i) {
        const double lam = lo + (hi - lo) * i / (grid_points - 1);
        const double v = eval_bound(kind, scratch, lam);
        if (v < best.value) {
            best = {lam, v};
            best_idx = i;
        }
    }

    // golden-section refinement in the bracket around the grid minimum
    double a = lo + (hi - lo) * (best_idx == 0 ? 0 : best_idx - 1) / (grid_points - 1);
    double b = lo + (hi - lo) * std::min(best_idx + 1, grid_points - 1) / (grid_points - 1);
    constexpr double invphi = 0.6180339887498949;
    double x1 = b - invphi * (b - a);
    double x2 = a + invphi * (b - a);
    double f1 = eval_bound(kind, scratch, x1);
    double f2 = eval_bound(kind, scratch, x2);
    for (int it = 0; it < 80 && b - a > 1e-12; ++it) {
        if (f1 <= f2) {
            b = x2;
            x2 = x1;
            f2 = f1;
            x1 = b - invphi * (b - a);
            f1 = eval_bound(kind, scratch, x1);
        } else {
            a = x1;
            x1 = x2;
            f1 = f2;
            x2 = a + invphi * (b - a);
            f2 = eval_bound(kind, scratch, x2);
        }
    }
    const double xr = f1 <= f2 ? x1 : x2;
    const double fr = std::min(f1, f2);
    if (fr < best.value)
        best = {xr, fr};
    return best;
}

BoundInputs bound_inputs_for(const ConstructionResult& r, std::uint32_t d) {
    if (d < 1 || d > r.z.size())
        throw std::invalid_argument("prefix length out of range for this construction");
    BoundInputs in;
    in.params = r.params;
    in.w = r.w;
    in.exclusion_sizes = r.exclusion_sizes;
    in.d = d;
    return in;
}

BoundReport bound_report(const BoundInputs& in, std::optional<double> fixed_lambda,
                         std::uint32_t grid_points, bool with_curve) {
    BoundReport rep;
    auto at_d = [&](std::uint32_t d) {
        BoundInputs cut = in;
        cut.d = d;
        BoundPoint pt;
        pt.d = d;
        if (fixed_lambda) {
            cut.lambda = *fixed_lambda;
            pt.lambda_star_1 = pt.lambda_star_2 = *fixed_lambda;
            pt.thm1 = theorem1_bound(cut);
            pt.thm2 = theorem2_bound(cut);
        } else {
            LambdaOpt o1 = optimize_lambda(BoundKind::theorem1, cut, grid_points);
            LambdaOpt o2 = optimize_lambda(BoundKind::theorem2, cut, grid_points);
            pt.lambda_star_1 = o1.lambda_star;
            pt.thm1 = o1.value;
            pt.lambda_star_2 = o2.lambda_star;
            pt.thm2 = o2.value;
        }
        return pt;
    };

    if (with_curve)
        for (std::uint32_t d = 1; d <= in.d; ++d)
            rep.per_d.push_back(at_d(d));

    BoundPoint full = with_curve ? rep.per_d.back() : at_d(in.d);
    rep.thm1_value = full.thm1;
    rep.thm2_value = full.thm2;
    rep.lambda_star_1 = full.lambda_star_1;
    rep.lambda_star_2 = full.lambda_star_2;
    return rep;
}

}  // namespace latgen
