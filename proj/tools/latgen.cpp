#include <CLI11.hpp>

#include <cstdio>
#include <fstream>
#include <functional>
#include <iostream>
#include <optional>
#include <random>
#include <sstream>

#include "latgen/bounds.hpp"
#include "latgen/cbc.hpp"
#include "latgen/diagnostics.hpp"
#include "latgen/json_io.hpp"
#include "latgen/util.hpp"
#include "latgen/zeta.hpp"

using namespace latgen;

namespace {

std::vector<double> parse_weights(const std::string& text, std::uint32_t s) {
    auto bad = [&](const std::string& why) {
        return std::invalid_argument("bad weight spec '" + text + "': " + why);
    };
    auto colon = text.find(':');
    if (colon == std::string::npos)
        throw bad("expected const:<c>, poly:<a> or list:<v1,v2,...>");
    const std::string head = text.substr(0, colon);
    const std::string tail = text.substr(colon + 1);
    if (head == "const") {
        try {
            return constant_weights(s, std::stod(tail));
        } catch (const std::invalid_argument&) {
            throw bad("constant must be a number");
        }
    }
    if (head == "poly") {
        try {
            return polynomial_weights(s, std::stod(tail));
        } catch (const std::invalid_argument&) {
            throw bad("exponent must be a number");
        }
    }
    if (head == "list") {
        std::vector<double> g;
        std::stringstream ss(tail);
        std::string item;
        while (std::getline(ss, item, ',')) {
            try {
                g.push_back(std::stod(item));
            } catch (const std::invalid_argument&) {
                throw bad("list entries must be numbers");
            }
        }
        if (g.size() < s)
            throw bad("need at least s entries");
        return g;
    }
    throw bad("unknown weight family '" + head + "'");
}

std::vector<std::uint64_t> parse_counts(const std::string& text, std::uint32_t d) {
    auto bad = [&](const std::string& why) {
        return std::invalid_argument("bad exclusion-size spec '" + text + "': " + why);
    };
    auto colon = text.find(':');
    if (colon == std::string::npos)
        throw bad("expected const:<c> or list:<v1,v2,...>");
    const std::string head = text.substr(0, colon);
    const std::string tail = text.substr(colon + 1);
    if (head == "const") {
        try {
            return std::vector<std::uint64_t>(d, std::stoull(tail));
        } catch (const std::exception&) {
            throw bad("constant must be a nonnegative integer");
        }
    }
    if (head == "list") {
        std::vector<std::uint64_t> v;
        std::stringstream ss(tail);
        std::string item;
        while (std::getline(ss, item, ',')) {
            try {
                v.push_back(std::stoull(item));
            } catch (const std::exception&) {
                throw bad("list entries must be nonnegative integers");
            }
        }
        if (v.size() < d)
            throw bad("need at least d entries");
        return v;
    }
    throw bad("unknown family '" + head + "'");
}

ExclusionPolicy load_custom_policy(const std::string& path) {
    std::ifstream in(path);
    if (!in)
        throw std::invalid_argument("cannot open custom exclusion file '" + path + "'");
    nlohmann::json doc;
    try {
        in >> doc;
    } catch (const nlohmann::json::parse_error& e) {
        throw std::invalid_argument("custom exclusion file is not valid JSON: " + std::string(e.what()));
    }
    if (!doc.is_object())
        throw std::invalid_argument("custom exclusion file must map component indices to arrays");
    ExclusionPolicy policy;
    policy.kind = PolicyKind::custom;
    for (const auto& [key, value] : doc.items()) {
        std::uint32_t j = 0;
        try {
            j = static_cast<std::uint32_t>(std::stoul(key));
        } catch (const std::exception&) {
            throw std::invalid_argument("custom exclusion keys must be component indices, got '" + key + "'");
        }
        if (!value.is_array())
            throw std::invalid_argument("custom exclusions for component " + key + " must be an array");
        policy.custom_sets[j] = value.get<std::vector<std::uint64_t>>();
    }
    return policy;
}

void write_output(const std::string& text, const std::string& path) {
    if (path.empty() || path == "-") {
        std::cout << text;
        return;
    }
    std::ofstream out(path, std::ios::binary);
    if (!out)
        throw std::runtime_error("cannot open output file '" + path + "'");
    out << text;
}

nlohmann::json read_json_file(const std::string& path) {
    std::ifstream in(path);
    if (!in)
        throw std::invalid_argument("cannot open input file '" + path + "'");
    nlohmann::json doc;
    try {
        in >> doc;
    } catch (const nlohmann::json::parse_error& e) {
        throw std::invalid_argument("input file is not valid JSON: " + std::string(e.what()));
    }
    return doc;
}

void emit_error(int code, const std::string& message) {
    nlohmann::ordered_json doc;
    doc["error"] = nlohmann::ordered_json{{"code", code}, {"message", message}};
    std::cerr << dump_json(doc);
}

struct Options {
    std::uint64_t b = 2;
    std::uint32_t m = 1;
    std::uint32_t s = 1;
    double alpha = 2.0;
    std::string gamma = "const:1";
    std::string schedule = "const:0";
    std::string policy = "none";
    std::string custom_file;
    std::string engine = "fast";
    std::string output;
    std::string format = "json";

    std::string input;
    std::uint32_t d = 0;
    std::string exclusion_sizes = "const:0";
    double lambda = -1.0;  // < 0 means optimize
    std::uint32_t lambda_grid = 64;
    bool curve = false;

    std::string checks;
    std::uint32_t d_max = 10;
    std::uint64_t oracle_h = 256;
};

int run_construct(const Options& opt) {
    LatticeParams params =
        LatticeParams::make(opt.b, opt.m, opt.s, opt.alpha, parse_weights(opt.gamma, opt.s));
    ReductionSchedule sched = ReductionSchedule::parse(opt.schedule, opt.b, opt.s);
    ExclusionPolicy policy = opt.custom_file.empty() ? ExclusionPolicy::parse(opt.policy)
                                                     : load_custom_policy(opt.custom_file);
    Engine engine = parse_engine(opt.engine);

    ConstructionResult r = construct(params, sched, policy, engine);
    if (r.work.fft_fallbacks > 0)
        std::cerr << "note: sweep fell back to the direct path " << r.work.fft_fallbacks
                  << " time(s); modulus below b^2\n";

    if (opt.format == "csv")
        write_output(result_to_csv(r), opt.output);
    else
        write_output(dump_json(result_to_json(r)), opt.output);
    return 0;
}

int run_bound(const Options& opt) {
    BoundInputs in;
    if (!opt.input.empty()) {
        ConstructionResult r = result_from_json(read_json_file(opt.input));
        const std::uint32_t d = opt.d == 0 ? static_cast<std::uint32_t>(r.z.size()) : opt.d;
        in = bound_inputs_for(r, d);
    } else {
        const std::uint32_t d = opt.d == 0 ? opt.s : opt.d;
        if (d == 0)
            throw std::invalid_argument("--d (or --s) is required without --input");
        in.params = LatticeParams::make(opt.b, opt.m, d, opt.alpha, parse_weights(opt.gamma, d));
        in.w = ReductionSchedule::parse(opt.schedule, opt.b, d).w;
        in.exclusion_sizes = parse_counts(opt.exclusion_sizes, d);
        in.d = d;
    }
    in.lambda = opt.lambda > 0 ? opt.lambda : 1.0;
    in.validate();

    std::optional<double> fixed;
    if (opt.lambda > 0)
        fixed = opt.lambda;
    BoundReport rep = bound_report(in, fixed, opt.lambda_grid, opt.curve);

    if (opt.format == "csv")
        write_output(bound_report_to_csv(rep, in.d), opt.output);
    else
        write_output(dump_json(bound_report_to_json(rep, in)), opt.output);
    return 0;
}

// ---- check suite ----------------------------------------------------------

using CheckFn = std::function<std::optional<std::string>()>;

std::optional<std::string> check_omega_series() {
    std::mt19937_64 rng(20240811);
    std::uniform_real_distribution<double> unif(0.001, 0.999);
    for (double alpha : {2.0, 4.0, 6.0}) {
        for (int i = 0; i < 200; ++i) {
            const double x = unif(rng);
            const double closed = omega(x, alpha);
            const double series = omega_series_reference(x, alpha, 1e-10);
            const double diff = std::abs(closed - series);
            if (diff > 5e-10)
                return "series/closed-form gap " + std::to_string(diff) + " at x=" +
                       std::to_string(x) + ", alpha=" + std::to_string(alpha);
        }
    }
    return std::nullopt;
}

std::optional<std::string> check_dual_lattice(std::uint64_t H) {
    LatticeParams p = LatticeParams::make(2, 3, 3, 2.0, {1.0, 0.75, 0.5});
    const std::vector<std::uint64_t> zt{1, 3, 5};
    for (std::size_t d = 1; d <= 3; ++d) {
        std::span<const std::uint64_t> prefix(zt.data(), d);
        const double exact = squared_error(prefix, p);
        double prev = 0.0;
        for (std::uint64_t h = std::max<std::uint64_t>(H / 4, 1); h <= H; h *= 2) {
            const double truncated = dual_lattice_error(prefix, p, h);
            if (truncated + 1e-12 < prev)
                return "truncated sum not monotone in H at d=" + std::to_string(d);
            if (truncated > exact * (1.0 + 1e-9))
                return "truncated sum exceeds the exact error at d=" + std::to_string(d);
            prev = truncated;
        }
        if (std::abs(prev - exact) > 0.05 * exact)
            return "truncated sum off by more than 5% at d=" + std::to_string(d);
    }
    return std::nullopt;
}

std::optional<std::string> check_engines() {
    for (std::uint64_t b : {std::uint64_t{2}, std::uint64_t{3}}) {
        for (std::uint32_t m : {b == 2 ? 3u : 2u, b == 2 ? 6u : 4u}) {
            const std::uint32_t s = 8;
            LatticeParams p = LatticeParams::make(b, m, s, 2.0, polynomial_weights(s, 1.0));
            for (const char* sched_text : {"const:0", "log"}) {
                ReductionSchedule sched = ReductionSchedule::parse(sched_text, b, s);
                for (PolicyKind kind : {PolicyKind::none, PolicyKind::no_repeat}) {
                    ExclusionPolicy policy;
                    policy.kind = kind;
                    ConstructionResult fast = construct(p, sched, policy, Engine::fast);
                    ConstructionResult naive = construct(p, sched, policy, Engine::naive);
                    if (fast.ztilde != naive.ztilde)
                        return std::string("engines disagree for b=") + std::to_string(b) +
                               " m=" + std::to_string(m) + " schedule=" + sched_text +
                               " policy=" + policy_name(kind);
                    for (std::size_t i = 0; i < s; ++i) {
                        const double a = fast.step_errors[i];
                        const double c = naive.step_errors[i];
                        if (std::abs(a - c) > 1e-10 * std::abs(c))
                            return "step errors diverge at d=" + std::to_string(i + 1);
                    }
                }
            }
        }
    }
    return std::nullopt;
}

std::optional<std::string> check_bounds(std::uint32_t d_max) {
    std::mt19937_64 rng(987654321);
    std::uniform_real_distribution<double> unif(0.0, 1.0);
    for (int draw = 0; draw < 25; ++draw) {
        const std::uint64_t b = std::vector<std::uint64_t>{2, 3, 5}[rng() % 3];
        const std::uint32_t m = 2 + static_cast<std::uint32_t>(rng() % 5);
        const std::uint32_t d = 1 + static_cast<std::uint32_t>(rng() % d_max);
        BoundInputs in;
        std::vector<double> gamma(d);
        for (double& g : gamma)
            g = std::pow(10.0, -3.0 * unif(rng));
        in.params = LatticeParams::make(b, m, d, 1.5 + 2.0 * unif(rng), gamma);
        in.w.resize(d);
        in.exclusion_sizes.resize(d);
        std::uint32_t w = 0;
        for (std::uint32_t j = 0; j < d; ++j) {
            if (j > 0 && rng() % 3 == 0)
                w += static_cast<std::uint32_t>(rng() % 2);
            in.w[j] = w;
            const std::uint64_t zj = search_space_size(in.params, w);
            in.exclusion_sizes[j] = zj > 1 ? rng() % (zj / 2 + 1) : 0;
        }
        in.d = d;
        in.lambda = (1.0 + 1e-6) / in.params.alpha +
                    (1.0 - (1.0 + 1e-6) / in.params.alpha) * unif(rng);
        const double g1 = theorem1_bound(in);
        const double g1d = theorem1_bound_direct(in);
        const double g2 = theorem2_bound(in);
        const double g2d = theorem2_bound_direct(in);
        if (std::abs(g1 - g1d) > 1e-12 * g1d)
            return "first bound: grouped vs direct gap at draw " + std::to_string(draw);
        if (std::abs(g2 - g2d) > 1e-12 * g2d)
            return "second bound: grouped vs direct gap at draw " + std::to_string(draw);
    }
    return std::nullopt;
}

std::optional<std::string> check_dominance() {
    for (std::uint64_t b : {std::uint64_t{2}, std::uint64_t{3}}) {
        const std::uint32_t m = b == 2 ? 5 : 3;
        const std::uint32_t s = 6;
        LatticeParams p = LatticeParams::make(b, m, s, 2.0, constant_weights(s, 0.5));
        ExclusionPolicy policy;
        policy.kind = PolicyKind::no_repeat;
        ConstructionResult r =
            construct(p, ReductionSchedule::parse("log", b, s), policy, Engine::fast);
        for (std::uint32_t d = 1; d <= s; ++d) {
            BoundInputs in = bound_inputs_for(r, d);
            for (int i = 1; i <= 16; ++i) {
                in.lambda = 1.0 / p.alpha + (1.0 - 1.0 / p.alpha) * i / 16.0;
                if (r.step_errors[d - 1] > theorem2_bound(in))
                    return "second bound violated at d=" + std::to_string(d);
                if (r.step_errors[d - 1] > theorem1_bound(in))
                    return "first bound violated at d=" + std::to_string(d);
            }
        }
    }
    return std::nullopt;
}

std::optional<std::string> check_file(const std::string& path) {
    nlohmann::json doc = read_json_file(path);
    auto issues = validate_result_json(doc);
    if (!issues.empty())
        return "schema: " + issues.front();
    ConstructionResult r = result_from_json(doc);
    try {
        r.params.validate();
    } catch (const std::invalid_argument& e) {
        return std::string("parameters: ") + e.what();
    }
    ReductionSchedule sched{std::vector<std::uint32_t>(r.w.begin(), r.w.end())};
    try {
        sched.validate(r.params.s);
    } catch (const std::invalid_argument& e) {
        return std::string("schedule: ") + e.what();
    }
    Thresholds th = thresholds(sched, r.params.m, r.params.s);
    if (th.t1 != r.t1 || th.t2 != r.t2)
        return "thresholds t1/t2 do not match the schedule";
    if (r.z.empty() || r.z[0] != 1 || r.ztilde[0] != 1)
        return "first component must be 1";
    for (std::size_t j = 0; j < r.z.size(); ++j) {
        const std::uint32_t step = static_cast<std::uint32_t>(j + 1);
        if (step >= r.t2) {
            if (r.ztilde[j] != 0)
                return "component " + std::to_string(step) + " should be 0 past the collapse point";
        } else {
            const std::uint64_t scale = checked_pow(r.params.b, r.w[j]);
            if (r.ztilde[j] != scale * r.z[j] % r.params.n)
                return "component " + std::to_string(step) + " does not equal b^w * z";
            if (r.exclusion_sizes[j] >= search_space_size(r.params, r.w[j]))
                return "exclusion size at component " + std::to_string(step) +
                       " covers its whole search space";
        }
    }
    for (std::size_t d = 1; d <= r.ztilde.size(); ++d) {
        std::span<const std::uint64_t> prefix(r.ztilde.data(), d);
        const double fresh = squared_error(prefix, r.params);
        if (std::abs(fresh - r.step_errors[d - 1]) > 1e-12 * std::abs(fresh))
            return "step_errors[" + std::to_string(d) + "] does not match a fresh evaluation";
    }
    if (!cost_audit(r).within_budget)
        return "exclusion_checks exceed the s*N budget";
    return std::nullopt;
}

int run_check(const Options& opt) {
    std::vector<std::pair<std::string, CheckFn>> suite;
    suite.emplace_back("omega", check_omega_series);
    suite.emplace_back("dual", [&] { return check_dual_lattice(opt.oracle_h); });
    suite.emplace_back("engines", check_engines);
    suite.emplace_back("bounds", [&] { return check_bounds(opt.d_max); });
    suite.emplace_back("dominance", check_dominance);
    if (!opt.input.empty())
        suite.emplace_back("file", [&] { return check_file(opt.input); });

    std::vector<std::string> wanted;
    if (!opt.checks.empty()) {
        std::stringstream ss(opt.checks);
        std::string item;
        while (std::getline(ss, item, ','))
            wanted.push_back(item);
    }
    auto selected = [&](const std::string& name) {
        if (wanted.empty())
            return true;
        for (const std::string& w : wanted)
            if (w == name)
                return true;
        return false;
    };

    bool all_pass = true;
    bool ran_any = false;
    for (auto& [name, fn] : suite) {
        if (!selected(name))
            continue;
        ran_any = true;
        std::optional<std::string> failure = fn();
        if (failure) {
            all_pass = false;
            std::cout << "check " << name << ": FAIL (" << *failure << ")\n";
        } else {
            std::cout << "check " << name << ": pass\n";
        }
    }
    if (!ran_any)
        throw std::invalid_argument("no known check selected by --checks '" + opt.checks + "'");
    return all_pass ? 0 : 3;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"rank-1 lattice generating vectors: reduced CBC construction with projection exclusions"};
    app.require_subcommand(1);
    Options opt;

    CLI::App* construct_cmd = app.add_subcommand("construct", "run the construction and emit the result");
    construct_cmd->add_option("--b", opt.b, "prime base")->required();
    construct_cmd->add_option("--m", opt.m, "exponent; the point count is b^m")->required();
    construct_cmd->add_option("--s", opt.s, "dimension")->required();
    construct_cmd->add_option("--alpha", opt.alpha, "smoothness, > 1")->capture_default_str();
    construct_cmd->add_option("--gamma", opt.gamma, "weights: const:<c> | poly:<a> | list:<v,...>")
        ->capture_default_str();
    construct_cmd->add_option("--schedule", opt.schedule,
                              "reduction levels: const:<c> | linear:<c> | log | list:<w,...>")
        ->capture_default_str();
    construct_cmd->add_option("--policy", opt.policy, "exclusions: none | no-repeat | anti-diagonal")
        ->capture_default_str();
    construct_cmd->add_option("--custom-exclusions", opt.custom_file,
                              "JSON file of per-component exclusion sets (overrides --policy)");
    construct_cmd->add_option("--engine", opt.engine, "naive | fast")->capture_default_str();
    construct_cmd->add_option("--output,-o", opt.output, "output path (default stdout)");
    construct_cmd->add_option("--format", opt.format, "json | csv")->capture_default_str();

    CLI::App* bound_cmd = app.add_subcommand("bound", "evaluate the error bounds");
    bound_cmd->add_option("--input", opt.input, "construct result file; bounds use its levels and exclusions");
    bound_cmd->add_option("--b", opt.b, "prime base (without --input)");
    bound_cmd->add_option("--m", opt.m, "exponent (without --input)");
    bound_cmd->add_option("--alpha", opt.alpha, "smoothness")->capture_default_str();
    bound_cmd->add_option("--gamma", opt.gamma, "weights")->capture_default_str();
    bound_cmd->add_option("--schedule", opt.schedule, "reduction levels")->capture_default_str();
    bound_cmd->add_option("--exclusion-sizes", opt.exclusion_sizes,
                          "per-component |E_j|: const:<c> | list:<v,...>")
        ->capture_default_str();
    bound_cmd->add_option("--d", opt.d, "prefix length (defaults to s, or the input's dimension)");
    bound_cmd->add_option("--s", opt.s, "dimension, alias for --d without --input");
    bound_cmd->add_option("--lambda", opt.lambda, "fix lambda instead of optimizing");
    bound_cmd->add_option("--lambda-grid", opt.lambda_grid, "grid points for the lambda search")
        ->capture_default_str();
    bound_cmd->add_flag("--curve", opt.curve, "emit per-prefix bound values");
    bound_cmd->add_option("--output,-o", opt.output, "output path (default stdout)");
    bound_cmd->add_option("--format", opt.format, "json | csv")->capture_default_str();

    CLI::App* check_cmd = app.add_subcommand("check", "run oracle cross-checks");
    check_cmd->add_option("--checks", opt.checks,
                          "comma list from {omega, dual, engines, bounds, dominance, file}; default all");
    check_cmd->add_option("--d-max", opt.d_max, "largest prefix for the bound enumeration check")
        ->capture_default_str();
    check_cmd->add_option("--oracle-H", opt.oracle_h, "dual-lattice truncation")->capture_default_str();
    check_cmd->add_option("--input", opt.input, "construct result file to verify");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 1;
    }

    try {
        if (construct_cmd->parsed())
            return run_construct(opt);
        if (bound_cmd->parsed())
            return run_bound(opt);
        return run_check(opt);
    } catch (const policy_error& e) {
        emit_error(2, e.what());
        return 2;
    } catch (const std::exception& e) {
        emit_error(1, e.what());
        return 1;
    }
}
