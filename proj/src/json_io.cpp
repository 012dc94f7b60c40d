#include "latgen/json_io.hpp"

#include <cinttypes>
#include <cmath>
#include <cstdio>
#include <stdexcept>

namespace latgen {

using nlohmann::json;
using nlohmann::ordered_json;

nlohmann::ordered_json result_to_json(const ConstructionResult& r) {
    ordered_json doc;
    doc["b"] = r.params.b;
    doc["m"] = r.params.m;
    doc["N"] = r.params.n;
    doc["s"] = r.params.s;
    doc["alpha"] = r.params.alpha;
    doc["gamma"] = std::vector<double>(r.params.gamma.begin(), r.params.gamma.begin() + r.params.s);
    doc["w"] = r.w;
    doc["t1"] = r.t1;
    doc["t2"] = r.t2;
    doc["z_unscaled"] = r.z;
    doc["z_scaled"] = r.ztilde;
    doc["step_errors"] = r.step_errors;
    doc["exclusion_sizes"] = r.exclusion_sizes;
    doc["forced_drop_steps"] = r.forced_drop_steps;
    doc["policy"] = policy_name(r.policy);
    doc["engine"] = engine_name(r.engine);

    ordered_json pairs = ordered_json::array();
    for (const PairProjection& pr : projection_report(r).pairs) {
        ordered_json e;
        e["i"] = pr.i;
        e["j"] = pr.j;
        e["diagonal"] = pr.diagonal;
        e["antidiagonal"] = pr.antidiagonal;
        e["distinct_points"] = pr.distinct_points;
        pairs.push_back(std::move(e));
    }
    doc["diagnostics"] = ordered_json{{"pairs", std::move(pairs)}};

    ordered_json per_step = ordered_json::array();
    for (const StepWork& sw : r.work.per_step) {
        ordered_json e;
        e["error_evaluations"] = sw.error_evaluations;
        e["exclusion_checks"] = sw.exclusion_checks;
        e["kernel_ops"] = sw.kernel_ops;
        per_step.push_back(std::move(e));
    }
    doc["work"] = ordered_json{{"error_evaluations", r.work.error_evaluations},
                               {"exclusion_checks", r.work.exclusion_checks},
                               {"kernel_ops", r.work.kernel_ops},
                               {"fft_fallbacks", r.work.fft_fallbacks},
                               {"per_step", std::move(per_step)}};
    return doc;
}

nlohmann::ordered_json bound_report_to_json(const BoundReport& rep, const BoundInputs& in) {
    ordered_json doc;
    doc["b"] = in.params.b;
    doc["m"] = in.params.m;
    doc["N"] = in.params.n;
    doc["alpha"] = in.params.alpha;
    doc["d"] = in.d;
    doc["gamma"] = std::vector<double>(in.params.gamma.begin(), in.params.gamma.begin() + in.d);
    doc["w"] = std::vector<std::uint32_t>(in.w.begin(), in.w.begin() + in.d);
    doc["exclusion_sizes"] =
        std::vector<std::uint64_t>(in.exclusion_sizes.begin(), in.exclusion_sizes.begin() + in.d);
    doc["thm1_value"] = rep.thm1_value;
    doc["lambda_star_1"] = rep.lambda_star_1;
    doc["thm2_value"] = rep.thm2_value;
    doc["lambda_star_2"] = rep.lambda_star_2;
    ordered_json curve = ordered_json::array();
    for (const BoundPoint& pt : rep.per_d) {
        ordered_json e;
        e["d"] = pt.d;
        e["lambda_star_1"] = pt.lambda_star_1;
        e["thm1"] = pt.thm1;
        e["lambda_star_2"] = pt.lambda_star_2;
        e["thm2"] = pt.thm2;
        curve.push_back(std::move(e));
    }
    doc["per_d"] = std::move(curve);
    return doc;
}

namespace {

void dump_value(const ordered_json& v, std::string& out, int depth) {
    const std::string pad(2 * static_cast<std::size_t>(depth), ' ');
    const std::string pad_in(2 * static_cast<std::size_t>(depth + 1), ' ');
    switch (v.type()) {
        case ordered_json::value_t::object: {
            if (v.empty()) {
                out += "{}";
                return;
            }
            out += "{\n";
            std::size_t i = 0;
            for (auto it = v.begin(); it != v.end(); ++it, ++i) {
                out += pad_in;
                out += json(it.key()).dump();
                out += ": ";
                dump_value(it.value(), out, depth + 1);
                if (i + 1 < v.size())
                    out += ',';
                out += '\n';
            }
            out += pad;
            out += '}';
            return;
        }
        case ordered_json::value_t::array: {
            if (v.empty()) {
                out += "[]";
                return;
            }
            bool scalar_only = true;
            for (const auto& e : v)
                if (e.is_structured())
                    scalar_only = false;
            if (scalar_only) {
                out += '[';
                for (std::size_t i = 0; i < v.size(); ++i) {
                    dump_value(v[i], out, depth);
                    if (i + 1 < v.size())
                        out += ", ";
                }
                out += ']';
                return;
            }
            out += "[\n";
            for (std::size_t i = 0; i < v.size(); ++i) {
                out += pad_in;
                dump_value(v[i], out, depth + 1);
                if (i + 1 < v.size())
                    out += ',';
                out += '\n';
            }
            out += pad;
            out += ']';
            return;
        }
        case ordered_json::value_t::number_float: {
            const double x = v.get<double>();
            if (!std::isfinite(x))
                throw std::invalid_argument("refusing to serialize a non-finite number");
            char buf[40];
            std::snprintf(buf, sizeof buf, "%.17g", x);
            out += buf;
            return;
        }
        case ordered_json::value_t::number_unsigned: {
            char buf[24];
            std::snprintf(buf, sizeof buf, "%" PRIu64, v.get<std::uint64_t>());
            out += buf;
            return;
        }
        case ordered_json::value_t::number_integer: {
            char buf[24];
            std::snprintf(buf, sizeof buf, "%" PRId64, v.get<std::int64_t>());
            out += buf;
            return;
        }
        default:
            out += v.dump();  // strings, booleans, null
            return;
    }
}

}  // namespace

std::string dump_json(const nlohmann::ordered_json& doc) {
    std::string out;
    dump_value(doc, out, 0);
    out += '\n';
    return out;
}

namespace {

bool is_uint_array(const json& v) {
    if (!v.is_array())
        return false;
    for (const auto& e : v)
        if (!e.is_number_unsigned())
            return false;
    return true;
}

bool is_number_array(const json& v) {
    if (!v.is_array())
        return false;
    for (const auto& e : v)
        if (!e.is_number())
            return false;
    return true;
}

void require(std::vector<std::string>& issues, bool ok, const std::string& msg) {
    if (!ok)
        issues.push_back(msg);
}

}  // namespace

std::vector<std::string> validate_result_json(const json& doc) {
    std::vector<std::string> issues;
    if (!doc.is_object()) {
        issues.push_back("document is not a JSON object");
        return issues;
    }
    const char* uint_fields[] = {"b", "m", "N", "s", "t1", "t2"};
    for (const char* f : uint_fields)
        require(issues, doc.contains(f) && doc[f].is_number_unsigned(),
                std::string(f) + " must be a nonnegative integer");
    require(issues, doc.contains("alpha") && doc["alpha"].is_number(), "alpha must be a number");
    require(issues, doc.contains("gamma") && is_number_array(doc["gamma"]),
            "gamma must be an array of numbers");
    require(issues, doc.contains("w") && is_uint_array(doc["w"]),
            "w must be an array of nonnegative integers");
    require(issues, doc.contains("z_unscaled") && is_uint_array(doc["z_unscaled"]),
            "z_unscaled must be an array of nonnegative integers");
    require(issues, doc.contains("z_scaled") && is_uint_array(doc["z_scaled"]),
            "z_scaled must be an array of nonnegative integers");
    require(issues, doc.contains("step_errors") && is_number_array(doc["step_errors"]),
            "step_errors must be an array of numbers");
    require(issues, doc.contains("exclusion_sizes") && is_uint_array(doc["exclusion_sizes"]),
            "exclusion_sizes must be an array of nonnegative integers");
    require(issues, doc.contains("forced_drop_steps") && is_uint_array(doc["forced_drop_steps"]),
            "forced_drop_steps must be an array of nonnegative integers");
    require(issues, doc.contains("policy") && doc["policy"].is_string(), "policy must be a string");
    require(issues, doc.contains("engine") && doc["engine"].is_string(), "engine must be a string");
    require(issues, doc.contains("diagnostics") && doc["diagnostics"].is_object() &&
                        doc["diagnostics"].contains("pairs") && doc["diagnostics"]["pairs"].is_array(),
            "diagnostics.pairs must be an array");
    require(issues, doc.contains("work") && doc["work"].is_object(), "work must be an object");
    if (!issues.empty())
        return issues;

    const std::uint64_t s = doc["s"].get<std::uint64_t>();
    for (const char* f : {"gamma", "w", "z_unscaled", "z_scaled", "step_errors", "exclusion_sizes"})
        require(issues, doc[f].size() == s, std::string(f) + " must have exactly s entries");
    for (const char* f : {"error_evaluations", "exclusion_checks", "kernel_ops", "fft_fallbacks"})
        require(issues, doc["work"].contains(f) && doc["work"][f].is_number_unsigned(),
                std::string("work.") + f + " must be a nonnegative integer");
    return issues;
}

std::vector<std::string> validate_bound_json(const json& doc) {
    std::vector<std::string> issues;
    if (!doc.is_object()) {
        issues.push_back("document is not a JSON object");
        return issues;
    }
    for (const char* f : {"b", "m", "N", "d"})
        require(issues, doc.contains(f) && doc[f].is_number_unsigned(),
                std::string(f) + " must be a nonnegative integer");
    require(issues, doc.contains("alpha") && doc["alpha"].is_number(), "alpha must be a number");
    require(issues, doc.contains("gamma") && is_number_array(doc["gamma"]),
            "gamma must be an array of numbers");
    require(issues, doc.contains("w") && is_uint_array(doc["w"]),
            "w must be an array of nonnegative integers");
    require(issues, doc.contains("exclusion_sizes") && is_uint_array(doc["exclusion_sizes"]),
            "exclusion_sizes must be an array of nonnegative integers");
    for (const char* f : {"thm1_value", "lambda_star_1", "thm2_value", "lambda_star_2"})
        require(issues, doc.contains(f) && doc[f].is_number(), std::string(f) + " must be a number");
    require(issues, doc.contains("per_d") && doc["per_d"].is_array(), "per_d must be an array");
    return issues;
}

ConstructionResult result_from_json(const json& doc) {
    auto issues = validate_result_json(doc);
    if (!issues.empty())
        throw std::invalid_argument("malformed result document: " + issues.front());

    ConstructionResult r;
    r.params.b = doc["b"].get<std::uint64_t>();
    r.params.m = doc["m"].get<std::uint32_t>();
    r.params.n = doc["N"].get<std::uint64_t>();
    r.params.s = doc["s"].get<std::uint32_t>();
    r.params.alpha = doc["alpha"].get<double>();
    r.params.gamma = doc["gamma"].get<std::vector<double>>();
    r.w = doc["w"].get<std::vector<std::uint32_t>>();
    r.t1 = doc["t1"].get<std::uint32_t>();
    r.t2 = doc["t2"].get<std::uint32_t>();
    r.z = doc["z_unscaled"].get<std::vector<std::uint64_t>>();
    r.ztilde = doc["z_scaled"].get<std::vector<std::uint64_t>>();
    r.step_errors = doc["step_errors"].get<std::vector<double>>();
    r.exclusion_sizes = doc["exclusion_sizes"].get<std::vector<std::uint64_t>>();
    r.forced_drop_steps = doc["forced_drop_steps"].get<std::vector<std::uint32_t>>();
    const std::string policy = doc["policy"].get<std::string>();
    for (PolicyKind k : {PolicyKind::none, PolicyKind::no_repeat, PolicyKind::anti_diagonal,
                         PolicyKind::custom})
        if (policy == policy_name(k))
            r.policy = k;
    r.engine = parse_engine(doc["engine"].get<std::string>());
    r.work.error_evaluations = doc["work"]["error_evaluations"].get<std::uint64_t>();
    r.work.exclusion_checks = doc["work"]["exclusion_checks"].get<std::uint64_t>();
    r.work.kernel_ops = doc["work"]["kernel_ops"].get<std::uint64_t>();
    r.work.fft_fallbacks = doc["work"]["fft_fallbacks"].get<std::uint64_t>();
    if (doc["work"].contains("per_step")) {
        for (const auto& e : doc["work"]["per_step"]) {
            StepWork sw;
            sw.error_evaluations = e.value("error_evaluations", std::uint64_t{0});
            sw.exclusion_checks = e.value("exclusion_checks", std::uint64_t{0});
            sw.kernel_ops = e.value("kernel_ops", std::uint64_t{0});
            r.work.per_step.push_back(sw);
        }
    }
    return r;
}

std::string result_to_csv(const ConstructionResult& r) {
    std::string out = "d,z_unscaled,z_scaled,w,step_error,exclusion_size\n";
    char buf[96];
    for (std::size_t i = 0; i < r.z.size(); ++i) {
        std::snprintf(buf, sizeof buf, "%zu,%" PRIu64 ",%" PRIu64 ",%u,%.17g,%" PRIu64 "\n",
                      i + 1, r.z[i], r.ztilde[i], r.w[i], r.step_errors[i], r.exclusion_sizes[i]);
        out += buf;
    }
    return out;
}

std::string bound_report_to_csv(const BoundReport& rep, std::uint32_t d) {
    std::string out = "d,lambda_star_1,thm1_value,lambda_star_2,thm2_value\n";
    char buf[128];
    auto row = [&](const BoundPoint& pt) {
        std::snprintf(buf, sizeof buf, "%u,%.17g,%.17g,%.17g,%.17g\n", pt.d, pt.lambda_star_1,
                      pt.thm1, pt.lambda_star_2, pt.thm2);
        out += buf;
    };
    if (rep.per_d.empty()) {
        BoundPoint pt;
        pt.d = d;
        pt.lambda_star_1 = rep.lambda_star_1;
        pt.thm1 = rep.thm1_value;
        pt.lambda_star_2 = rep.lambda_star_2;
        pt.thm2 = rep.thm2_value;
        row(pt);
    } else {
        for (const BoundPoint& pt : rep.per_d)
            row(pt);
    }
    return out;
}

}  // namespace latgen
