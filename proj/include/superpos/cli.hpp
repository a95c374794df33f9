#ifndef SUPERPOS_CLI_HPP
#define SUPERPOS_CLI_HPP

// Subcommand bodies behind the superpos executable. Each returns the exit
// code, the machine report, and a short human summary.

#include "closed_path.hpp"
#include "io.hpp"
#include "represent.hpp"
#include "ridge.hpp"

#include <cstddef>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace superpos::cli {

enum ExitCode : int {
    exit_negative = 0,
    exit_positive = 1,
    exit_usage = 2,
    exit_invariant = 3,
};

/// A certificate in an outgoing report failed re-verification.
class InvariantViolation : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

struct Outcome {
    int exit_code = exit_negative;
    Json report;
    std::string summary;
};

namespace detail {

inline Json header(const char* command, const Instance& inst)
{
    Json j;
    j["format"] = report_format;
    j["command"] = command;
    j["points"] = inst.points.size();
    j["functions"] = inst.family.size();
    if (!inst.merges.empty()) {
        Json merges = Json::array();
        for (const auto& m : inst.merges)
            merges.push_back(Json{{"function", m.function},
                                  {"from", to_string(m.from)},
                                  {"to", to_string(m.to)}});
        j["quantized_merges"] = std::move(merges);
    }
    return j;
}

inline void check(const IncidenceMatrix& inc, const ClosedPathCertificate& cert, const char* what)
{
    if (!verify_certificate(inc, cert))
        throw InvariantViolation(std::string(what) + " failed re-verification");
}

inline std::string join(const std::vector<PointId>& ids)
{
    std::string s;
    for (std::size_t k = 0; k < ids.size(); ++k)
        s += (k ? "," : "") + std::to_string(ids[k]);
    return s;
}

inline std::string join(const RationalVector& v)
{
    std::string s;
    for (std::size_t k = 0; k < v.size(); ++k)
        s += (k ? ", " : "") + to_string(v[k]);
    return s;
}

inline std::string quantize_note(const Instance& inst)
{
    if (inst.merges.empty())
        return {};
    std::ostringstream out;
    out << "WARNING: quantization merged " << inst.merges.size() << " value(s):\n";
    for (const auto& m : inst.merges)
        out << "  h" << m.function + 1 << ": " << to_string(m.from) << " -> " << to_string(m.to)
            << "\n";
    return out.str();
}

} // namespace detail

/// Exit 0 when X has no closed path, 1 with a certificate otherwise.
inline Outcome cmd_detect(const Instance& inst)
{
    const IncidenceMatrix inc = inst.incidence();
    Outcome out;
    out.report = detail::header("detect", inst);
    out.report["level_classes"] = inc.classes().size();
    out.report["rank"] = rank(inc.matrix());
    auto cert = detect(inc);
    if (!cert) {
        out.report["verdict"] = "no_closed_path";
        out.report["certificate"] = nullptr;
        out.summary = detail::quantize_note(inst) + "no closed path: every function on X is a superposition\n";
        return out;
    }
    auto res = certify_minimal(inc, cert->support);
    cert->minimal = res.minimal ? Minimality::minimal : Minimality::not_minimal;
    detail::check(inc, *cert, "detect certificate");
    out.exit_code = exit_positive;
    out.report["verdict"] = "closed_path";
    out.report["certificate"] = to_json(*cert);
    out.summary = detail::quantize_note(inst) + "closed path found on points {" +
                  detail::join(cert->support) + "}\n  lambda = (" +
                  detail::join(primitive_integer_vector(cert->lambda)) + ")" +
                  (res.minimal ? "  [minimal]\n" : "  [not minimal]\n");
    return out;
}

/// Minimal closed paths. Exit 1 when any are found.
inline Outcome cmd_circuits(const Instance& inst, EnumerationMode mode, std::size_t max_support)
{
    const IncidenceMatrix inc = inst.incidence();
    const auto result = enumerate_minimal(inc, max_support, mode);
    Outcome out;
    out.report = detail::header("circuits", inst);
    out.report["mode"] = to_string(mode);
    out.report["max_support"] = max_support;
    out.report["truncated"] = result.truncated;
    Json list = Json::array();
    std::ostringstream text;
    text << detail::quantize_note(inst) << result.paths.size() << " minimal closed path(s)"
         << (result.truncated ? " (truncated by max-support)" : "") << "\n";
    for (const auto& cert : result.paths) {
        detail::check(inc, cert, "circuit certificate");
        list.push_back(to_json(cert));
        text << "  {" << detail::join(cert.support) << "}  lambda = ("
             << detail::join(primitive_integer_vector(cert.lambda)) << ")\n";
    }
    out.report["circuits"] = std::move(list);
    out.exit_code = result.paths.empty() ? exit_negative : exit_positive;
    out.summary = text.str();
    return out;
}

/// Exit 0 with g-tables when the target is a superposition, 1 with the
/// violated closed path and the sign witness otherwise.
inline Outcome cmd_represent(const Instance& inst)
{
    if (!inst.target)
        throw InputError("represent needs a \"target\" table in the instance");
    const IncidenceMatrix inc = inst.incidence();
    const auto res = is_representable(inc, *inst.target);
    Outcome out;
    out.report = detail::header("represent", inst);
    if (res.representable) {
        out.report["verdict"] = "representable";
        out.report["decomposition"] = to_json(*res.decomposition);
        if (res.decomposition->reconstruct(inc) != *inst.target)
            throw InvariantViolation("decomposition does not reproduce the target");
        std::ostringstream text;
        text << detail::quantize_note(inst) << "representable (solution space dimension "
             << res.decomposition->freedom << ")\n";
        for (std::size_t i = 0; i < res.decomposition->tables.size(); ++i) {
            text << "  g" << i + 1 << ":";
            for (const auto& [v, g] : res.decomposition->tables[i])
                text << "  " << to_string(v) << "->" << to_string(g);
            text << "\n";
        }
        out.summary = text.str();
        return out;
    }
    detail::check(inc, *res.violated, "violated certificate");
    const Witness w = make_witness(*res.violated, inst.points);
    out.exit_code = exit_positive;
    out.report["verdict"] = "not_representable";
    out.report["violated"] = to_json(*res.violated);
    out.report["functional_value"] = to_string(res.violation);
    out.report["witness"] = Json{{"f0", to_json(w.f0)}, {"value", to_string(w.value)}};
    out.summary = detail::quantize_note(inst) + "not representable: G(f) = " +
                  to_string(res.violation) + " on closed path {" +
                  detail::join(res.violated->support) + "}\n";
    return out;
}

/// Exit 0 when the points are interpolable, 1 for NI or MNI.
inline Outcome cmd_ridge_classify(const Instance& inst)
{
    const RidgeInstance ri = inst.ridge();
    const NiResult res = classify_ni(ri);
    Outcome out;
    out.report = detail::header("ridge classify", inst);
    out.report["classification"] = to_string(res.kind);
    if (res.certificate) {
        detail::check(ri.incidence(), *res.certificate, "NI certificate");
        out.report["certificate"] = to_json(*res.certificate);
        out.report["m"] = to_json(res.m);
        out.exit_code = exit_positive;
    } else {
        out.report["certificate"] = nullptr;
    }
    out.summary = std::string(to_string(res.kind)) +
                  (res.certificate ? "  m = (" + detail::join(res.m) + ")\n" : "\n");
    return out;
}

/// Builds the hypercube closed path for the instance's directions around
/// center with the given scale. Exit 0 when exact verification passes.
inline Outcome cmd_ridge_hypercube(const Instance& inst, std::optional<RationalVector> center,
                                   std::optional<Rational> scale, std::optional<std::uint64_t> seed)
{
    if (!inst.directions)
        throw InputError("hypercube needs ridge directions in the instance");
    const std::size_t d = inst.directions->front().dimension();
    const RationalVector y = center ? *center : inst.options.center.value_or(RationalVector(d));
    const Rational s = scale ? *scale : inst.options.scale.value_or(Rational(1));
    const HypercubePath path = hypercube_path(*inst.directions, y, s, seed.value_or(inst.options.seed));
    const RidgeInstance ri = path.instance(*inst.directions);

    Outcome out;
    out.report = detail::header("ridge hypercube", inst);
    out.report["center"] = to_json(path.center);
    Json offsets = Json::array();
    for (const auto& b : path.offsets)
        offsets.push_back(to_json(b));
    out.report["offsets"] = std::move(offsets);
    out.report["instance"] = instance_to_json(ri);
    auto cert = path.certificate();
    out.report["certificate"] = to_json(cert);
    const IncidenceMatrix inc = ri.incidence();
    const bool witness_rejected =
        !is_representable(inc, make_witness(cert, ri.points).f0).representable;
    out.report["verification"] = path.verified ? "passed" : "failed";
    out.report["witness_rejected"] = witness_rejected;
    if (!path.verified || !witness_rejected)
        throw InvariantViolation("hypercube path failed exact verification");
    std::ostringstream text;
    text << path.points.size() << " points, verification passed\n";
    for (std::size_t k = 0; k < path.points.size(); ++k)
        text << "  (" << detail::join(path.points[k]) << ")  " << to_string(path.lambda[k]) << "\n";
    out.summary = text.str();
    return out;
}

/// Emits a path-free example as an instance document inside the report.
inline Outcome cmd_generate(ExampleKind kind, const ExampleParams& params)
{
    const GeneratedExample ex = generate_pathfree_example(kind, params);
    Outcome out;
    out.report["format"] = report_format;
    out.report["command"] = "generate";
    out.report["kind"] = to_string(kind);
    out.report["points"] = ex.instance.points.size();
    out.report["path_free_on_sample"] = ex.path_free_on_sample;
    out.report["scope"] = ex.scope;
    out.report["instance"] = instance_to_json(ex.instance);
    if (!ex.path_free_on_sample)
        throw InvariantViolation("generated example contains a closed path");
    out.summary = std::string(to_string(kind)) + ": " + std::to_string(ex.instance.points.size()) +
                  " points, no closed path (" + ex.scope + ")\n";
    return out;
}

/// Re-verifies every certificate found anywhere in a report against the
/// instance (or the instance embedded in the report). Exit 0 when all pass.
inline Outcome cmd_verify(const Json& report, const std::optional<Instance>& given)
{
    Instance inst;
    if (report.contains("instance"))
        inst = parse_instance(report.at("instance"));
    else if (given)
        inst = *given;
    else
        throw InputError("verify: report embeds no instance and none was given");
    const IncidenceMatrix inc = inst.incidence();

    std::size_t checked = 0;
    std::size_t failed = 0;
    auto walk = [&](auto&& self, const Json& j, const std::string& where) -> void {
        if (j.is_object()) {
            if (j.contains("support") && j.contains("lambda")) {
                ++checked;
                auto cert = certificate_from_json(j, where);
                bool ok = verify_certificate(inc, cert);
                if (ok && j.contains("normalized")) {
                    auto normalized = cert;
                    normalized.lambda = superpos::detail::vector_at(j.at("normalized"), where + ".normalized");
                    normalized.normalized = true;
                    ok = verify_certificate(inc, normalized);
                }
                if (!ok)
                    ++failed;
            }
            for (const auto& [k, v] : j.items())
                if (k != "instance")
                    self(self, v, where + "." + k);
        } else if (j.is_array()) {
            for (std::size_t k = 0; k < j.size(); ++k)
                self(self, j[k], where + "[" + std::to_string(k) + "]");
        }
    };
    walk(walk, report, "report");

    Outcome out;
    out.report["format"] = report_format;
    out.report["command"] = "verify";
    out.report["certificates_checked"] = checked;
    out.report["certificates_failed"] = failed;
    out.exit_code = failed == 0 ? exit_negative : exit_positive;
    out.summary = std::to_string(checked) + " certificate(s) checked, " + std::to_string(failed) +
                  " failed\n";
    return out;
}

} // namespace superpos::cli

#endif // SUPERPOS_CLI_HPP
