#ifndef SUPERPOS_IO_HPP
#define SUPERPOS_IO_HPP

// Instance documents and report fragments as JSON. Every number is an
// exact rational: JSON integers, or strings holding "p/q" or a decimal.

#include "closed_path.hpp"
#include "core.hpp"
#include "rational.hpp"
#include "represent.hpp"
#include "ridge.hpp"

#include <json.hpp>

#include <cstddef>
#include <cstdint>
#include <fstream>
#include <optional>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

namespace superpos {

using Json = nlohmann::ordered_json;

inline constexpr const char* instance_format = "superpos-instance/1";
inline constexpr const char* report_format = "superpos-report/1";

struct InstanceOptions {
    std::optional<Rational> quantize_eps;
    std::optional<std::size_t> max_support;
    std::optional<EnumerationMode> mode;
    std::uint64_t seed = 0;
    std::optional<RationalVector> center;
    std::optional<Rational> scale;
};

/// A parsed instance document.
struct Instance {
    PointSet points;
    FunctionFamily family;
    /// Present for ridge instances.
    std::optional<std::vector<Direction>> directions;
    std::optional<FunctionTable> target;
    InstanceOptions options;
    /// Filled when options.quantize_eps was applied.
    std::vector<QuantizeMerge> merges;

    IncidenceMatrix incidence() const { return IncidenceMatrix(points, family); }

    RidgeInstance ridge() const
    {
        if (!directions)
            throw InputError("instance has tabulated functions; ridge analysis needs "
                             "\"functions\": {\"kind\": \"ridge\"}");
        return RidgeInstance::make(*directions, points);
    }
};

namespace detail {

inline Rational rational_at(const Json& j, const std::string& where)
{
    if (j.is_number_integer())
        return Rational(Integer(j.dump(), 10));
    if (j.is_string()) {
        try {
            return parse_rational(j.get<std::string>());
        } catch (const InputError& e) {
            throw InputError(where + ": " + e.what());
        }
    }
    if (j.is_number_float())
        throw InputError(where + ": floating-point literal " + j.dump() +
                         " is not exact; write it as a string such as \"0.25\" or \"1/4\"");
    throw InputError(where + ": expected a rational, got " + std::string(j.type_name()));
}

inline RationalVector vector_at(const Json& j, const std::string& where)
{
    if (!j.is_array())
        throw InputError(where + ": expected an array");
    RationalVector out;
    for (std::size_t k = 0; k < j.size(); ++k)
        out.push_back(rational_at(j[k], where + "[" + std::to_string(k) + "]"));
    return out;
}

inline const Json& member(const Json& j, const char* key, const std::string& where)
{
    if (!j.is_object() || !j.contains(key))
        throw InputError(where + ": missing field \"" + key + "\"");
    return j.at(key);
}

inline PointId id_from_key(const std::string& key, const std::string& where)
{
    try {
        std::size_t used = 0;
        long long v = std::stoll(key, &used);
        if (used == key.size())
            return static_cast<PointId>(v);
    } catch (const std::exception&) {
    }
    throw InputError(where + ": key \"" + key + "\" is not a point id");
}

inline std::map<PointId, Rational> table_at(const Json& j, const std::string& where)
{
    if (!j.is_object())
        throw InputError(where + ": expected an object mapping point ids to values");
    std::map<PointId, Rational> out;
    for (const auto& [key, value] : j.items())
        out[id_from_key(key, where)] = rational_at(value, where + "." + key);
    return out;
}

inline void require_total(const PointSet& ps, const std::map<PointId, Rational>& t,
                          const std::string& where)
{
    for (const auto& p : ps.points())
        if (!t.contains(p.id))
            throw InputError(where + ": no value for point " + std::to_string(p.id));
    for (const auto& [id, v] : t)
        if (!ps.contains(id))
            throw InputError(where + ": value for unknown point " + std::to_string(id));
}

} // namespace detail

inline const char* to_string(EnumerationMode m)
{
    return m == EnumerationMode::fundamental ? "fundamental" : "exhaustive";
}

inline EnumerationMode parse_mode(const std::string& s)
{
    if (s == "fundamental")
        return EnumerationMode::fundamental;
    if (s == "exhaustive")
        return EnumerationMode::exhaustive;
    throw InputError("unknown enumeration mode \"" + s + "\" (expected fundamental or exhaustive)");
}

inline Instance parse_instance(const Json& doc)
{
    if (!doc.is_object())
        throw InputError("instance: top level must be an object");
    if (doc.contains("format") && doc.at("format") != instance_format)
        throw InputError("instance.format: expected \"" + std::string(instance_format) + "\"");

    Instance inst;
    const Json& pts = detail::member(doc, "points", "instance");
    if (!pts.is_array())
        throw InputError("instance.points: expected an array");
    std::vector<Point> points;
    for (std::size_t k = 0; k < pts.size(); ++k) {
        const std::string where = "points[" + std::to_string(k) + "]";
        const Json& id = detail::member(pts[k], "id", where);
        if (!id.is_number_integer())
            throw InputError(where + ".id: expected an integer");
        Point p{id.get<PointId>(), std::nullopt};
        if (pts[k].contains("coords"))
            p.coords = detail::vector_at(pts[k].at("coords"), where + ".coords");
        points.push_back(std::move(p));
    }
    inst.points = PointSet(std::move(points));

    const Json& fns = detail::member(doc, "functions", "instance");
    const std::string kind = detail::member(fns, "kind", "functions").get<std::string>();
    if (kind == "tabulated") {
        const Json& tables = detail::member(fns, "tables", "functions");
        if (!tables.is_array())
            throw InputError("functions.tables: expected an array");
        for (std::size_t i = 0; i < tables.size(); ++i) {
            const std::string where = "functions.tables[" + std::to_string(i) + "]";
            auto t = detail::table_at(tables[i], where);
            detail::require_total(inst.points, t, where);
            inst.family.add_tabulated(std::move(t));
        }
    } else if (kind == "ridge") {
        const Json& dirs = detail::member(fns, "directions", "functions");
        if (!dirs.is_array())
            throw InputError("functions.directions: expected an array");
        std::vector<Direction> directions;
        for (std::size_t i = 0; i < dirs.size(); ++i) {
            const std::string where = "functions.directions[" + std::to_string(i) + "]";
            try {
                directions.emplace_back(detail::vector_at(dirs[i], where));
            } catch (const InputError& e) {
                throw InputError(where + ": " + e.what());
            }
        }
        try {
            inst.family = RidgeInstance::make(directions, inst.points).family;
        } catch (const InputError& e) {
            throw InputError(std::string("functions: ") + e.what());
        }
        inst.directions = std::move(directions);
    } else {
        throw InputError("functions.kind: expected \"tabulated\" or \"ridge\", got \"" + kind + "\"");
    }

    if (doc.contains("target")) {
        auto t = detail::table_at(doc.at("target"), "target");
        detail::require_total(inst.points, t, "target");
        inst.target = std::move(t);
    }

    if (doc.contains("options")) {
        const Json& o = doc.at("options");
        if (o.contains("quantize_eps"))
            inst.options.quantize_eps = detail::rational_at(o.at("quantize_eps"), "options.quantize_eps");
        if (o.contains("max_support")) {
            if (!o.at("max_support").is_number_unsigned())
                throw InputError("options.max_support: expected a nonnegative integer");
            inst.options.max_support = o.at("max_support").get<std::size_t>();
        }
        if (o.contains("mode"))
            inst.options.mode = parse_mode(o.at("mode").get<std::string>());
        if (o.contains("seed"))
            inst.options.seed = o.at("seed").get<std::uint64_t>();
        if (o.contains("center"))
            inst.options.center = detail::vector_at(o.at("center"), "options.center");
        if (o.contains("scale"))
            inst.options.scale = detail::rational_at(o.at("scale"), "options.scale");
    }
    if (inst.options.quantize_eps)
        inst.merges = quantize(inst.family, *inst.options.quantize_eps);
    return inst;
}

inline Instance parse_instance_text(const std::string& text)
{
    Json doc;
    try {
        doc = Json::parse(text);
    } catch (const Json::parse_error& e) {
        throw InputError(std::string("malformed JSON: ") + e.what());
    }
    return parse_instance(doc);
}

inline Instance load_instance(const std::string& path)
{
    std::ifstream in(path);
    if (!in)
        throw InputError("cannot open instance file " + path);
    std::stringstream buf;
    buf << in.rdbuf();
    try {
        return parse_instance_text(buf.str());
    } catch (const InputError& e) {
        throw InputError(path + ": " + e.what());
    }
}

inline Json to_json(const Rational& q)
{
    return to_string(q);
}

inline Json to_json(const RationalVector& v)
{
    Json a = Json::array();
    for (const auto& x : v)
        a.push_back(to_string(x));
    return a;
}

inline Json to_json(const FunctionTable& f)
{
    Json o = Json::object();
    for (const auto& [id, v] : f)
        o[std::to_string(id)] = to_string(v);
    return o;
}

/// Support, primitive integer lambda, and the l1-normalized lambda.
inline Json to_json(const ClosedPathCertificate& cert)
{
    Json j;
    j["support"] = cert.support;
    j["lambda"] = to_json(primitive_integer_vector(cert.lambda));
    j["normalized"] = to_json(l1_normalized(cert.lambda));
    switch (cert.minimal) {
    case Minimality::unknown:
        j["minimal"] = nullptr;
        break;
    case Minimality::minimal:
        j["minimal"] = true;
        break;
    case Minimality::not_minimal:
        j["minimal"] = false;
        break;
    }
    return j;
}

inline ClosedPathCertificate certificate_from_json(const Json& j, const std::string& where)
{
    ClosedPathCertificate cert;
    const Json& support = detail::member(j, "support", where);
    if (!support.is_array())
        throw InputError(where + ".support: expected an array");
    for (const auto& id : support) {
        if (!id.is_number_integer())
            throw InputError(where + ".support: ids must be integers");
        cert.support.push_back(id.get<PointId>());
    }
    cert.lambda = detail::vector_at(detail::member(j, "lambda", where), where + ".lambda");
    return cert;
}

inline Json to_json(const Decomposition& dec)
{
    Json j;
    j["freedom"] = dec.freedom;
    j["extension"] = "zero off the observed values";
    Json tables = Json::array();
    for (std::size_t i = 0; i < dec.tables.size(); ++i) {
        Json t;
        t["function"] = i;
        Json values = Json::array();
        for (const auto& [value, g] : dec.tables[i])
            values.push_back(Json{{"value", to_string(value)}, {"g", to_string(g)}});
        t["values"] = std::move(values);
        tables.push_back(std::move(t));
    }
    j["tables"] = std::move(tables);
    return j;
}

inline Json points_to_json(const PointSet& ps)
{
    Json pts = Json::array();
    for (const auto& p : ps.points()) {
        Json pj;
        pj["id"] = p.id;
        if (p.coords)
            pj["coords"] = to_json(*p.coords);
        pts.push_back(std::move(pj));
    }
    return pts;
}

/// Instance document for a ridge instance, readable by parse_instance.
inline Json instance_to_json(const RidgeInstance& inst)
{
    Json doc;
    doc["format"] = instance_format;
    doc["points"] = points_to_json(inst.points);
    Json dirs = Json::array();
    for (const auto& a : inst.directions)
        dirs.push_back(to_json(a.vector()));
    doc["functions"] = Json{{"kind", "ridge"}, {"directions", std::move(dirs)}};
    return doc;
}

/// Instance document for a tabulated family.
inline Json instance_to_json(const PointSet& ps, const FunctionFamily& ff)
{
    Json doc;
    doc["format"] = instance_format;
    doc["points"] = points_to_json(ps);
    Json tables = Json::array();
    for (std::size_t i = 0; i < ff.size(); ++i)
        tables.push_back(to_json(FunctionTable(ff.table(i))));
    doc["functions"] = Json{{"kind", "tabulated"}, {"tables", std::move(tables)}};
    return doc;
}

} // namespace superpos

#endif // SUPERPOS_IO_HPP
