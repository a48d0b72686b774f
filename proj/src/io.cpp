#include "polyrad/io.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "json.hpp"
#include "polyrad/error.hpp"

namespace polyrad::io {

using nlohmann::json;

namespace {

template <class J = json>
J parse_json(std::string_view text)
{
    try {
        return J::parse(text.begin(), text.end());
    } catch (const json::parse_error& e) {
        raise(ErrorCode::ParseError, std::string("invalid JSON: ") + e.what());
    }
}

template <class J>
const J& field(const J& obj, const char* key)
{
    auto it = obj.find(key);
    if (it == obj.end()) raise(ErrorCode::ParseError, std::string("missing field '") + key + "'");
    return *it;
}

double number(const json& j, const char* what)
{
    if (!j.is_number()) raise(ErrorCode::ParseError, std::string(what) + " must be a number");
    const double x = j.get<double>();
    if (!std::isfinite(x)) raise(ErrorCode::ParseError, std::string(what) + " is not finite");
    return x;
}

Rational exact_number(const json& j, const char* what)
{
    if (j.is_string()) return parse_rational(j.get<std::string>());
    if (j.is_number_integer()) return Rational(j.get<long long>());
    raise(ErrorCode::ParseError, std::string(what) + " must be a rational string in exact mode");
}

template <class T, class F>
std::vector<std::vector<T>> rows(const json& j, int dim, const char* what, F&& convert)
{
    if (!j.is_array()) raise(ErrorCode::ParseError, std::string(what) + " must be an array");
    std::vector<std::vector<T>> out;
    for (const auto& row : j) {
        if (!row.is_array()) raise(ErrorCode::ParseError, std::string(what) + " entries must be arrays");
        if (static_cast<int>(row.size()) != dim)
            raise(ErrorCode::DimensionMismatch, std::string(what) + " entry of length " + std::to_string(row.size()) +
                                                    " in dimension " + std::to_string(dim));
        std::vector<T> r;
        for (const auto& x : row) r.push_back(convert(x, what));
        out.push_back(std::move(r));
    }
    return out;
}

std::vector<Vector> to_vectors(const std::vector<std::vector<double>>& rs)
{
    std::vector<Vector> out;
    for (const auto& r : rs) out.push_back(Eigen::Map<const Vector>(r.data(), static_cast<Eigen::Index>(r.size())));
    return out;
}

json number_array(const Vector& v)
{
    json a = json::array();
    for (Eigen::Index i = 0; i < v.size(); ++i) a.push_back(v[i]);
    return a;
}

json rational_array(const ExactVector& v)
{
    json a = json::array();
    for (const auto& x : v) a.push_back(to_string(x));
    return a;
}

// JSON has no infinity; non-finite values travel as strings.
std::string json_number(double x)
{
    if (std::isfinite(x)) return format_number(x);
    return std::isnan(x) ? "\"nan\"" : (x > 0 ? "\"inf\"" : "\"-inf\"");
}

double read_number(const nlohmann::ordered_json& j)
{
    if (j.is_number()) return j.get<double>();
    if (j.is_string()) {
        const auto s = j.get<std::string>();
        if (s == "inf") return INFINITY;
        if (s == "-inf") return -INFINITY;
        if (s == "nan") return NAN;
    }
    raise(ErrorCode::ParseError, "expected a number");
}

}  // namespace

Body parse_polytope(std::string_view text)
{
    const json j = parse_json(text);
    if (!j.is_object()) raise(ErrorCode::ParseError, "polytope file must hold one object");
    const json& dim_field = field(j, "dim");
    if (!dim_field.is_number_integer() || dim_field.get<long long>() < 1)
        raise(ErrorCode::ParseError, "'dim' must be a positive integer");
    const int dim = dim_field.get<int>();
    const json& rep_field = field(j, "rep");
    if (!rep_field.is_string()) raise(ErrorCode::ParseError, "'rep' must be \"V\" or \"H\"");
    const std::string rep = rep_field.get<std::string>();
    bool exact = false;
    if (auto it = j.find("exact"); it != j.end()) {
        if (!it->is_boolean()) raise(ErrorCode::ParseError, "'exact' must be a boolean");
        exact = it->get<bool>();
    }

    if (rep == "V") {
        const json& pts = field(j, "points");
        if (exact) return Body(VPolytope::from_exact(dim, rows<Rational>(pts, dim, "points", exact_number)));
        return Body(VPolytope(dim, to_vectors(rows<double>(pts, dim, "points", number))));
    }
    if (rep == "H") {
        const json& ns = field(j, "normals");
        const json& bs = field(j, "offsets");
        if (!bs.is_array()) raise(ErrorCode::ParseError, "'offsets' must be an array");
        if (exact) {
            std::vector<Rational> off;
            for (const auto& b : bs) off.push_back(exact_number(b, "offsets"));
            return Body(HPolytope::from_exact(dim, rows<Rational>(ns, dim, "normals", exact_number), std::move(off)));
        }
        std::vector<double> off;
        for (const auto& b : bs) off.push_back(number(b, "offsets"));
        return Body(HPolytope(dim, to_vectors(rows<double>(ns, dim, "normals", number)), std::move(off)));
    }
    raise(ErrorCode::ParseError, "'rep' must be \"V\" or \"H\", got \"" + rep + "\"");
}

Body read_polytope(const std::filesystem::path& path)
{
    std::ifstream in(path);
    if (!in) raise(ErrorCode::FileNotFound, "cannot open " + path.string());
    std::stringstream buf;
    buf << in.rdbuf();
    try {
        return parse_polytope(buf.str());
    } catch (const Error& e) {
        raise(e.code(), path.string() + ": " + e.what());
    }
}

std::string format_polytope(const VPolytope& v)
{
    json j{{"dim", v.dim}, {"rep", "V"}};
    json pts = json::array();
    if (v.is_exact()) {
        j["exact"] = true;
        for (const auto& p : v.exact_points) pts.push_back(rational_array(p));
    } else {
        for (const auto& p : v.points) pts.push_back(number_array(p));
    }
    j["points"] = std::move(pts);
    return j.dump() + "\n";
}

std::string format_polytope(const HPolytope& h)
{
    json j{{"dim", h.dim}, {"rep", "H"}};
    json ns = json::array(), bs = json::array();
    if (h.is_exact()) {
        j["exact"] = true;
        for (const auto& n : h.exact_normals) ns.push_back(rational_array(n));
        for (const auto& b : h.exact_offsets) bs.push_back(to_string(b));
    } else {
        for (const auto& n : h.normals) ns.push_back(number_array(n));
        for (double b : h.offsets) bs.push_back(b);
    }
    j["normals"] = std::move(ns);
    j["offsets"] = std::move(bs);
    return j.dump() + "\n";
}

std::string format_polytope(const Body& body)
{
    return body.native() == Representation::V ? format_polytope(body.v()) : format_polytope(body.h());
}

void write_text(const std::filesystem::path& path, const std::string& text)
{
    std::ofstream out(path);
    if (!out) raise(ErrorCode::FileNotFound, "cannot write " + path.string());
    out << text;
    if (!out) raise(ErrorCode::FileNotFound, "write failed for " + path.string());
}

std::string format_radii(const fixtures::FixtureRadii& f)
{
    json j = json::object();
    const std::pair<const char*, const std::optional<double>*> fields[] = {
        {"R", &f.R},   {"r", &f.r},           {"R1", &f.R1}, {"r1", &f.r1},         {"s", &f.s},
        {"s_gauge", &f.s_gauge}, {"s0", &f.s0}, {"R_pair", &f.R_pair}, {"R_pair_reverse", &f.R_pair_reverse}};
    for (const auto& [key, value] : fields)
        if (*value) j[key] = **value;
    j["gauge"] = f.gauge;
    j["formula_source"] = f.formula_source;
    return j.dump(2) + "\n";
}

fixtures::FixtureRadii parse_radii(std::string_view text)
{
    const json j = parse_json(text);
    if (!j.is_object()) raise(ErrorCode::ParseError, "radii sidecar must hold one object");
    fixtures::FixtureRadii f;
    const std::pair<const char*, std::optional<double>*> fields[] = {
        {"R", &f.R},   {"r", &f.r},           {"R1", &f.R1}, {"r1", &f.r1},         {"s", &f.s},
        {"s_gauge", &f.s_gauge}, {"s0", &f.s0}, {"R_pair", &f.R_pair}, {"R_pair_reverse", &f.R_pair_reverse}};
    for (const auto& [key, slot] : fields)
        if (auto it = j.find(key); it != j.end()) *slot = number(*it, key);
    if (auto it = j.find("gauge"); it != j.end() && it->is_string()) f.gauge = it->get<std::string>();
    if (auto it = j.find("formula_source"); it != j.end() && it->is_string()) f.formula_source = it->get<std::string>();
    return f;
}

std::string format_number(double value)
{
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.12g", value);
    return buf;
}

std::string format_record(const audit::InequalityReport& r)
{
    std::string s = "{\"name\":" + json(r.name).dump();
    s += ",\"lhs\":" + json_number(r.lhs);
    s += ",\"rhs\":" + json_number(r.rhs);
    s += ",\"slack\":" + json_number(r.slack);
    s += std::string(",\"satisfied\":") + (r.satisfied ? "true" : "false");
    s += std::string(",\"tight\":") + (r.tight ? "true" : "false");
    s += ",\"digest\":{";
    for (std::size_t i = 0; i < r.digest.size(); ++i) {
        if (i) s += ',';
        s += json(r.digest[i].first).dump() + ":" + json_number(r.digest[i].second);
    }
    return s + "}}";
}

audit::InequalityReport parse_record(std::string_view line)
{
    // ordered, so the digest keeps its written order
    const auto j = parse_json<nlohmann::ordered_json>(line);
    if (!j.is_object()) raise(ErrorCode::ParseError, "record must be an object");
    audit::InequalityReport r;
    try {
        r.name = field(j, "name").get<std::string>();
        r.lhs = read_number(field(j, "lhs"));
        r.rhs = read_number(field(j, "rhs"));
        r.slack = read_number(field(j, "slack"));
        r.satisfied = field(j, "satisfied").get<bool>();
        r.tight = field(j, "tight").get<bool>();
        if (auto it = j.find("digest"); it != j.end())
            for (const auto& [key, value] : it->items()) r.digest.emplace_back(key, read_number(value));
    } catch (const json::exception& e) {
        raise(ErrorCode::ParseError, std::string("malformed record: ") + e.what());
    }
    return r;
}

}  // namespace polyrad::io
