#include "arbor/json_io.hpp"

#include <set>

namespace arbor {

namespace {

Json coeff_entries(const CommSeries& s) {
    Json arr = Json::array();
    for (const auto& [alpha, v] : s.coeffs()) {
        Json e;
        e["alpha"] = alpha.exponents();
        e["value"] = v.str();
        arr.push_back(std::move(e));
    }
    return arr;
}

Json coeff_entries(const FreeSeries& s) {
    Json arr = Json::array();
    for (const auto& [w, v] : s.coeffs()) {
        Json e;
        e["word"] = w.letters();
        e["value"] = v.str();
        arr.push_back(std::move(e));
    }
    return arr;
}

void require_object(const Json& j, const char* what) {
    if (!j.is_object()) throw MalformedInput(std::string(what) + " must be a JSON object");
}

std::string require_string(const Json& j, const char* field) {
    if (!j.contains(field) || !j[field].is_string())
        throw MalformedInput(std::string("missing or non-string field \"") + field + "\"");
    return j[field].get<std::string>();
}

int require_int(const Json& j, const char* field, int min_value) {
    if (!j.contains(field) || !j[field].is_number_integer())
        throw MalformedInput(std::string("missing or non-integer field \"") + field + "\"");
    int v = j[field].get<int>();
    if (v < min_value)
        throw MalformedInput(std::string("field \"") + field + "\" must be >= " +
                             std::to_string(min_value));
    return v;
}

void check_kind(const Json& j, const std::string& kind, const std::string& convention) {
    if (require_string(j, "kind") != kind)
        throw MalformedInput("expected \"kind\":\"" + kind + "\"");
    if (require_string(j, "convention") != convention)
        throw MalformedInput("expected \"convention\":\"" + convention + "\"");
}

Rational value_of(const Json& e) {
    if (!e.contains("value")) throw MalformedInput("coefficient entry without \"value\"");
    const Json& v = e["value"];
    if (v.is_string()) return Rational::parse(v.get<std::string>());
    if (v.is_number_integer()) return Rational(v.get<long>());
    throw MalformedInput("coefficient value must be a rational string or integer");
}

std::vector<int> int_array(const Json& e, const char* field) {
    if (!e.contains(field) || !e[field].is_array())
        throw MalformedInput(std::string("coefficient entry without array \"") + field + "\"");
    std::vector<int> out;
    for (const Json& x : e[field]) {
        if (!x.is_number_integer())
            throw MalformedInput(std::string("non-integer entry in \"") + field + "\"");
        out.push_back(x.get<int>());
    }
    return out;
}

CommSeries parse_comm_coeffs(const Json& coeffs, int dim, int trunc) {
    if (!coeffs.is_array()) throw MalformedInput("\"coeffs\" must be an array");
    CommSeries s(dim, trunc);
    std::set<std::vector<int>> seen;
    for (const Json& e : coeffs) {
        std::vector<int> alpha = int_array(e, "alpha");
        if (static_cast<int>(alpha.size()) != dim)
            throw DimensionMismatch("alpha length differs from the declared dimension");
        for (int x : alpha)
            if (x < 0) throw MalformedInput("alpha entries must be >= 0");
        if (!seen.insert(alpha).second) throw MalformedInput("duplicate alpha in \"coeffs\"");
        s.set(MultiIndex(std::move(alpha)), value_of(e));
    }
    return s;
}

FreeSeries parse_free_coeffs(const Json& coeffs, int dim, int trunc) {
    if (!coeffs.is_array()) throw MalformedInput("\"coeffs\" must be an array");
    FreeSeries s(dim, trunc);
    std::set<std::vector<int>> seen;
    for (const Json& e : coeffs) {
        std::vector<int> letters = int_array(e, "word");
        for (int x : letters)
            if (x < 1 || x > dim)
                throw DimensionMismatch("word letter outside [1, dimension]");
        if (!seen.insert(letters).second) throw MalformedInput("duplicate word in \"coeffs\"");
        s.set(Word(std::move(letters)), value_of(e));
    }
    return s;
}

} // namespace

Json to_json(const CommSeries& s) {
    Json j;
    j["kind"] = "comm-series";
    j["convention"] = "divided-power";
    j["dimension"] = s.dim();
    j["truncation"] = s.truncation();
    j["coeffs"] = coeff_entries(s);
    return j;
}

Json to_json(const CommMap& m) {
    Json j;
    j["kind"] = "comm";
    j["convention"] = "divided-power";
    j["dimension"] = m.dim();
    j["truncation"] = m.truncation();
    Json comps = Json::array();
    for (int i = 1; i <= m.dim(); ++i) {
        Json c;
        c["coeffs"] = coeff_entries(m.component(i));
        comps.push_back(std::move(c));
    }
    j["components"] = std::move(comps);
    return j;
}

Json to_json(const FreeSeries& s) {
    Json j;
    j["kind"] = "free-series";
    j["convention"] = "plain";
    j["dimension"] = s.dim();
    j["truncation"] = s.truncation();
    j["coeffs"] = coeff_entries(s);
    return j;
}

Json to_json(const FreeMap& m) {
    Json j;
    j["kind"] = "free";
    j["convention"] = "plain";
    j["dimension"] = m.dim();
    j["truncation"] = m.truncation();
    Json comps = Json::array();
    for (int i = 1; i <= m.dim(); ++i) {
        Json c;
        c["coeffs"] = coeff_entries(m.component(i));
        comps.push_back(std::move(c));
    }
    j["components"] = std::move(comps);
    return j;
}

Json to_json(const LabelledTree& t) {
    Json j;
    j["type"] = t.type;
    if (t.label) j["label"] = Json::array({t.label->component, t.label->index});
    Json children = Json::array();
    for (const LabelledTree& c : t.children) children.push_back(to_json(c));
    j["children"] = std::move(children);
    return j;
}

Json to_json(const PlanarTree& t) {
    Json j;
    j["type"] = t.type;
    Json children = Json::array();
    for (const PlanarTree& c : t.children) children.push_back(to_json(c));
    j["children"] = std::move(children);
    return j;
}

CommSeries comm_series_from_json(const Json& j) {
    require_object(j, "series");
    check_kind(j, "comm-series", "divided-power");
    int dim = require_int(j, "dimension", 1);
    int trunc = require_int(j, "truncation", 0);
    if (!j.contains("coeffs")) throw MalformedInput("series without \"coeffs\"");
    return parse_comm_coeffs(j["coeffs"], dim, trunc);
}

CommMap comm_map_from_json(const Json& j) {
    require_object(j, "map");
    check_kind(j, "comm", "divided-power");
    int dim = require_int(j, "dimension", 1);
    int trunc = require_int(j, "truncation", 0);
    if (!j.contains("components") || !j["components"].is_array())
        throw MalformedInput("map without \"components\" array");
    const Json& comps = j["components"];
    if (static_cast<int>(comps.size()) != dim)
        throw DimensionMismatch("component count differs from the declared dimension");
    std::vector<CommSeries> components;
    for (const Json& c : comps) {
        require_object(c, "component");
        if (!c.contains("coeffs")) throw MalformedInput("component without \"coeffs\"");
        components.push_back(parse_comm_coeffs(c["coeffs"], dim, trunc));
    }
    return CommMap(std::move(components));
}

FreeSeries free_series_from_json(const Json& j) {
    require_object(j, "series");
    check_kind(j, "free-series", "plain");
    int dim = require_int(j, "dimension", 1);
    int trunc = require_int(j, "truncation", 0);
    if (!j.contains("coeffs")) throw MalformedInput("series without \"coeffs\"");
    return parse_free_coeffs(j["coeffs"], dim, trunc);
}

FreeMap free_map_from_json(const Json& j) {
    require_object(j, "map");
    check_kind(j, "free", "plain");
    int dim = require_int(j, "dimension", 1);
    int trunc = require_int(j, "truncation", 0);
    if (!j.contains("components") || !j["components"].is_array())
        throw MalformedInput("map without \"components\" array");
    const Json& comps = j["components"];
    if (static_cast<int>(comps.size()) != dim)
        throw DimensionMismatch("component count differs from the declared dimension");
    std::vector<FreeSeries> components;
    for (const Json& c : comps) {
        require_object(c, "component");
        if (!c.contains("coeffs")) throw MalformedInput("component without \"coeffs\"");
        components.push_back(parse_free_coeffs(c["coeffs"], dim, trunc));
    }
    return FreeMap(std::move(components));
}

Json parse_json_text(const std::string& text) {
    try {
        return Json::parse(text);
    } catch (const nlohmann::json::exception& e) {
        throw MalformedInput(std::string("JSON parse failure: ") + e.what());
    }
}

} // namespace arbor
