#include "cpfol/io.hpp"

#include <string>
#include <vector>

#include "cpfol/errors.hpp"
#include "cpfol/util.hpp"
#include "json.hpp"

namespace cpfol {

namespace {

using nlohmann::json;

json parse_text(const std::string& text) {
    try {
        return json::parse(text);
    } catch (const json::exception& e) {
        throw ParseError(std::string("input is not valid JSON: ") + e.what());
    }
}

const json& need(const json& j, const char* key) {
    if (!j.is_object() || !j.contains(key))
        throw ParseError(std::string("missing required field \"") + key + "\"");
    return j.at(key);
}

double need_number(const json& j, const char* what) {
    if (!j.is_number()) throw ParseError(std::string(what) + " must be a number");
    return j.get<double>();
}

int need_exponent(const json& j, const char* what) {
    if (!j.is_number_integer() || j.get<long long>() < 0)
        throw ParseError(std::string(what) + " must be a nonnegative integer");
    const long long v = j.get<long long>();
    if (v > 64) throw ParseError(std::string(what) + " exceeds the exponent cap 64");
    return static_cast<int>(v);
}

Cx need_complex(const json& j, const char* what) {
    if (!j.is_object()) throw ParseError(std::string(what) + " must be {\"re\":..,\"im\":..}");
    return {need_number(need(j, "re"), what), need_number(need(j, "im"), what)};
}

Poly2 need_poly(const json& j, const char* what) {
    if (!j.is_array()) throw ParseError(std::string(what) + " must be an array of monomials");
    Poly2 p;
    for (const auto& term : j) {
        const int i = need_exponent(need(term, "i"), what);
        const int k = need_exponent(need(term, "j"), what);
        p.add_term(i, k, need_complex(term, what));
    }
    return p;
}

void append_poly(std::string& out, const char* key, const Poly2& p) {
    out += "  \"";
    out += key;
    out += "\": [";
    bool first = true;
    for (const auto& [ij, c] : p.terms()) {
        if (!first) out += ", ";
        first = false;
        out += "{\"i\": " + std::to_string(ij.first) + ", \"j\": " + std::to_string(ij.second) +
               ", \"re\": " + fmt17(c.real()) + ", \"im\": " + fmt17(c.imag()) + "}";
    }
    out += "]";
}

GermDoc germ_from_json(const json& j) {
    const json& arr = need(j, "coeff");
    if (!arr.is_array() || arr.empty())
        throw ParseError("\"coeff\" must be a nonempty array of complex numbers");
    std::vector<Cx> c;
    c.reserve(arr.size());
    for (const auto& e : arr) c.push_back(need_complex(e, "coeff entry"));
    GermDoc out;
    out.jet = make_jet(c, static_cast<int>(c.size()));
    if (j.contains("radius")) {
        out.radius = need_number(j.at("radius"), "\"radius\"");
        if (!(out.radius > 0.0)) throw ParseError("\"radius\" must be positive");
    }
    return out;
}

} // namespace

FoliationDoc parse_foliation(const std::string& text) {
    const json j = parse_text(text);
    FoliationDoc doc;
    std::string name;
    if (j.contains("name")) {
        if (!j.at("name").is_string()) throw ParseError("\"name\" must be a string");
        name = j.at("name").get<std::string>();
    }
    doc.fol = new_foliation(need_poly(need(j, "P"), "\"P\""),
                            need_poly(need(j, "Q"), "\"Q\""), std::move(name));
    if (j.contains("x0")) doc.x0 = need_complex(j.at("x0"), "\"x0\"");
    if (j.contains("y0")) doc.y0 = need_complex(j.at("y0"), "\"y0\"");
    return doc;
}

std::string emit_foliation(const Foliation& f) {
    std::string out = "{\n  \"name\": ";
    out += json(f.name).dump();
    out += ",\n";
    append_poly(out, "P", f.P);
    out += ",\n";
    append_poly(out, "Q", f.Q);
    out += "\n}\n";
    return out;
}

GermDoc parse_germ(const std::string& text) { return germ_from_json(parse_text(text)); }

OrbitDoc parse_orbit_doc(const std::string& text) {
    const json j = parse_text(text);
    const json& arr = need(j, "germs");
    if (!arr.is_array() || arr.empty())
        throw ParseError("\"germs\" must be a nonempty array of germ objects");
    OrbitDoc out;
    for (const auto& g : arr) {
        const GermDoc d = germ_from_json(g);
        out.germs.push_back({d.jet, d.radius});
    }
    out.z0 = need_complex(need(j, "z0"), "\"z0\"");
    if (j.contains("reference_radius")) {
        out.reference_radius = need_number(j.at("reference_radius"), "\"reference_radius\"");
        if (!(out.reference_radius > 0.0))
            throw ParseError("\"reference_radius\" must be positive");
    }
    return out;
}

std::vector<Cx> parse_generators(const std::string& text) {
    const json j = parse_text(text);
    const json& arr = need(j, "generators");
    if (!arr.is_array()) throw ParseError("\"generators\" must be an array");
    std::vector<Cx> out;
    out.reserve(arr.size());
    for (const auto& e : arr) out.push_back(need_complex(e, "generator"));
    return out;
}

} // namespace cpfol
