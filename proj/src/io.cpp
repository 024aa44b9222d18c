#include "novikov/io.hpp"

#include <algorithm>
#include <fstream>
#include <map>
#include <sstream>

#include "novikov/error.hpp"

namespace novikov {

using json = nlohmann::ordered_json;

namespace {

json parse_json(const std::string& text) {
    try {
        return json::parse(text);
    } catch (const json::parse_error& e) {
        throw Error(ErrorCode::ParseError, std::string("malformed JSON: ") + e.what());
    }
}

Simplex parse_simplex(const json& j, const char* what) {
    if (!j.is_array() || j.empty()) throw Error(ErrorCode::ParseError, std::string(what) + ": simplex must be a nonempty array");
    Simplex s;
    for (const auto& v : j) {
        if (!v.is_number_integer() || v.get<long long>() < 0)
            throw Error(ErrorCode::ParseError, std::string(what) + ": vertices must be nonnegative integers");
        s.push_back(static_cast<Vertex>(v.get<long long>()));
    }
    for (std::size_t i = 1; i < s.size(); ++i) {
        if (s[i] == s[i - 1]) throw Error(ErrorCode::InvalidComplex, "DegenerateSimplex: repeated vertex in " + j.dump());
        if (s[i] < s[i - 1]) throw Error(ErrorCode::ParseError, std::string(what) + ": simplex " + j.dump() + " is not sorted");
    }
    return s;
}

std::vector<Simplex> parse_simplices(const json& doc, const char* what) {
    if (!doc.contains("simplices") || !doc["simplices"].is_array())
        throw Error(ErrorCode::ParseError, std::string(what) + ": missing \"simplices\" array");
    std::vector<Simplex> out;
    for (const auto& s : doc["simplices"]) out.push_back(parse_simplex(s, what));
    return out;
}

Rational parse_weight(const json& w) {
    if (w.is_string()) return Rational::parse(w.get<std::string>());
    if (w.is_number_integer()) return Rational(w.get<long long>());
    throw Error(ErrorCode::ParseError, "weight must be a rational string \"p/q\"");
}

} // namespace

ComplexPtr parse_complex_json(const std::string& text, LoadLog* log) {
    json doc = parse_json(text);
    if (!doc.is_object()) throw Error(ErrorCode::ParseError, "complex file must be a JSON object");
    if (!doc.contains("vertex_count") || !doc["vertex_count"].is_number_integer() || doc["vertex_count"].get<long long>() < 0)
        throw Error(ErrorCode::ParseError, "complex file: \"vertex_count\" must be a nonnegative integer");
    auto n = static_cast<std::size_t>(doc["vertex_count"].get<long long>());
    auto simplices = parse_simplices(doc, "complex file");
    std::string name = doc.contains("name") && doc["name"].is_string() ? doc["name"].get<std::string>() : "";
    bool maximal = true;
    if (doc.contains("maximal")) {
        if (!doc["maximal"].is_boolean()) throw Error(ErrorCode::ParseError, "complex file: \"maximal\" must be a boolean");
        maximal = doc["maximal"].get<bool>();
    }
    if (!maximal) {
        auto c = std::make_shared<Complex>(n, simplices);
        if (auto err = validate_complex(*c)) throw Error(ErrorCode::InvalidComplex, err->message());
        c->set_name(name);
        return c;
    }
    for (const auto& s : simplices)
        if (s.back() >= n) throw Error(ErrorCode::InvalidComplex, "VertexOutOfRange: simplex " + json(s).dump());
    auto c = Complex::closure(n, simplices, name);
    if (log) {
        std::size_t given = simplices.size();
        std::size_t total = c->total_count();
        log->push_back("face closure: " + std::to_string(given) + " listed simplices closed to " + std::to_string(total) + " simplices (" +
                       std::to_string(total >= given ? total - given : 0) + " added)");
    }
    return c;
}

json complex_to_json(const Complex& c) {
    json j;
    j["name"] = c.name();
    j["vertex_count"] = c.vertex_count();
    j["maximal"] = true;
    json simplices = json::array();
    for (const auto& s : c.maximal_simplices()) simplices.push_back(s);
    j["simplices"] = std::move(simplices);
    return j;
}

LocalSystem parse_system_json(const std::string& text, const ComplexPtr& base, LoadLog* log) {
    json doc = parse_json(text);
    if (!doc.is_object() || !doc.contains("edges") || !doc["edges"].is_array())
        throw Error(ErrorCode::ParseError, "system file: missing \"edges\" array");
    std::vector<Rational> w(base->count(1), Rational(1));
    std::vector<bool> given(base->count(1), false);
    for (const auto& e : doc["edges"]) {
        if (!e.is_array() || e.size() != 3 || !e[0].is_number_integer() || !e[1].is_number_integer())
            throw Error(ErrorCode::ParseError, "system file: each edge must be [u, v, \"p/q\"]");
        long long u = e[0].get<long long>(), v = e[1].get<long long>();
        if (u < 0 || v < 0 || u >= v) throw Error(ErrorCode::ParseError, "system file: edge " + e.dump() + " must satisfy 0 <= u < v");
        Simplex s{static_cast<Vertex>(u), static_cast<Vertex>(v)};
        auto idx = base->index_of(s);
        if (!idx) throw Error(ErrorCode::InvalidSystem, "edge [" + std::to_string(u) + ", " + std::to_string(v) + "] is not in the complex");
        if (given[*idx]) throw Error(ErrorCode::ParseError, "system file: edge " + e.dump() + " listed twice");
        Rational t = parse_weight(e[2]);
        if (t.sign() <= 0) throw Error(ErrorCode::InvalidSystem, "edge [" + std::to_string(u) + ", " + std::to_string(v) + "] has nonpositive weight " + t.to_string());
        w[*idx] = t;
        given[*idx] = true;
    }
    std::size_t defaulted = std::count(given.begin(), given.end(), false);
    if (log && defaulted) log->push_back("system: " + std::to_string(defaulted) + " edges without a weight default to 1");
    LocalSystem s(base, std::move(w));
    if (auto v = validate_system(s)) throw Error(ErrorCode::InvalidSystem, v->message());
    return s;
}

json system_to_json(const LocalSystem& s) {
    json edges = json::array();
    for (std::size_t i = 0; i < s.weights().size(); ++i) {
        const Simplex& e = s.base()->simplex(1, i);
        edges.push_back(json::array({e[0], e[1], s.weight(i).to_fraction_string()}));
    }
    return {{"edges", std::move(edges)}};
}

Subcomplex parse_subcomplex_json(const std::string& text, const ComplexPtr& parent, LoadLog* log) {
    json doc = parse_json(text);
    if (!doc.is_object()) throw Error(ErrorCode::ParseError, "subcomplex file must be a JSON object");
    auto simplices = parse_simplices(doc, "subcomplex file");
    bool close = doc.contains("close") && doc["close"].is_boolean() && doc["close"].get<bool>();
    Subcomplex z = subcomplex(parent, simplices, close ? SelectMode::CloseFaces : SelectMode::Strict);
    if (log && close) {
        std::size_t total = 0;
        for (int p = 0; p <= parent->dimension(); ++p) total += z.count(p);
        log->push_back("subcomplex: face closure of " + std::to_string(simplices.size()) + " simplices has " + std::to_string(total) + " simplices");
    }
    return z;
}

std::string read_text_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw Error(ErrorCode::ParseError, "cannot read '" + path + "'");
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

json cochain_json(const SparseVector& v) {
    json out = json::array();
    for (const auto& e : v) out.push_back(json::array({e.index, e.value.to_fraction_string()}));
    return out;
}

json cohomology_report_json(const std::string& command, const std::string& instance, const CohomologyReport& r,
                            bool with_representatives, double wall_time_ms) {
    json j;
    j["schema"] = 1;
    j["command"] = command;
    j["instance"] = instance;
    j["betti"] = r.betti;
    j["system_fingerprint"] = r.system_fingerprint;
    if (with_representatives) {
        json reps = json::array();
        for (const auto& degree : r.representatives) {
            json d = json::array();
            for (const auto& v : degree) d.push_back(cochain_json(v));
            reps.push_back(std::move(d));
        }
        j["representatives"] = std::move(reps);
    }
    j["seed"] = nullptr;
    j["wall_time_ms"] = static_cast<std::int64_t>(wall_time_ms);
    return j;
}

} // namespace novikov
