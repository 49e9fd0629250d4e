#pragma once

// Polygon document I/O and report rendering (text and JSON). JSON reports use
// a fixed schema with sorted keys so identical inputs produce byte-identical
// output.

#include "fano/classify.hpp"
#include "fano/symbolic.hpp"

#include <json.hpp>

#include <sstream>
#include <string>
#include <vector>

namespace fano {

constexpr int kReportSchemaVersion = 1;

struct PolygonDocument {
    std::string name;  // empty if unnamed
    std::vector<LatticePoint> vertices;
};

namespace detail {

inline Int parse_int_string(const std::string& s) {
    if (s.empty()) throw Error(ErrorCode::ParseError, "empty integer");
    std::size_t i = s[0] == '-' || s[0] == '+' ? 1 : 0;
    if (i == s.size()) throw Error(ErrorCode::ParseError, "bad integer '" + s + "'");
    for (; i < s.size(); ++i)
        if (!std::isdigit(static_cast<unsigned char>(s[i])))
            throw Error(ErrorCode::ParseError, "bad integer '" + s + "'");
    return Int(s);
}

inline Int json_coordinate(const nlohmann::json& j) {
    if (j.is_number_integer()) return Int(j.get<long long>());
    if (j.is_string()) return parse_int_string(j.get<std::string>());
    throw Error(ErrorCode::ParseError, "coordinates must be integers (number or string)");
}

}  // namespace detail

/// Accepts either the JSON document {"name": ..., "vertices": [[x,y],...]} or
/// plain text with one "x y" pair per line ('#' starts a comment).
inline PolygonDocument parse_polygon_document(const std::string& content) {
    PolygonDocument doc;
    std::size_t first = content.find_first_not_of(" \t\r\n");
    if (first != std::string::npos && content[first] == '{') {
        nlohmann::json j;
        try {
            j = nlohmann::json::parse(content);
        } catch (const nlohmann::json::exception& e) {
            throw Error(ErrorCode::ParseError, e.what());
        }
        if (j.contains("name")) {
            if (!j["name"].is_string())
                throw Error(ErrorCode::ParseError, "name must be a string");
            doc.name = j["name"].get<std::string>();
        }
        if (!j.contains("vertices") || !j["vertices"].is_array())
            throw Error(ErrorCode::ParseError, "missing vertices array");
        for (const auto& v : j["vertices"]) {
            if (!v.is_array() || v.size() != 2)
                throw Error(ErrorCode::ParseError, "each vertex must be a pair [x, y]");
            doc.vertices.push_back({detail::json_coordinate(v[0]), detail::json_coordinate(v[1])});
        }
        return doc;
    }
    std::istringstream in(content);
    std::string line;
    while (std::getline(in, line)) {
        auto hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        std::istringstream ls(line);
        std::string sx, sy;
        if (!(ls >> sx)) continue;
        if (!(ls >> sy)) throw Error(ErrorCode::ParseError, "expected two coordinates per line");
        std::string extra;
        if (ls >> extra) throw Error(ErrorCode::ParseError, "expected two coordinates per line");
        doc.vertices.push_back({detail::parse_int_string(sx), detail::parse_int_string(sy)});
    }
    return doc;
}

/// Documents go through the hull so stray collinear points are tolerated.
inline LatticePolygon document_polygon(const PolygonDocument& doc) {
    return LatticePolygon::hull(doc.vertices);
}

// ---------------------------------------------------------------------------
// JSON report

namespace detail {

inline nlohmann::json int_json(const Int& n) {
    static const Int lo = Int(std::numeric_limits<long long>::min());
    static const Int hi = Int(std::numeric_limits<long long>::max());
    if (n >= lo && n <= hi) return n.convert_to<long long>();
    return n.str();  // arbitrary precision falls back to strings
}

inline nlohmann::json point_json(const LatticePoint& p) {
    return nlohmann::json::array({int_json(p.x), int_json(p.y)});
}

inline nlohmann::json gamma_json(const Gamma& g) {
    if (g.is_infinite()) return "infinity";
    return int_json(g.value());
}

inline nlohmann::json map_json(const UnimodularAffineMap& m) {
    nlohmann::json j;
    j["matrix"] = {{int_json(m.a), int_json(m.b)}, {int_json(m.c), int_json(m.d)}};
    j["translation"] = {int_json(m.t.dx), int_json(m.t.dy)};
    return j;
}

inline nlohmann::json verification_edge_json(const VerificationReport& r) {
    nlohmann::json j;
    j["edge_index"] = r.edge_index;
    j["b"] = point_json(r.edge_b);
    j["c"] = point_json(r.edge_c);
    j["case"] = r.case_label;
    j["orientation_reversed"] = r.reversed_orientation;
    j["forward_ok"] = r.forward_ok;
    j["backward_ok"] = r.backward_ok;
    j["length"] = r.length ? int_json(*r.length) : nlohmann::json("infinite");
    j["chart"] = r.chart;
    j["matches_classifier"] = r.matches_classifier;
    j["witness_count"] = r.witness_count;
    j["generator_count"] = r.generator_count;
    j["failures"] = r.failures;
    return j;
}

}  // namespace detail

struct VerificationSection {
    int degree_bound;
    std::string field;
    std::vector<VerificationReport> edges;

    bool all_match() const {
        for (const auto& e : edges)
            if (!e.matches_classifier) return false;
        return true;
    }
};

inline nlohmann::json json_report(const PolygonDocument& doc, const LatticePolygon& P,
                                  const FanoDescription& desc,
                                  const VerificationSection* verification = nullptr) {
    nlohmann::json j;
    j["schema_version"] = kReportSchemaVersion;
    j["name"] = doc.name;
    nlohmann::json verts = nlohmann::json::array();
    for (const auto& v : P.vertices()) verts.push_back(detail::point_json(v));
    j["vertices"] = verts;
    j["lattice_point_count"] = lattice_points(P).size();
    j["smooth"] = is_smooth(P);

    if (desc.scroll) {
        nlohmann::json s;
        s["alpha"] = detail::int_json(desc.scroll->alpha);
        s["beta"] = detail::int_json(desc.scroll->beta);
        s["map"] = detail::map_json(desc.scroll->map);
        j["scroll"] = s;
        j["fano_scheme"] = desc.global->str();
    } else {
        j["scroll"] = nullptr;
        nlohmann::json comps = nlohmann::json::array();
        for (const auto& ec : desc.components) {
            nlohmann::json c;
            c["edge_index"] = ec.edge.index;
            c["b"] = detail::point_json(ec.edge.b);
            c["c"] = detail::point_json(ec.edge.c);
            c["mu"] = detail::int_json(ec.invariants.mu);
            c["gamma_b"] = detail::gamma_json(ec.invariants.gamma_b);
            c["gamma_c"] = detail::gamma_json(ec.invariants.gamma_c);
            c["component"] = ec.component.str();
            c["degree"] = detail::int_json(ec.degree);
            comps.push_back(c);
        }
        j["components"] = comps;
    }
    j["line_count"] = desc.line_count ? detail::int_json(*desc.line_count)
                                      : nlohmann::json("infinite");
    j["total_degree"] = desc.total_degree ? detail::int_json(*desc.total_degree)
                                          : nlohmann::json(nullptr);
    j["reduced"] = desc.reduced ? nlohmann::json(*desc.reduced) : nlohmann::json(nullptr);
    j["bound_note"] = desc.bound_note;

    if (verification) {
        nlohmann::json v;
        v["degree_bound"] = verification->degree_bound;
        v["field"] = verification->field;
        v["all_match"] = verification->all_match();
        nlohmann::json edges = nlohmann::json::array();
        for (const auto& e : verification->edges)
            edges.push_back(detail::verification_edge_json(e));
        v["edges"] = edges;
        j["verification"] = v;
    }
    return j;
}

// ---------------------------------------------------------------------------
// text report

namespace detail {

inline std::string pad(const std::string& s, std::size_t w) {
    return s.size() >= w ? s + " " : s + std::string(w - s.size(), ' ');
}

}  // namespace detail

inline std::string text_report(const PolygonDocument& doc, const LatticePolygon& P,
                               const FanoDescription& desc,
                               const VerificationSection* verification = nullptr) {
    std::ostringstream out;
    out << "polygon: " << (doc.name.empty() ? "(unnamed)" : doc.name) << "\n";
    out << "vertices:";
    for (const auto& v : P.vertices()) out << " " << to_string(v);
    out << "\n";
    out << "lattice points: " << lattice_points(P).size() << "\n";
    out << "smooth: " << (is_smooth(P) ? "yes" : "no") << "\n";

    if (desc.scroll) {
        out << "scroll: P_(" << desc.scroll->alpha.str() << "," << desc.scroll->beta.str()
            << ")\n";
        out << "fano scheme of lines: " << desc.global->str() << "\n";
        out << "line count: infinite\n";
        out << "total degree: n/a (positive-dimensional)\n";
        out << "reduced: n/a\n";
    } else {
        out << "scroll: no\n";
        if (desc.components.empty()) {
            out << "fano scheme of lines: empty (no primitive edges)\n";
        } else {
            out << detail::pad("edge", 6) << detail::pad("b", 10) << detail::pad("c", 10)
                << detail::pad("mu", 4) << detail::pad("gamma_b", 9)
                << detail::pad("gamma_c", 9) << detail::pad("component", 13) << "degree\n";
            for (const auto& ec : desc.components) {
                out << detail::pad(std::to_string(ec.edge.index), 6)
                    << detail::pad(to_string(ec.edge.b), 10)
                    << detail::pad(to_string(ec.edge.c), 10)
                    << detail::pad(ec.invariants.mu.str(), 4)
                    << detail::pad(ec.invariants.gamma_b.str(), 9)
                    << detail::pad(ec.invariants.gamma_c.str(), 9)
                    << detail::pad(ec.component.str(), 13) << ec.degree.str() << "\n";
            }
        }
        out << "line count: " << desc.line_count->str() << "\n";
        out << "total degree: " << desc.total_degree->str() << "\n";
        out << "reduced: " << (*desc.reduced ? "yes" : "no") << "\n";
    }
    out << "bound: " << desc.bound_note << "\n";

    if (verification) {
        out << "\nverification (degree bound " << verification->degree_bound << ", field "
            << verification->field << ")\n";
        for (const auto& e : verification->edges) {
            out << detail::pad(std::to_string(e.edge_index), 6)
                << detail::pad(e.case_label, 32)
                << detail::pad(e.forward_ok ? "forward ok" : "FORWARD FAIL", 14)
                << detail::pad(e.backward_ok ? "backward ok" : "BACKWARD FAIL", 15)
                << detail::pad("length " + (e.length ? e.length->str() : std::string("inf")), 12)
                << detail::pad("chart " + e.chart, 20)
                << (e.matches_classifier ? "matches" : "MISMATCH") << "\n";
            for (const auto& f : e.failures) out << "      ! " << f << "\n";
        }
        out << (verification->all_match() ? "verification: all edges match the classifier\n"
                                          : "verification: MISMATCH\n");
    }
    return out.str();
}

}  // namespace fano
