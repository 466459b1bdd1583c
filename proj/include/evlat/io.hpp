#pragma once
// Structure files and DOT export. The file format is JSON: "spaces" is a list
// of {id, states}, "order" a list of [more-expressive, less-expressive]
// generating pairs, "projections" a list of {from, to, map}. Composite maps
// may be omitted and are derived by composition; the empty space may be
// declared explicitly to keep a custom id. Serialization is canonical (sorted
// keys, covering pairs only, two-space indent) so parse and serialize invert
// each other on validated structures, byte for byte.

#include <algorithm>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "evlat/event.hpp"
#include "evlat/poset.hpp"
#include "evlat/reduction.hpp"
#include "evlat/structure.hpp"

namespace evlat {

struct ParseError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Syntax and shape checking only; axioms are the validator's job.
inline StructureInput parse_structure_input(const std::string& text) {
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(text);
    } catch (const nlohmann::json::parse_error& e) {
        throw ParseError(e.what());
    }
    if (!j.is_object()) throw ParseError("top level must be an object");
    for (const auto& [k, v] : j.items()) {
        (void)v;
        if (k != "spaces" && k != "order" && k != "projections")
            throw ParseError("unknown top-level key \"" + k + "\"");
    }
    if (!j.contains("spaces") || !j["spaces"].is_array())
        throw ParseError("\"spaces\" must be present and an array");

    StructureInput in;
    for (const auto& sp : j["spaces"]) {
        if (!sp.is_object()) throw ParseError("each space must be an object");
        for (const auto& [k, v] : sp.items()) {
            (void)v;
            if (k != "id" && k != "states")
                throw ParseError("unknown key \"" + k + "\" in a space");
        }
        if (!sp.contains("id") || !sp["id"].is_string())
            throw ParseError("space \"id\" must be a string");
        if (!sp.contains("states") || !sp["states"].is_array())
            throw ParseError("space \"states\" must be an array");
        SpaceDef def;
        def.id = sp["id"].get<std::string>();
        for (const auto& s : sp["states"]) {
            if (!s.is_string())
                throw ParseError("states of " + def.id + " must be strings");
            def.states.push_back(s.get<std::string>());
        }
        in.spaces.push_back(std::move(def));
    }
    if (j.contains("order")) {
        if (!j["order"].is_array()) throw ParseError("\"order\" must be an array");
        for (const auto& pr : j["order"]) {
            if (!pr.is_array() || pr.size() != 2 || !pr[0].is_string() || !pr[1].is_string())
                throw ParseError("order entries must be [more-expressive, less-expressive] id pairs");
            in.order.emplace_back(pr[0].get<std::string>(), pr[1].get<std::string>());
        }
    }
    if (j.contains("projections")) {
        if (!j["projections"].is_array()) throw ParseError("\"projections\" must be an array");
        for (const auto& pj : j["projections"]) {
            if (!pj.is_object()) throw ParseError("each projection must be an object");
            for (const auto& [k, v] : pj.items()) {
                (void)v;
                if (k != "from" && k != "to" && k != "map")
                    throw ParseError("unknown key \"" + k + "\" in a projection");
            }
            if (!pj.contains("from") || !pj["from"].is_string() || !pj.contains("to") ||
                !pj["to"].is_string())
                throw ParseError("projection \"from\" and \"to\" must be strings");
            if (!pj.contains("map") || !pj["map"].is_object())
                throw ParseError("projection \"map\" must be an object");
            ProjectionDef def;
            def.from = pj["from"].get<std::string>();
            def.to = pj["to"].get<std::string>();
            for (const auto& [k, v] : pj["map"].items()) {
                if (!v.is_string())
                    throw ParseError("projection (" + def.from + ", " + def.to +
                                     "): images must be strings");
                def.map[k] = v.get<std::string>();
            }
            in.projections.push_back(std::move(def));
        }
    }
    return in;
}

// Parse then validate; syntax problems throw, axiom problems are reported.
inline ValidationReport parse_structure(const std::string& text) {
    return validate_structure(parse_structure_input(text));
}

// Canonical form: spaces sorted by id with the empty space explicit, order
// and projections reduced to the covering pairs of the space order.
inline std::string serialize_structure(const Structure& st) {
    nlohmann::json j;
    j["spaces"] = nlohmann::json::array();
    for (const auto& [id, sp] : st.spaces) {
        nlohmann::json s;
        s["id"] = id;
        s["states"] = std::vector<Id>(sp.states.begin(), sp.states.end());
        j["spaces"].push_back(std::move(s));
    }
    std::vector<IdPair> covers;
    for (const auto& [lo, hi] : hasse_reduction(st.order))
        if (lo != st.bottom) covers.emplace_back(hi, lo);
    std::sort(covers.begin(), covers.end());
    j["order"] = nlohmann::json::array();
    j["projections"] = nlohmann::json::array();
    for (const auto& [hi, lo] : covers) {
        j["order"].push_back(nlohmann::json::array({hi, lo}));
        nlohmann::json p;
        p["from"] = hi;
        p["to"] = lo;
        p["map"] = st.projections.at({hi, lo});
        j["projections"].push_back(std::move(p));
    }
    return j.dump(2) + "\n";
}

namespace detail {

inline std::string dot_quote(const Id& s) {
    std::string out = "\"";
    for (char c : s) {
        if (c == '"' || c == '\\') out += '\\';
        out += c;
    }
    out += '"';
    return out;
}

inline std::string dot_graph(const std::string& name, const std::vector<Id>& nodes,
                             const std::vector<IdPair>& edges) {
    std::string out = "digraph " + name + " {\n  rankdir=BT;\n  node [shape=box];\n";
    for (const Id& n : nodes) out += "  " + dot_quote(n) + ";\n";
    for (const auto& [lo, hi] : edges) out += "  " + dot_quote(lo) + " -> " + dot_quote(hi) + ";\n";
    out += "}\n";
    return out;
}

}  // namespace detail

// Hasse diagram of the space order, edges pointing from less expressive to
// more expressive, drawn bottom to top.
inline std::string export_dot_spaces(const Structure& st) {
    std::vector<Id> nodes(st.order.elements().begin(), st.order.elements().end());
    Relation covers = hasse_reduction(st.order);
    return detail::dot_graph("spaces", nodes, std::vector<IdPair>(covers.begin(), covers.end()));
}

// Hasse diagram of the full event family under the event order.
inline std::string export_dot_events(const EventLattice& el) {
    std::vector<Id> nodes(el.order.elements().begin(), el.order.elements().end());
    Relation covers = hasse_reduction(el.order);
    return detail::dot_graph("events", nodes, std::vector<IdPair>(covers.begin(), covers.end()));
}

// Hasse diagram of the reduced family. Duplicate traces make the relation a
// genuine preorder with no covering relation; the strict pairs are drawn
// directly in that case.
inline std::string export_dot_reduced(const ReducedPoset& rp) {
    std::vector<Id> nodes(rp.relation.elements().begin(), rp.relation.elements().end());
    std::vector<IdPair> edges;
    if (!rp.relation.antisymmetry_violation()) {
        FinitePoset p(rp.relation.elements(), rp.relation.relation());
        Relation covers = hasse_reduction(p);
        edges.assign(covers.begin(), covers.end());
    } else {
        for (const auto& [a, b] : rp.relation.relation())
            if (a != b) edges.emplace_back(a, b);
    }
    return detail::dot_graph("reduced", nodes, edges);
}

}  // namespace evlat
