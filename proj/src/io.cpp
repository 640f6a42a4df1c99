#include "maxmin/io.hpp"

#include "maxmin/errors.hpp"

#include <json.hpp>

#include <algorithm>
#include <map>
#include <set>

namespace maxmin {

using nlohmann::json;

namespace {

bool is_coeff_edge(Role ru, Role rv) { return (ru == Role::Agent) != (rv == Role::Agent); }

json encode_coeff_entry(const char* side_key, VertexId side, VertexId agent,
                        const Rational& value) {
    json j;
    j[side_key] = side;
    j["agent"] = agent;
    j["value"] = value.str();
    return j;
}

VertexId get_id(const json& j, const char* field, const std::string& where) {
    if (!j.contains(field)) throw ParseError(where, std::string("missing field '") + field + "'");
    const json& v = j.at(field);
    if (!v.is_number_unsigned()) throw ParseError(where + "." + field, "expected nonnegative integer");
    return v.get<VertexId>();
}

int get_port(const json& j, const char* field, const std::string& where) {
    if (!j.contains(field)) throw ParseError(where, std::string("missing field '") + field + "'");
    const json& v = j.at(field);
    if (!v.is_number_integer() || v.get<long long>() <= 0)
        throw ParseError(where + "." + field, "expected positive integer port");
    return v.get<int>();
}

}  // namespace

std::string encode_instance(const MaxMinInstance& inst) {
    json doc;
    doc["agents"] = inst.agents();
    doc["constraints"] = inst.constraints();
    doc["objectives"] = inst.objectives();

    json edges = json::array();
    json a_entries = json::array();
    json c_entries = json::array();
    for (const auto& e : inst.edges()) {
        edges.push_back({{"u", e.u}, {"v", e.v}, {"port_u", e.port_u}, {"port_v", e.port_v}});
        Role ru = inst.role(e.u), rv = inst.role(e.v);
        if (!is_coeff_edge(ru, rv)) continue;
        VertexId agent = ru == Role::Agent ? e.u : e.v;
        VertexId other = ru == Role::Agent ? e.v : e.u;
        if (inst.role(other) == Role::Constraint)
            a_entries.push_back(encode_coeff_entry("constraint", other, agent, e.coeff));
        else
            c_entries.push_back(encode_coeff_entry("objective", other, agent, e.coeff));
    }
    doc["edges"] = edges;
    doc["a"] = a_entries;
    doc["c"] = c_entries;
    doc["id_mode"] = inst.id_mode() == IdMode::UniqueIds ? "unique_ids" : "port_numbering";
    if (inst.delta_i()) doc["delta_i"] = *inst.delta_i();
    if (inst.delta_k()) doc["delta_k"] = *inst.delta_k();
    return doc.dump(2) + "\n";
}

MaxMinInstance decode_instance(std::string_view text) {
    json doc;
    try {
        doc = json::parse(text);
    } catch (const json::parse_error& e) {
        throw ParseError("$", e.what());
    }
    if (!doc.is_object()) throw ParseError("$", "top level is not an object");

    static const std::set<std::string> known = {"agents",  "constraints", "objectives",
                                                "edges",   "a",           "c",
                                                "id_mode", "delta_i",     "delta_k"};
    for (auto it = doc.begin(); it != doc.end(); ++it)
        if (!known.count(it.key())) throw ParseError("$." + it.key(), "unknown field");
    for (const char* f : {"agents", "constraints", "objectives", "edges", "a", "c", "id_mode"})
        if (!doc.contains(f)) throw ParseError("$", std::string("missing field '") + f + "'");

    std::map<VertexId, Role> roles;
    auto read_role_array = [&](const char* field, Role role) {
        const json& arr = doc.at(field);
        if (!arr.is_array()) throw ParseError(std::string("$.") + field, "expected array");
        for (std::size_t i = 0; i < arr.size(); ++i) {
            const json& v = arr[i];
            std::string where = std::string("$.") + field + "[" + std::to_string(i) + "]";
            if (!v.is_number_unsigned()) throw ParseError(where, "expected nonnegative integer id");
            auto id = v.get<VertexId>();
            if (!roles.emplace(id, role).second) throw ParseError(where, "duplicate vertex id");
        }
    };
    read_role_array("agents", Role::Agent);
    read_role_array("constraints", Role::Constraint);
    read_role_array("objectives", Role::Objective);

    if (roles.empty()) throw ParseError("$", "instance has no vertices");
    VertexId next = 0;
    for (const auto& [id, _] : roles) {
        if (id != next)
            throw ParseError("$", "vertex ids are not the dense range 0.." +
                                      std::to_string(roles.size() - 1));
        ++next;
    }
    std::vector<Role> role_vec(roles.size());
    for (const auto& [id, r] : roles) role_vec[id] = r;

    const json& jedges = doc.at("edges");
    if (!jedges.is_array()) throw ParseError("$.edges", "expected array");
    std::vector<EdgeSpec> edges;
    std::map<std::pair<VertexId, VertexId>, std::size_t> edge_index;
    for (std::size_t i = 0; i < jedges.size(); ++i) {
        std::string where = "$.edges[" + std::to_string(i) + "]";
        const json& je = jedges[i];
        if (!je.is_object()) throw ParseError(where, "expected object");
        for (auto it = je.begin(); it != je.end(); ++it)
            if (std::string k = it.key(); k != "u" && k != "v" && k != "port_u" && k != "port_v")
                throw ParseError(where + "." + k, "unknown field");
        EdgeSpec e;
        e.u = get_id(je, "u", where);
        e.v = get_id(je, "v", where);
        e.port_u = get_port(je, "port_u", where);
        e.port_v = get_port(je, "port_v", where);
        e.coeff = Rational(0);
        if (!roles.count(e.u) || !roles.count(e.v)) throw ParseError(where, "unknown endpoint id");
        if (e.u == e.v) throw ParseError(where, "self-loop");
        auto key = std::minmax(e.u, e.v);
        if (!edge_index.emplace(std::pair{key.first, key.second}, i).second)
            throw ParseError(where, "duplicate edge");
        edges.push_back(e);
    }

    // check duplicate ports up front so the error is a ParseError, not a
    // constructor failure without a location
    std::map<VertexId, std::set<int>> ports;
    for (std::size_t i = 0; i < edges.size(); ++i) {
        const auto& e = edges[i];
        if (!ports[e.u].insert(e.port_u).second)
            throw ParseError("$.edges[" + std::to_string(i) + "].port_u",
                             "duplicate port at vertex " + std::to_string(e.u));
        if (!ports[e.v].insert(e.port_v).second)
            throw ParseError("$.edges[" + std::to_string(i) + "].port_v",
                             "duplicate port at vertex " + std::to_string(e.v));
    }

    auto read_coeffs = [&](const char* field, const char* side_key, Role side_role) {
        const json& arr = doc.at(field);
        if (!arr.is_array()) throw ParseError(std::string("$.") + field, "expected array");
        std::set<std::pair<VertexId, VertexId>> covered;
        for (std::size_t i = 0; i < arr.size(); ++i) {
            std::string where = std::string("$.") + field + "[" + std::to_string(i) + "]";
            const json& jc = arr[i];
            if (!jc.is_object()) throw ParseError(where, "expected object");
            for (auto it = jc.begin(); it != jc.end(); ++it)
                if (std::string k = it.key(); k != side_key && k != "agent" && k != "value")
                    throw ParseError(where + "." + k, "unknown field");
            VertexId side = get_id(jc, side_key, where);
            VertexId agent = get_id(jc, "agent", where);
            if (!jc.contains("value")) throw ParseError(where, "missing field 'value'");
            if (!jc.at("value").is_string()) throw ParseError(where + ".value", "expected \"p/q\" string");
            Rational value;
            try {
                value = Rational::parse(jc.at("value").get<std::string>());
            } catch (const std::invalid_argument& e) {
                throw ParseError(where + ".value", e.what());
            }
            if (value.sign() < 0) throw ParseError(where + ".value", "negative coefficient");
            if (!roles.count(side) || roles[side] != side_role)
                throw ParseError(where, std::string("vertex is not a ") + role_name(side_role));
            if (!roles.count(agent) || roles[agent] != Role::Agent)
                throw ParseError(where, "vertex is not an agent");
            auto key = std::minmax(side, agent);
            auto it = edge_index.find({key.first, key.second});
            if (it == edge_index.end()) throw ParseError(where, "no such edge");
            if (!covered.insert({side, agent}).second)
                throw ParseError(where, "duplicate coefficient for this edge");
            edges[it->second].coeff = value;
        }
        // every matching edge must carry a coefficient
        for (std::size_t i = 0; i < edges.size(); ++i) {
            const auto& e = edges[i];
            Role ru = role_vec[e.u], rv = role_vec[e.v];
            bool relevant = (ru == side_role && rv == Role::Agent) ||
                            (rv == side_role && ru == Role::Agent);
            if (!relevant) continue;
            VertexId side = ru == side_role ? e.u : e.v;
            VertexId agent = ru == side_role ? e.v : e.u;
            if (!covered.count({side, agent}))
                throw ParseError("$.edges[" + std::to_string(i) + "]",
                                 std::string("edge lacks a coefficient in '") + field + "'");
        }
    };
    read_coeffs("a", "constraint", Role::Constraint);
    read_coeffs("c", "objective", Role::Objective);

    const json& jm = doc.at("id_mode");
    IdMode mode;
    if (jm == "port_numbering") mode = IdMode::PortNumbering;
    else if (jm == "unique_ids") mode = IdMode::UniqueIds;
    else throw ParseError("$.id_mode", "expected \"port_numbering\" or \"unique_ids\"");

    std::optional<int> di, dk;
    if (doc.contains("delta_i")) {
        if (!doc["delta_i"].is_number_unsigned()) throw ParseError("$.delta_i", "expected integer");
        di = doc["delta_i"].get<int>();
    }
    if (doc.contains("delta_k")) {
        if (!doc["delta_k"].is_number_unsigned()) throw ParseError("$.delta_k", "expected integer");
        dk = doc["delta_k"].get<int>();
    }

    try {
        return MaxMinInstance(std::move(role_vec), edges, mode, di, dk);
    } catch (const std::invalid_argument& e) {
        throw ParseError("$", e.what());
    }
}

}  // namespace maxmin
