#include "maxmin/instance.hpp"

#include "maxmin/errors.hpp"

#include <algorithm>
#include <set>
#include <stdexcept>

namespace maxmin {

const char* role_name(Role r) {
    switch (r) {
        case Role::Agent: return "agent";
        case Role::Constraint: return "constraint";
        case Role::Objective: return "objective";
    }
    return "?";
}

MaxMinInstance::MaxMinInstance(std::vector<Role> roles, const std::vector<EdgeSpec>& edges,
                               IdMode mode, std::optional<int> delta_i,
                               std::optional<int> delta_k)
    : roles_(std::move(roles)), edges_(edges), id_mode_(mode), delta_i_(delta_i),
      delta_k_(delta_k) {
    const auto n = roles_.size();
    adj_.resize(n);
    std::set<std::pair<VertexId, VertexId>> seen;
    for (const auto& e : edges_) {
        if (e.u >= n || e.v >= n) throw std::invalid_argument("edge endpoint out of range");
        if (e.u == e.v) throw std::invalid_argument("self-loop");
        if (e.port_u <= 0 || e.port_v <= 0) throw std::invalid_argument("non-positive port");
        if (e.coeff.sign() < 0) throw std::invalid_argument("negative coefficient");
        auto key = std::minmax(e.u, e.v);
        if (!seen.insert({key.first, key.second}).second)
            throw std::invalid_argument("duplicate edge");
        adj_[e.u].push_back({e.v, e.port_u, e.port_v, e.coeff});
        adj_[e.v].push_back({e.u, e.port_v, e.port_u, e.coeff});
    }
    for (std::size_t v = 0; v < n; ++v) {
        auto& nb = adj_[v];
        std::sort(nb.begin(), nb.end(),
                  [](const HalfEdge& a, const HalfEdge& b) { return a.port_here < b.port_here; });
        for (std::size_t i = 1; i < nb.size(); ++i)
            if (nb[i].port_here == nb[i - 1].port_here)
                throw std::invalid_argument("duplicate port at vertex " + std::to_string(v));
    }
    for (std::size_t v = 0; v < n; ++v) {
        switch (roles_[v]) {
            case Role::Agent: agents_.push_back(static_cast<VertexId>(v)); break;
            case Role::Constraint: constraints_.push_back(static_cast<VertexId>(v)); break;
            case Role::Objective: objectives_.push_back(static_cast<VertexId>(v)); break;
        }
    }
}

Role MaxMinInstance::role(VertexId v) const {
    if (v >= roles_.size()) throw RoleError("unknown vertex " + std::to_string(v));
    return roles_[v];
}

const std::vector<HalfEdge>& MaxMinInstance::neighbors(VertexId v) const {
    if (v >= roles_.size()) throw RoleError("unknown vertex " + std::to_string(v));
    return adj_[v];
}

bool MaxMinInstance::is_bipartite_max_min() const {
    for (VertexId v : agents_) {
        int ni = 0, nk = 0;
        for (const auto& h : adj_[v]) {
            if (roles_[h.to] == Role::Constraint) ++ni;
            if (roles_[h.to] == Role::Objective) ++nk;
        }
        if (ni != 1 || nk != 1) return false;
    }
    return true;
}

bool MaxMinInstance::is_zero_one() const {
    const Rational one(1);
    for (const auto& e : edges_) {
        Role ru = roles_[e.u], rv = roles_[e.v];
        bool coeff_edge = (ru == Role::Agent) != (rv == Role::Agent);
        if (coeff_edge && e.coeff != one) return false;
    }
    return true;
}

int MaxMinInstance::max_constraint_degree() const {
    int d = 0;
    for (VertexId i : constraints_) d = std::max(d, degree(i));
    return d;
}

int MaxMinInstance::max_objective_degree() const {
    int d = 0;
    for (VertexId k : objectives_) d = std::max(d, degree(k));
    return d;
}

Assignment::Assignment(const MaxMinInstance& inst) {
    for (VertexId v : inst.agents()) values_[v] = Rational(0);
}

const Rational& Assignment::at(VertexId agent) const {
    auto it = values_.find(agent);
    if (it == values_.end())
        throw RoleError("assignment: vertex " + std::to_string(agent) + " is not an agent");
    return it->second;
}

void Assignment::set(VertexId agent, Rational value) {
    auto it = values_.find(agent);
    if (it == values_.end())
        throw RoleError("assignment: vertex " + std::to_string(agent) + " is not an agent");
    it->second = std::move(value);
}

ValidationReport validate_instance(const MaxMinInstance& inst) {
    ValidationReport rep;
    auto add = [&rep](std::string kind, std::string where, std::string msg) {
        rep.ok = false;
        rep.violations.push_back({std::move(kind), std::move(where), std::move(msg)});
    };

    std::set<std::pair<VertexId, VertexId>> pair_seen;
    for (const auto& e : inst.edges()) {
        Role ru = inst.role(e.u), rv = inst.role(e.v);
        std::string where = "edge (" + std::to_string(e.u) + "," + std::to_string(e.v) + ")";
        if (ru == Role::Agent && rv == Role::Agent)
            add("edge within V", where, "both endpoints are agents");
        else if (ru != Role::Agent && rv != Role::Agent)
            add("edge within I∪K", where,
                std::string(role_name(ru)) + "-" + role_name(rv) + " edge has no agent endpoint");
    }

    for (VertexId v = 0; v < inst.vertex_count(); ++v) {
        const auto& nb = inst.neighbors(v);
        for (std::size_t idx = 0; idx < nb.size(); ++idx) {
            if (nb[idx].port_here != static_cast<int>(idx) + 1) {
                add("port gap", "vertex " + std::to_string(v),
                    "ports are not exactly 1.." + std::to_string(nb.size()));
                break;
            }
        }
        std::set<VertexId> nbs;
        for (const auto& h : nb)
            if (!nbs.insert(h.to).second)
                add("parallel edge", "vertex " + std::to_string(v),
                    "multiple edges to vertex " + std::to_string(h.to));
    }

    if (inst.delta_i() && inst.max_constraint_degree() > *inst.delta_i())
        add("degree bound", "constraints",
            "max constraint degree " + std::to_string(inst.max_constraint_degree()) +
                " exceeds declared delta_i " + std::to_string(*inst.delta_i()));
    if (inst.delta_k() && inst.max_objective_degree() > *inst.delta_k())
        add("degree bound", "objectives",
            "max objective degree " + std::to_string(inst.max_objective_degree()) +
                " exceeds declared delta_k " + std::to_string(*inst.delta_k()));

    return rep;
}

Rational objective_utility(const MaxMinInstance& inst, const Assignment& x, VertexId k) {
    if (inst.role(k) != Role::Objective)
        throw RoleError("vertex " + std::to_string(k) + " is not an objective");
    Rational sum(0);
    for (const auto& h : inst.neighbors(k)) {
        if (inst.role(h.to) != Role::Agent) continue;
        sum += h.coeff * x.at(h.to);
    }
    return sum;
}

Rational min_utility(const MaxMinInstance& inst, const Assignment& x) {
    if (inst.objectives().empty())
        throw std::domain_error("min_utility: instance has no objectives");
    bool first = true;
    Rational best(0);
    for (VertexId k : inst.objectives()) {
        Rational u = objective_utility(inst, x, k);
        if (first || u < best) best = u;
        first = false;
    }
    return best;
}

std::vector<VertexId> check_feasible(const MaxMinInstance& inst, const Assignment& x) {
    std::vector<VertexId> out;
    for (const auto& [v, val] : x.values())
        if (val.sign() < 0) out.push_back(v);
    const Rational one(1);
    for (VertexId i : inst.constraints()) {
        Rational sum(0);
        for (const auto& h : inst.neighbors(i)) {
            if (inst.role(h.to) != Role::Agent) continue;
            sum += h.coeff * x.at(h.to);
        }
        if (sum > one) out.push_back(i);
    }
    return out;
}

}  // namespace maxmin
