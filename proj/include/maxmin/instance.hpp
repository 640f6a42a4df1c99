#pragma once

#include "maxmin/rational.hpp"

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

namespace maxmin {

using VertexId = std::uint32_t;

enum class Role : std::uint8_t { Agent, Constraint, Objective };
enum class IdMode : std::uint8_t { PortNumbering, UniqueIds };

const char* role_name(Role r);

/// One endpoint's record of an incident edge.
struct HalfEdge {
    VertexId to;
    int port_here;   // port number at this vertex
    int port_there;  // port number at the other endpoint
    Rational coeff;  // a (constraint-agent) or c (objective-agent); 0 when neither applies
};

/// Edge as supplied to the builder / file format.
struct EdgeSpec {
    VertexId u, v;
    int port_u, port_v;
    Rational coeff;
};

/// A max-min LP instance: tripartite-role communication graph with exact
/// rational coefficients and per-vertex port numbering. Immutable after
/// construction; all operations on it are pure.
///
/// The constructor rejects only structurally unusable input (out-of-range
/// ids, self-loops, duplicate edges, non-positive or duplicated ports,
/// negative coefficients). Softer rules — role bipartiteness, port
/// contiguity, degree bounds, parallel edges — are reported by
/// validate_instance so that broken documents can still be inspected.
class MaxMinInstance {
public:
    MaxMinInstance(std::vector<Role> roles, const std::vector<EdgeSpec>& edges, IdMode mode,
                   std::optional<int> delta_i = std::nullopt,
                   std::optional<int> delta_k = std::nullopt);

    std::size_t vertex_count() const { return roles_.size(); }
    Role role(VertexId v) const;
    const std::vector<HalfEdge>& neighbors(VertexId v) const;  // sorted by port_here
    int degree(VertexId v) const { return static_cast<int>(neighbors(v).size()); }
    IdMode id_mode() const { return id_mode_; }
    std::optional<int> delta_i() const { return delta_i_; }
    std::optional<int> delta_k() const { return delta_k_; }

    const std::vector<VertexId>& agents() const { return agents_; }
    const std::vector<VertexId>& constraints() const { return constraints_; }
    const std::vector<VertexId>& objectives() const { return objectives_; }
    const std::vector<EdgeSpec>& edges() const { return edges_; }

    /// True iff every agent has exactly one constraint and one objective
    /// neighbour (the bipartite special case).
    bool is_bipartite_max_min() const;
    /// True iff every agent-constraint and agent-objective coefficient is 1.
    bool is_zero_one() const;

    int max_constraint_degree() const;
    int max_objective_degree() const;

private:
    std::vector<Role> roles_;
    std::vector<std::vector<HalfEdge>> adj_;
    std::vector<EdgeSpec> edges_;
    std::vector<VertexId> agents_, constraints_, objectives_;
    IdMode id_mode_;
    std::optional<int> delta_i_, delta_k_;
};

/// Values for the agents of an instance. Construction fixes the domain to
/// exactly the agent set (all zeros); only agent ids can be assigned.
class Assignment {
public:
    explicit Assignment(const MaxMinInstance& inst);

    const Rational& at(VertexId agent) const;
    void set(VertexId agent, Rational value);
    const std::map<VertexId, Rational>& values() const { return values_; }

    friend bool operator==(const Assignment&, const Assignment&) = default;

private:
    std::map<VertexId, Rational> values_;
};

struct Violation {
    std::string kind;     // e.g. "edge within V", "port gap", "negative coefficient"
    std::string where;    // vertex or edge description
    std::string message;
};

struct ValidationReport {
    bool ok = true;  // invariant: ok iff violations empty
    std::vector<Violation> violations;
};

/// Reports every violated structural invariant; never throws.
ValidationReport validate_instance(const MaxMinInstance& inst);

/// Σ_{v ∈ V_k} c_kv · x_v, exact. Throws RoleError if k is not an objective.
Rational objective_utility(const MaxMinInstance& inst, const Assignment& x, VertexId k);

/// min over objectives of objective_utility. Throws std::domain_error when
/// the instance has no objectives.
Rational min_utility(const MaxMinInstance& inst, const Assignment& x);

/// Ids of violated constraints (row sum > 1) plus agents with negative
/// values. Empty iff x is feasible. Exact comparisons.
std::vector<VertexId> check_feasible(const MaxMinInstance& inst, const Assignment& x);

}  // namespace maxmin
