#pragma once

#include "maxmin/instance.hpp"
#include "maxmin/rational.hpp"

#include <cstdint>
#include <optional>
#include <vector>

namespace maxmin {

/// Plain bipartite graph used as the skeleton of lower-bound instances.
/// Left vertices play the constraint side, right vertices the objective side.
struct BipartiteGraph {
    int left_count = 0;
    int right_count = 0;
    std::vector<std::pair<int, int>> edges;  // (left index, right index)

    bool is_biregular(int left_degree, int right_degree) const;
    std::vector<int> left_degrees() const;
    std::vector<int> right_degrees() const;
};

/// Length of the shortest cycle; nullopt for forests.
std::optional<int> girth(const BipartiteGraph& q);

/// 2-lift: vertex set doubled; edges in S stay parallel (0-0, 1-1), edges
/// outside S cross (0-1, 1-0). Preserves biregularity and never shortens a
/// cycle. `in_s` is indexed by edge position.
BipartiteGraph lift(const BipartiteGraph& q, const std::vector<bool>& in_s);

struct HighGirthOptions {
    long max_lifts = 24;           // accepted lifts before giving up
    long restarts_per_level = 12;  // seeded search restarts per shortest-cycle system
    long max_vertices = 200000;
    long max_cycles = 200000;      // enumeration guard
};

/// (a,b)-biregular graph with girth >= g, grown from K_{b,a} by repeated
/// improving 2-lifts: per round, a seeded search chooses a subset S whose
/// lift strictly decreases the number of shortest cycles (an exact GF(2)
/// solve makes every shortest cycle odd whenever the system is consistent,
/// with the leftover freedom spent on next-length cycles; otherwise a seeded
/// hill climb maximizes the odd count). Throws ResourceError with the best
/// girth achieved when the budget runs out.
BipartiteGraph high_girth_biregular(int a, int b, int g, std::uint64_t seed,
                                    const HighGirthOptions& opts = {});

struct LowerBoundParams {
    int d_i = 2;  // degree of the original constraints
    int d_k = 2;  // degree of the original objectives
    int s = 0;    // path-stretching parameter
    int r = 4;    // indistinguishability radius; positive multiple of 4

    int required_girth() const { return 2 * (4 * s + 2 + r) + 1; }  // the odd bound g
    void check() const;
};

/// The adversarial instance: every skeleton edge becomes a path of length
/// 4s+2 (constraint, s agent-objective-agent-constraint segments, agent,
/// objective). Coefficients: a = 1 everywhere, c = 1 at original objectives,
/// c = d_k - 1 at path objectives. Ports by neighbour-id sweep, dense unique
/// ids, degree bounds declared.
struct LowerBoundInstance {
    MaxMinInstance instance;
    std::vector<VertexId> original_constraints;  // I' in skeleton order
    std::vector<VertexId> original_objectives;   // K' in skeleton order
    LowerBoundParams params;
};

enum class GirthCheck { Require, Skip };

/// Builds S from a (d_i, d_k)-biregular skeleton. With GirthCheck::Require
/// (the default) the skeleton must have girth >= required_girth(); Skip
/// permits experiments that only use girth-independent properties of S
/// (the utility bound and the growth bound).
LowerBoundInstance build_S(const BipartiteGraph& q, const LowerBoundParams& params,
                           GirthCheck girth_check = GirthCheck::Require);

/// Eq.-style closed-form bound on the utility of any feasible solution of S.
Rational utility_upper_bound(int d_i, int d_k, int s);

/// The tree instance induced by the radius-(4s+2+r) ball around an original
/// objective k, with coefficients and ports copied from S (ids compressed
/// order-preservingly to stay dense; ports re-ranked only at boundary
/// constraints, which lie outside every radius-r view of V_k).
struct SkInstance {
    MaxMinInstance instance;
    VertexId root_objective = 0;       // new id of k
    std::vector<VertexId> old_of_new;  // new id -> id in S
    LowerBoundParams params;
};
SkInstance build_Sk(const LowerBoundInstance& s, VertexId k, const LowerBoundParams& params);

/// The closed-form feasible solution of S_k: with D = max(d_i, d_k + 1),
/// agents at distance 4j+1 from the root get 1 - 1/D^(2j+1) and agents at
/// distance 4j+3 get 1/D^(2j+2). Feasible with minimum utility > d_k - 1.
Assignment appendix_solution(const SkInstance& sk);

/// max over agents v and radii r in [R, ecc(v)] of
/// |V ∩ B(v, r+2)| / |V ∩ B(v, r)|, exactly.
Rational relative_growth(const MaxMinInstance& inst, int big_r);

/// 1 + 2^j / ((2^j - 1)(2s + 1)): the growth envelope of S beyond radius
/// j(4s+2).
Rational growth_bound(int j, int s);

}  // namespace maxmin
