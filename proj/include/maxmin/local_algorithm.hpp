#pragma once

#include "maxmin/instance.hpp"
#include "maxmin/lp.hpp"
#include "maxmin/view.hpp"

#include <gmpxx.h>

#include <string>
#include <vector>

namespace maxmin {

/// Parameters of the local averaging algorithm. The horizon grows linearly
/// in the level L: each agent gathers objectives to distance 4L+1, each
/// subproblem spans radius 4L+2 around its objective, so information travels
/// distance 8L+3 in total.
struct AlgoParams {
    int delta_i = 2;  // >= 2
    int delta_k = 2;  // >= 2
    int level = 0;    // L >= 0

    int radius() const { return 8 * level + 3; }
    int gather_radius() const { return 4 * level + 1; }
    int subproblem_radius() const { return 4 * level + 2; }

    void check() const;  // throws std::invalid_argument outside the domain
};

/// n(l) = sum_{j=0..l-1} ((delta_i - 1)(delta_k - 1))^j, exactly. n(0) = 0.
mpz_class n_of(int l, const AlgoParams& p);

struct RegionSizes {
    mpz_class size_kv;        // objectives within distance 4l+1 of an agent
    mpz_class size_ki;        // objectives within distance 4l of a constraint
    mpz_class size_boundary;  // the per-agent difference of the two regions
};

/// Closed-form counts of objective regions in the regularized tree.
RegionSizes region_sizes(int l, const AlgoParams& p);

/// q = 1 / (delta_i + delta_i (delta_i - 1)(delta_k - 1) n(L)): the factor
/// that scales the summed subproblem solutions back to feasibility.
Rational averaging_factor(const AlgoParams& p);

/// alpha = 1 / (q (1 + (delta_i - 1) delta_k n(L))): the guaranteed
/// approximation ratio. Strictly decreasing in L with limit
/// delta_i (1 - 1/delta_k); equals delta_i at L = 0.
Rational approx_ratio(const AlgoParams& p);

/// delta_i (1 - 1/delta_k), the L -> infinity limit of approx_ratio.
Rational approx_ratio_limit(const AlgoParams& p);

/// Pads every constraint node to delta_i agent neighbours and every
/// objective node to delta_k agent neighbours by growing flagged virtual
/// trees, truncated at the view radius. A padding agent of a constraint
/// carries a = 0 toward it and a fresh virtual objective with c = 1; a
/// padding agent of an objective carries c = 0 and a fresh virtual
/// constraint with a = 1. Throws UnsupportedInstanceError when the view is
/// not from a bipartite max-min LP or exceeds the declared bounds.
LocalView regularize_view(const LocalView& view, const AlgoParams& p);

/// Finite tree-structured subproblem rooted at an objective of a
/// regularized view. Its canonical form depends only on the objective's own
/// radius-(4L+2) surroundings, so every agent containing that objective
/// builds the identical instance.
struct Subproblem {
    MaxMinInstance instance;       // tree instance; vertex 0 is the root objective
    std::vector<int> view_node_of; // instance vertex id -> view node index
    int root_agent_id;             // instance id of the executing agent (the view root)
    std::string code;              // canonical serialization; equal iff isomorphic
};

/// Extracts the depth-(4L+2) ball around objective node k_node (which must
/// lie within distance 4L+1 of the view root). Throws std::domain_error when
/// k_node is outside that region.
Subproblem build_subproblem(const LocalView& reg_view, int k_node, const AlgoParams& p);

/// The local averaging algorithm, executed independently per agent: gather
/// the radius-(8L+3) view, regularize, solve the subproblem of every
/// objective within distance 4L+1, and average the agent's own values with
/// factor q. Output is feasible and every objective utility is at least
/// omega* / approx_ratio(p). Requires a bipartite max-min LP within the
/// declared degree bounds (UnsupportedInstanceError otherwise).
Assignment run_local(const MaxMinInstance& inst, const AlgoParams& p);

/// Feasibility-guaranteed baseline: x_v = min over constraints i of v with
/// a_iv > 0 of 1 / (deg(i) * a_iv); agents with no positively-weighted
/// constraint fall back to the analogous objective rule, or 0.
Assignment safe_baseline(const MaxMinInstance& inst);

}  // namespace maxmin
