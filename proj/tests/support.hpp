#pragma once

// Shared instance builders and independent oracles for the test suites.
// The oracles here deliberately avoid the simplex code path.

#include "maxmin/instance.hpp"
#include "maxmin/rational.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>
#include <vector>

namespace testsupport {

using maxmin::Assignment;
using maxmin::EdgeSpec;
using maxmin::IdMode;
using maxmin::MaxMinInstance;
using maxmin::Rational;
using maxmin::Role;
using maxmin::VertexId;

struct RawEdge {
    VertexId u, v;
    Rational coeff;
};

/// Builds an instance from role + edge lists, assigning ports 1..deg at each
/// vertex by ascending neighbour id (or by a seeded shuffle when rng given).
inline MaxMinInstance make_instance(std::vector<Role> roles, const std::vector<RawEdge>& raw,
                                    IdMode mode = IdMode::PortNumbering,
                                    std::optional<int> delta_i = std::nullopt,
                                    std::optional<int> delta_k = std::nullopt,
                                    std::mt19937_64* port_rng = nullptr) {
    std::vector<std::vector<std::pair<VertexId, std::size_t>>> incident(roles.size());
    for (std::size_t e = 0; e < raw.size(); ++e) {
        incident[raw[e].u].push_back({raw[e].v, e});
        incident[raw[e].v].push_back({raw[e].u, e});
    }
    std::vector<EdgeSpec> edges(raw.size());
    for (std::size_t e = 0; e < raw.size(); ++e)
        edges[e] = {raw[e].u, raw[e].v, 0, 0, raw[e].coeff};
    for (std::size_t v = 0; v < incident.size(); ++v) {
        std::sort(incident[v].begin(), incident[v].end());
        if (port_rng) std::shuffle(incident[v].begin(), incident[v].end(), *port_rng);
        for (std::size_t i = 0; i < incident[v].size(); ++i) {
            auto [nbv, e] = incident[v][i];
            if (edges[e].u == static_cast<VertexId>(v)) edges[e].port_u = static_cast<int>(i) + 1;
            else edges[e].port_v = static_cast<int>(i) + 1;
        }
    }
    return MaxMinInstance(std::move(roles), edges, mode, delta_i, delta_k);
}

/// The sensor-network example: nine agents, three relays, five sensors.
/// Optimum 3/5. Agents are vertices 0..8 (x1..x9), constraints 9..11,
/// objectives 12..16.
inline MaxMinInstance sensor_instance() {
    std::vector<Role> roles(17, Role::Agent);
    for (int i = 9; i <= 11; ++i) roles[static_cast<std::size_t>(i)] = Role::Constraint;
    for (int k = 12; k <= 16; ++k) roles[static_cast<std::size_t>(k)] = Role::Objective;
    auto A = [](int one_based) { return static_cast<VertexId>(one_based - 1); };
    std::vector<RawEdge> raw;
    auto link = [&raw](VertexId x, int node) {
        raw.push_back({x, static_cast<VertexId>(node), Rational(1)});
    };
    // relay rows
    for (int x : {1, 2, 3}) link(A(x), 9);
    for (int x : {4, 5, 6}) link(A(x), 10);
    for (int x : {7, 8, 9}) link(A(x), 11);
    // sensor rows
    link(A(1), 12);
    link(A(2), 13);
    link(A(4), 13);
    link(A(3), 14);
    link(A(5), 14);
    link(A(7), 14);
    link(A(6), 15);
    link(A(8), 15);
    link(A(9), 16);
    return make_instance(std::move(roles), raw, IdMode::PortNumbering, 3, 3);
}

inline VertexId sensor_objective(int index_1_to_5) {
    return static_cast<VertexId>(11 + index_1_to_5);
}

/// One constraint, `degree` agents, each with its own objective; a = c = 1.
inline MaxMinInstance star_instance(int degree) {
    std::vector<Role> roles;
    std::vector<RawEdge> raw;
    for (int j = 0; j < degree; ++j) roles.push_back(Role::Agent);
    VertexId con = static_cast<VertexId>(roles.size());
    roles.push_back(Role::Constraint);
    for (int j = 0; j < degree; ++j) {
        VertexId obj = static_cast<VertexId>(roles.size());
        roles.push_back(Role::Objective);
        raw.push_back({static_cast<VertexId>(j), con, Rational(1)});
        raw.push_back({static_cast<VertexId>(j), obj, Rational(1)});
    }
    return make_instance(std::move(roles), raw, IdMode::PortNumbering, degree, 1);
}

inline MaxMinInstance single_agent_instance() {
    std::vector<Role> roles{Role::Agent, Role::Constraint, Role::Objective};
    std::vector<RawEdge> raw{{0, 1, Rational(1)}, {0, 2, Rational(1)}};
    return make_instance(std::move(roles), raw, IdMode::PortNumbering, 2, 2);
}

/// Seeded random bipartite max-min LP: every agent touches exactly one
/// constraint and one objective, degrees within (delta_i, delta_k), every
/// objective nonempty, a in (0,4], c in [0,4] with denominator <= 8.
inline MaxMinInstance random_bipartite(std::mt19937_64& rng, int max_agents, int delta_i,
                                       int delta_k) {
    auto uniform = [&rng](int lo, int hi) {
        return lo + static_cast<int>(rng() % static_cast<std::uint64_t>(hi - lo + 1));
    };
    int na = uniform(2, std::max(2, max_agents));
    int nk = uniform(std::max(1, (na + delta_k - 1) / delta_k), na);
    int ni = uniform(std::max(1, (na + delta_i - 1) / delta_i), na);

    std::vector<Role> roles;
    for (int j = 0; j < na; ++j) roles.push_back(Role::Agent);
    std::vector<VertexId> cons, objs;
    for (int j = 0; j < ni; ++j) {
        cons.push_back(static_cast<VertexId>(roles.size()));
        roles.push_back(Role::Constraint);
    }
    for (int j = 0; j < nk; ++j) {
        objs.push_back(static_cast<VertexId>(roles.size()));
        roles.push_back(Role::Objective);
    }

    // capacity-respecting assignment; the first nk agents cover every objective
    auto assign = [&](const std::vector<VertexId>& side, int cap) {
        std::vector<VertexId> pick(static_cast<std::size_t>(na));
        std::vector<int> load(side.size(), 0);
        std::vector<int> order(static_cast<std::size_t>(na));
        for (int j = 0; j < na; ++j) order[static_cast<std::size_t>(j)] = j;
        std::shuffle(order.begin(), order.end(), rng);
        for (int idx = 0; idx < na; ++idx) {
            int agent = order[static_cast<std::size_t>(idx)];
            if (idx < static_cast<int>(side.size())) {
                pick[static_cast<std::size_t>(agent)] = side[static_cast<std::size_t>(idx)];
                load[static_cast<std::size_t>(idx)]++;
                continue;
            }
            for (;;) {
                std::size_t s = rng() % side.size();
                if (load[s] < cap) {
                    pick[static_cast<std::size_t>(agent)] = side[s];
                    load[s]++;
                    break;
                }
            }
        }
        return pick;
    };
    auto agent_con = assign(cons, delta_i);
    auto agent_obj = assign(objs, delta_k);

    auto coeff = [&](bool allow_zero) {
        long den = uniform(1, 8);
        long num = uniform(allow_zero ? 0 : 1, static_cast<int>(4 * den));
        return Rational(num, den);
    };
    std::vector<RawEdge> raw;
    for (int j = 0; j < na; ++j) {
        raw.push_back({static_cast<VertexId>(j), agent_con[static_cast<std::size_t>(j)], coeff(false)});
        raw.push_back({static_cast<VertexId>(j), agent_obj[static_cast<std::size_t>(j)], coeff(true)});
    }
    return make_instance(std::move(roles), raw, IdMode::PortNumbering, delta_i, delta_k, &rng);
}

/// Small general (not necessarily bipartite) instance for solver tests.
/// Every agent has at least one positively-weighted constraint, so the
/// optimum is finite.
inline MaxMinInstance random_general_small(std::mt19937_64& rng) {
    auto uniform = [&rng](int lo, int hi) {
        return lo + static_cast<int>(rng() % static_cast<std::uint64_t>(hi - lo + 1));
    };
    int na = uniform(1, 6), ni = uniform(1, 3), nk = uniform(1, 3);
    std::vector<Role> roles;
    for (int j = 0; j < na; ++j) roles.push_back(Role::Agent);
    for (int j = 0; j < ni; ++j) roles.push_back(Role::Constraint);
    for (int j = 0; j < nk; ++j) roles.push_back(Role::Objective);
    auto coeff = [&](bool allow_zero) {
        long den = uniform(1, 6);
        long num = uniform(allow_zero ? 0 : 1, static_cast<int>(3 * den));
        return Rational(num, den);
    };
    std::vector<RawEdge> raw;
    for (int j = 0; j < na; ++j) {
        VertexId a = static_cast<VertexId>(j);
        int anchor = uniform(0, ni - 1);
        for (int i = 0; i < ni; ++i)
            if (i == anchor || uniform(0, 2) == 0)
                raw.push_back({a, static_cast<VertexId>(na + i), coeff(i != anchor)});
        for (int k = 0; k < nk; ++k)
            if (uniform(0, 2) == 0)
                raw.push_back({a, static_cast<VertexId>(na + ni + k), coeff(true)});
    }
    return make_instance(std::move(roles), raw, IdMode::PortNumbering);
}

/// Grid-refinement brute-force oracle (floating point, independent of the
/// exact solver): scans a shrinking box around the incumbent with a coarse
/// grid per level. Suitable for small instances; final value is within about
/// `granularity` of the optimum on the instances it is used for.
inline double grid_refine_opt(const MaxMinInstance& inst, double granularity = 1e-4) {
    const auto& agents = inst.agents();
    const std::size_t n = agents.size();
    struct Row {
        std::vector<std::pair<std::size_t, double>> terms;
    };
    std::vector<std::size_t> idx_of(inst.vertex_count(), 0);
    for (std::size_t j = 0; j < n; ++j) idx_of[agents[j]] = j;
    std::vector<Row> rows, utils;
    for (VertexId i : inst.constraints()) {
        Row r;
        for (const auto& h : inst.neighbors(i))
            if (inst.role(h.to) == Role::Agent && !h.coeff.is_zero())
                r.terms.push_back({idx_of[h.to], h.coeff.to_double()});
        rows.push_back(std::move(r));
    }
    for (VertexId k : inst.objectives()) {
        Row r;
        for (const auto& h : inst.neighbors(k))
            if (inst.role(h.to) == Role::Agent && !h.coeff.is_zero())
                r.terms.push_back({idx_of[h.to], h.coeff.to_double()});
        utils.push_back(std::move(r));
    }

    std::vector<double> ub(n, 1.0);
    for (std::size_t j = 0; j < n; ++j) {
        double cap = std::numeric_limits<double>::infinity();
        for (const Row& r : rows)
            for (auto [jj, a] : r.terms)
                if (jj == j) cap = std::min(cap, 1.0 / a);
        ub[j] = std::isfinite(cap) ? cap : 1.0;
    }

    auto feasible = [&](const std::vector<double>& x) {
        for (const Row& r : rows) {
            double s = 0;
            for (auto [j, a] : r.terms) s += a * x[j];
            if (s > 1.0 + 1e-12) return false;
        }
        return true;
    };
    auto value = [&](const std::vector<double>& x) {
        double best = std::numeric_limits<double>::infinity();
        for (const Row& r : utils) {
            double s = 0;
            for (auto [j, c] : r.terms) s += c * x[j];
            best = std::min(best, s);
        }
        return best;
    };

    double scale_max = 0;
    for (std::size_t j = 0; j < n; ++j) scale_max = std::max(scale_max, ub[j]);
    const int grid = n > 6 ? 4 : 5;
    const std::size_t keep = n > 6 ? 2 : 4;  // incumbents tracked per level

    struct Cand {
        std::vector<double> x;
        double v;
    };
    std::vector<Cand> cands{{std::vector<double>(n, 0.0), 0.0}};
    cands[0].v = value(cands[0].x);
    std::vector<double> x(n);

    // shrink boxes around a few diverse incumbents; coordinate and exchange
    // polish keep flat or coupled directions from trapping the zoom
    bool first_level = true;
    for (double t = 1.0; t * scale_max > granularity / 8; t *= 0.7) {
        std::vector<Cand> found = cands;
        // a denser one-off scan of the whole box picks the right basins
        const int level_grid = first_level && n <= 6 ? 10 : grid;
        first_level = false;
        for (const Cand& center : cands) {
            std::vector<double> lo(n), hi(n);
            for (std::size_t j = 0; j < n; ++j) {
                double half = t * ub[j] / 2;
                lo[j] = std::max(0.0, center.x[j] - half);
                hi[j] = std::min(ub[j], lo[j] + 2 * half);
            }
            std::vector<std::size_t> digit(n, 0);
            for (;;) {
                for (std::size_t j = 0; j < n; ++j)
                    x[j] = lo[j] + (hi[j] - lo[j]) * static_cast<double>(digit[j]) /
                                       level_grid;
                if (feasible(x)) found.push_back({x, value(x)});
                std::size_t j = 0;
                while (j < n && ++digit[j] > static_cast<std::size_t>(level_grid))
                    digit[j++] = 0;
                if (j == n) break;
            }
            std::vector<double> base = center.x;
            double base_v = center.v;
            for (int pass = 0; pass < 2; ++pass) {
                for (std::size_t j = 0; j < n; ++j)
                    for (double step : {t * ub[j] / 2, t * ub[j] / 8, t * ub[j] / 32})
                        for (double dir : {1.0, -1.0}) {
                            x = base;
                            x[j] = std::clamp(x[j] + dir * step, 0.0, ub[j]);
                            if (!feasible(x)) continue;
                            if (double v = value(x); v > base_v) {
                                base = x;
                                base_v = v;
                            }
                        }
                for (std::size_t j = 0; j < n; ++j)
                    for (std::size_t j2 = 0; j2 < n; ++j2) {
                        if (j == j2) continue;
                        for (double step :
                             {t * scale_max / 2, t * scale_max / 8, t * scale_max / 32}) {
                            x = base;
                            x[j] = std::clamp(x[j] + step, 0.0, ub[j]);
                            x[j2] = std::clamp(x[j2] - step, 0.0, ub[j2]);
                            if (!feasible(x)) continue;
                            if (double v = value(x); v > base_v) {
                                base = x;
                                base_v = v;
                            }
                        }
                    }
            }
            found.push_back({std::move(base), base_v});
        }
        std::sort(found.begin(), found.end(),
                  [](const Cand& a, const Cand& b) { return a.v > b.v; });
        std::vector<Cand> next;
        for (const Cand& c : found) {
            bool fresh = true;
            for (const Cand& kept : next) {
                double dist = 0;
                for (std::size_t j = 0; j < n; ++j)
                    dist = std::max(dist, std::abs(c.x[j] - kept.x[j]));
                if (dist < t * scale_max / (2 * grid)) fresh = false;
            }
            if (fresh) next.push_back(c);
            if (next.size() >= keep) break;
        }
        cands = std::move(next);
    }
    double best = cands[0].v;
    for (const Cand& c : cands) best = std::max(best, c.v);
    return best;
}

/// Exact check that no single-coordinate increase within feasibility raises
/// the minimum utility (a necessary optimality condition).
inline bool single_coordinate_improves(const MaxMinInstance& inst, const Assignment& x) {
    using maxmin::min_utility;
    Rational base = min_utility(inst, x);
    for (VertexId v : inst.agents()) {
        // largest feasible step along e_v
        bool capped = false;
        Rational step(1);
        for (VertexId i : inst.constraints()) {
            Rational coeff_v(0), row(0);
            for (const auto& h : inst.neighbors(i)) {
                if (inst.role(h.to) != Role::Agent) continue;
                row += h.coeff * x.at(h.to);
                if (h.to == v) coeff_v = h.coeff;
            }
            if (coeff_v.sign() > 0) {
                Rational cand = (Rational(1) - row) / coeff_v;
                if (!capped || cand < step) step = cand;
                capped = true;
            }
        }
        if (step.sign() <= 0) continue;
        Assignment y = x;
        y.set(v, x.at(v) + step);
        if (min_utility(inst, y) > base) return true;
    }
    return false;
}

}  // namespace testsupport
