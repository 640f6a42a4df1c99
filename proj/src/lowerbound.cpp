#include "maxmin/lowerbound.hpp"

#include "maxmin/errors.hpp"

#include <algorithm>
#include <bit>
#include <deque>
#include <map>
#include <random>
#include <set>
#include <stdexcept>

namespace maxmin {

bool BipartiteGraph::is_biregular(int left_degree, int right_degree) const {
    for (int d : left_degrees())
        if (d != left_degree) return false;
    for (int d : right_degrees())
        if (d != right_degree) return false;
    return true;
}

std::vector<int> BipartiteGraph::left_degrees() const {
    std::vector<int> d(static_cast<std::size_t>(left_count), 0);
    for (const auto& [u, v] : edges) d[static_cast<std::size_t>(u)]++;
    return d;
}

std::vector<int> BipartiteGraph::right_degrees() const {
    std::vector<int> d(static_cast<std::size_t>(right_count), 0);
    for (const auto& [u, v] : edges) d[static_cast<std::size_t>(v)]++;
    return d;
}

namespace {

struct Adjacency {
    // global vertex ids: left 0..nl-1, right nl..nl+nr-1
    std::vector<std::vector<std::pair<int, int>>> nb;  // (neighbour, edge index)
    int n = 0;

    explicit Adjacency(const BipartiteGraph& q) {
        n = q.left_count + q.right_count;
        nb.resize(static_cast<std::size_t>(n));
        for (std::size_t e = 0; e < q.edges.size(); ++e) {
            int u = q.edges[e].first, v = q.left_count + q.edges[e].second;
            nb[static_cast<std::size_t>(u)].push_back({v, static_cast<int>(e)});
            nb[static_cast<std::size_t>(v)].push_back({u, static_cast<int>(e)});
        }
    }
};

}  // namespace

std::optional<int> girth(const BipartiteGraph& q) {
    Adjacency adj(q);
    int best = -1;
    std::vector<int> dist(static_cast<std::size_t>(adj.n));
    std::vector<int> via(static_cast<std::size_t>(adj.n));
    for (int s = 0; s < adj.n; ++s) {
        std::fill(dist.begin(), dist.end(), -1);
        dist[static_cast<std::size_t>(s)] = 0;
        via[static_cast<std::size_t>(s)] = -1;
        std::deque<int> bfs{s};
        while (!bfs.empty()) {
            int x = bfs.front();
            bfs.pop_front();
            if (best > 0 && 2 * dist[static_cast<std::size_t>(x)] + 1 >= best) break;
            for (auto [y, e] : adj.nb[static_cast<std::size_t>(x)]) {
                if (e == via[static_cast<std::size_t>(x)]) continue;
                if (dist[static_cast<std::size_t>(y)] < 0) {
                    dist[static_cast<std::size_t>(y)] = dist[static_cast<std::size_t>(x)] + 1;
                    via[static_cast<std::size_t>(y)] = e;
                    bfs.push_back(y);
                } else {
                    int len = dist[static_cast<std::size_t>(x)] + dist[static_cast<std::size_t>(y)] + 1;
                    if (best < 0 || len < best) best = len;
                }
            }
        }
    }
    if (best < 0) return std::nullopt;
    return best;
}

BipartiteGraph lift(const BipartiteGraph& q, const std::vector<bool>& in_s) {
    if (in_s.size() != q.edges.size())
        throw std::invalid_argument("lift: subset indicator has wrong length");
    BipartiteGraph out;
    out.left_count = 2 * q.left_count;
    out.right_count = 2 * q.right_count;
    out.edges.reserve(2 * q.edges.size());
    for (std::size_t e = 0; e < q.edges.size(); ++e) {
        auto [u, v] = q.edges[e];
        if (in_s[e]) {
            out.edges.push_back({u, v});
            out.edges.push_back({u + q.left_count, v + q.right_count});
        } else {
            out.edges.push_back({u, v + q.right_count});
            out.edges.push_back({u + q.left_count, v});
        }
    }
    return out;
}

// ---------------------------------------------------------------------------
// shortest-cycle machinery for the lift search
// ---------------------------------------------------------------------------

namespace {

using Bits = std::vector<std::uint64_t>;

Bits make_bits(std::size_t n) { return Bits((n + 63) / 64, 0); }
void set_bit(Bits& b, std::size_t i) { b[i / 64] |= std::uint64_t(1) << (i % 64); }
bool test_bit(const Bits& b, std::size_t i) { return (b[i / 64] >> (i % 64)) & 1; }
void xor_into(Bits& a, const Bits& b) {
    for (std::size_t i = 0; i < a.size(); ++i) a[i] ^= b[i];
}
int parity_and(const Bits& a, const Bits& b) {
    std::uint64_t acc = 0;
    for (std::size_t i = 0; i < a.size(); ++i) acc ^= a[i] & b[i];
    return std::popcount(acc) & 1;
}
long popcount(const Bits& a) {
    long c = 0;
    for (std::uint64_t w : a) c += std::popcount(w);
    return c;
}

// all simple cycles of length exactly `len`, as edge bitsets
std::vector<Bits> cycles_of_length(const BipartiteGraph& q, int len, long cap) {
    Adjacency adj(q);
    const std::size_t m = q.edges.size();
    std::set<std::vector<int>> seen;
    std::vector<int> dist(static_cast<std::size_t>(adj.n));

    std::vector<int> path_edges;
    std::vector<bool> on_path(static_cast<std::size_t>(adj.n), false);

    for (std::size_t e0 = 0; e0 < m; ++e0) {
        int u = q.edges[e0].first;
        int v = q.left_count + q.edges[e0].second;
        // distances from v avoiding edge e0
        std::fill(dist.begin(), dist.end(), -1);
        dist[static_cast<std::size_t>(v)] = 0;
        std::deque<int> bfs{v};
        while (!bfs.empty()) {
            int x = bfs.front();
            bfs.pop_front();
            if (dist[static_cast<std::size_t>(x)] >= len - 1) continue;
            for (auto [y, e] : adj.nb[static_cast<std::size_t>(x)]) {
                if (e == static_cast<int>(e0)) continue;
                if (dist[static_cast<std::size_t>(y)] < 0) {
                    dist[static_cast<std::size_t>(y)] = dist[static_cast<std::size_t>(x)] + 1;
                    bfs.push_back(y);
                }
            }
        }
        if (dist[static_cast<std::size_t>(u)] < 0 || dist[static_cast<std::size_t>(u)] > len - 1)
            continue;

        // depth-limited search for simple u->v paths of length len-1 avoiding e0,
        // pruned by the exact distances to v
        path_edges.clear();
        auto dfs = [&](auto&& self, int x, int remaining) -> void {
            if (static_cast<long>(seen.size()) > cap) return;
            if (remaining == 0) {
                if (x == v) {
                    std::vector<int> cyc = path_edges;
                    cyc.push_back(static_cast<int>(e0));
                    std::sort(cyc.begin(), cyc.end());
                    seen.insert(std::move(cyc));
                }
                return;
            }
            for (auto [y, e] : adj.nb[static_cast<std::size_t>(x)]) {
                if (e == static_cast<int>(e0) || on_path[static_cast<std::size_t>(y)]) continue;
                int dy = dist[static_cast<std::size_t>(y)];
                if (dy < 0 || dy > remaining - 1) continue;
                on_path[static_cast<std::size_t>(y)] = true;
                path_edges.push_back(e);
                self(self, y, remaining - 1);
                path_edges.pop_back();
                on_path[static_cast<std::size_t>(y)] = false;
            }
        };
        on_path[static_cast<std::size_t>(u)] = true;
        dfs(dfs, u, len - 1);
        on_path[static_cast<std::size_t>(u)] = false;
    }

    std::vector<Bits> out;
    out.reserve(seen.size());
    for (const auto& cyc : seen) {
        Bits b = make_bits(m);
        for (int e : cyc) set_bit(b, static_cast<std::size_t>(e));
        out.push_back(std::move(b));
    }
    return out;
}

// reduced row echelon form of [M | 1] over GF(2); rows are cycle edge sets.
// On success returns the particular solution (free vars zero) and the pivot
// rows for null-space extraction; on inconsistency returns nullopt.
struct Gf2System {
    std::vector<Bits> pivot_rows;  // fully reduced, one pivot bit each
    std::vector<int> pivot_bits;
    std::vector<int> rhs;
    std::size_t m = 0;
};

std::optional<Gf2System> solve_all_odd(const std::vector<Bits>& cycles, std::size_t m) {
    Gf2System sys;
    sys.m = m;
    for (const Bits& cyc : cycles) {
        Bits row = cyc;
        int rhs = 1;
        for (std::size_t p = 0; p < sys.pivot_rows.size(); ++p)
            if (test_bit(row, static_cast<std::size_t>(sys.pivot_bits[p]))) {
                xor_into(row, sys.pivot_rows[p]);
                rhs ^= sys.rhs[p];
            }
        long pc = popcount(row);
        if (pc == 0) {
            if (rhs) return std::nullopt;  // odd-sized dependency: all-odd impossible
            continue;
        }
        std::size_t pb = 0;
        for (std::size_t w = 0; w < row.size(); ++w)
            if (row[w]) {
                pb = w * 64 + static_cast<std::size_t>(std::countr_zero(row[w]));
                break;
            }
        for (std::size_t p = 0; p < sys.pivot_rows.size(); ++p)
            if (test_bit(sys.pivot_rows[p], pb)) {
                xor_into(sys.pivot_rows[p], row);
                sys.rhs[p] ^= rhs;
            }
        sys.pivot_rows.push_back(std::move(row));
        sys.pivot_bits.push_back(static_cast<int>(pb));
        sys.rhs.push_back(rhs);
    }
    return sys;
}

Bits particular_solution(const Gf2System& sys) {
    Bits sol = make_bits(sys.m);
    for (std::size_t p = 0; p < sys.pivot_rows.size(); ++p)
        if (sys.rhs[p]) set_bit(sol, static_cast<std::size_t>(sys.pivot_bits[p]));
    return sol;
}

std::vector<Bits> null_space_basis(const Gf2System& sys) {
    std::vector<bool> pivot(sys.m, false);
    for (int pb : sys.pivot_bits) pivot[static_cast<std::size_t>(pb)] = true;
    std::vector<Bits> basis;
    for (std::size_t f = 0; f < sys.m; ++f) {
        if (pivot[f]) continue;
        Bits vec = make_bits(sys.m);
        set_bit(vec, f);
        for (std::size_t p = 0; p < sys.pivot_rows.size(); ++p)
            if (test_bit(sys.pivot_rows[p], f))
                set_bit(vec, static_cast<std::size_t>(sys.pivot_bits[p]));
        basis.push_back(std::move(vec));
    }
    return basis;
}

// greedy max-odd hill climb over raw edge flips (used when all-odd is
// impossible at the current level)
std::pair<Bits, long> hill_climb_edges(const std::vector<Bits>& cycles, std::size_t m,
                                       std::mt19937_64& rng, long restarts) {
    const std::size_t nc = cycles.size();
    std::vector<std::vector<int>> edge_cycles(m);
    for (std::size_t ci = 0; ci < nc; ++ci)
        for (std::size_t e = 0; e < m; ++e)
            if (test_bit(cycles[ci], e)) edge_cycles[e].push_back(static_cast<int>(ci));

    Bits best_s = make_bits(m);
    long best_odd = -1;
    std::vector<char> par(nc);
    for (long t = 0; t < restarts; ++t) {
        Bits s = make_bits(m);
        for (auto& w : s) w = rng();
        if (m % 64) s.back() &= (std::uint64_t(1) << (m % 64)) - 1;
        long odd = 0;
        for (std::size_t ci = 0; ci < nc; ++ci) {
            par[ci] = static_cast<char>(parity_and(cycles[ci], s));
            odd += par[ci];
        }
        bool improved = true;
        while (improved) {
            improved = false;
            for (std::size_t e = 0; e < m; ++e) {
                long gain = 0;
                for (int ci : edge_cycles[e]) gain += par[static_cast<std::size_t>(ci)] ? -1 : 1;
                if (gain <= 0) continue;
                s[e / 64] ^= std::uint64_t(1) << (e % 64);
                for (int ci : edge_cycles[e]) par[static_cast<std::size_t>(ci)] ^= 1;
                odd += gain;
                improved = true;
            }
        }
        if (odd > best_odd) {
            best_odd = odd;
            best_s = s;
        }
    }
    return {best_s, best_odd};
}

// within the all-odd solution space, spend the free variables on making as
// many next-length cycles odd as possible
Bits lookahead_optimize(const Gf2System& sys, const std::vector<Bits>& next_cycles,
                        std::mt19937_64& rng, long restarts) {
    Bits base = particular_solution(sys);
    if (next_cycles.empty()) return base;
    std::vector<Bits> basis = null_space_basis(sys);
    if (basis.empty()) return base;

    const std::size_t n2 = next_cycles.size();
    std::vector<Bits> toggles;  // per basis vector: which next-cycle parities flip
    toggles.reserve(basis.size());
    for (const Bits& vec : basis) {
        Bits t = make_bits(n2);
        for (std::size_t ci = 0; ci < n2; ++ci)
            if (parity_and(next_cycles[ci], vec)) set_bit(t, ci);
        toggles.push_back(std::move(t));
    }

    Bits best_s = base;
    long best_odd = -1;
    for (long t = 0; t < restarts; ++t) {
        Bits s = base;
        Bits coeffs = make_bits(basis.size());
        if (t > 0)
            for (auto& w : coeffs) w = rng();
        Bits par = make_bits(n2);
        for (std::size_t i = 0; i < basis.size(); ++i)
            if (test_bit(coeffs, i)) xor_into(s, basis[i]);
        for (std::size_t ci = 0; ci < n2; ++ci)
            if (parity_and(next_cycles[ci], s)) set_bit(par, ci);
        long odd = popcount(par);
        bool improved = true;
        Bits cand = par;
        while (improved) {
            improved = false;
            for (std::size_t i = 0; i < basis.size(); ++i) {
                cand = par;
                xor_into(cand, toggles[i]);
                long c = popcount(cand);
                if (c > odd) {
                    par = cand;
                    odd = c;
                    xor_into(s, basis[i]);
                    improved = true;
                }
            }
        }
        if (odd > best_odd) {
            best_odd = odd;
            best_s = s;
        }
    }
    return best_s;
}

}  // namespace

BipartiteGraph high_girth_biregular(int a, int b, int g, std::uint64_t seed,
                                    const HighGirthOptions& opts) {
    if (a < 2 || b < 2) throw std::invalid_argument("high_girth_biregular: degrees must be >= 2");
    if (g < 4) throw std::invalid_argument("high_girth_biregular: target girth must be >= 4");

    // basis: complete bipartite K_{b,a} — left size b with degree a
    BipartiteGraph q;
    q.left_count = b;
    q.right_count = a;
    for (int u = 0; u < b; ++u)
        for (int v = 0; v < a; ++v) q.edges.push_back({u, v});

    std::mt19937_64 rng(seed);
    long lifts = 0;
    for (;;) {
        auto girth_now = girth(q);
        if (!girth_now || *girth_now >= g) return q;
        if (lifts >= opts.max_lifts)
            throw ResourceError("high_girth_biregular: lift budget exhausted", *girth_now);
        if (2 * (q.left_count + q.right_count) > opts.max_vertices)
            throw ResourceError("high_girth_biregular: vertex budget exhausted", *girth_now);

        const std::size_t m = q.edges.size();
        std::vector<Bits> level = cycles_of_length(q, *girth_now, opts.max_cycles);
        if (static_cast<long>(level.size()) > opts.max_cycles)
            throw ResourceError("high_girth_biregular: cycle budget exhausted", *girth_now);

        Bits chosen;
        auto sys = solve_all_odd(level, m);
        if (sys) {
            std::vector<Bits> next = cycles_of_length(q, *girth_now + 2, opts.max_cycles);
            if (static_cast<long>(next.size()) > opts.max_cycles) next.clear();
            chosen = lookahead_optimize(*sys, next, rng, opts.restarts_per_level);
        } else {
            auto [s, odd] = hill_climb_edges(level, m, rng, opts.restarts_per_level);
            long new_count = 2 * (static_cast<long>(level.size()) - odd);
            if (new_count >= static_cast<long>(level.size()))
                throw ResourceError("high_girth_biregular: no strictly improving lift found",
                                    *girth_now);
            chosen = s;
        }

        std::vector<bool> in_s(m);
        for (std::size_t e = 0; e < m; ++e) in_s[e] = test_bit(chosen, e);
        q = lift(q, in_s);
        ++lifts;
    }
}

// ---------------------------------------------------------------------------
// instance constructions
// ---------------------------------------------------------------------------

void LowerBoundParams::check() const {
    if (d_i < 2 || d_k < 2) throw std::invalid_argument("lower-bound params: degrees must be >= 2");
    if (s < 0) throw std::invalid_argument("lower-bound params: s must be >= 0");
    if (r <= 0 || r % 4 != 0)
        throw std::invalid_argument("lower-bound params: r must be a positive multiple of 4");
}

LowerBoundInstance build_S(const BipartiteGraph& q, const LowerBoundParams& params,
                           GirthCheck girth_check) {
    params.check();
    if (!q.is_biregular(params.d_i, params.d_k))
        throw std::invalid_argument("build_S: skeleton is not (d_i, d_k)-biregular");
    if (girth_check == GirthCheck::Require) {
        auto gq = girth(q);
        if (gq && *gq < params.required_girth())
            throw ConstructionError("build_S: skeleton girth " + std::to_string(*gq) +
                                    " is below the required " +
                                    std::to_string(params.required_girth()));
    }

    const int s = params.s;
    std::vector<Role> roles;
    for (int i = 0; i < q.left_count; ++i) roles.push_back(Role::Constraint);
    for (int k = 0; k < q.right_count; ++k) roles.push_back(Role::Objective);

    struct RawEdge {
        VertexId u, v;
        Rational coeff;
    };
    std::vector<RawEdge> raw;
    const Rational path_c(params.d_k - 1);
    for (const auto& [qi, qk] : q.edges) {
        VertexId left = static_cast<VertexId>(qi);
        VertexId right = static_cast<VertexId>(q.left_count + qk);
        // path: constraint, s x (agent, objective, agent, constraint), agent, objective
        VertexId prev = left;
        for (int t = 0; t < s; ++t) {
            VertexId agent1 = static_cast<VertexId>(roles.size());
            roles.push_back(Role::Agent);
            raw.push_back({prev, agent1, Rational(1)});  // a = 1
            VertexId obj = static_cast<VertexId>(roles.size());
            roles.push_back(Role::Objective);
            raw.push_back({agent1, obj, path_c});  // c = d_k - 1
            VertexId agent2 = static_cast<VertexId>(roles.size());
            roles.push_back(Role::Agent);
            raw.push_back({obj, agent2, path_c});
            VertexId con = static_cast<VertexId>(roles.size());
            roles.push_back(Role::Constraint);
            raw.push_back({agent2, con, Rational(1)});
            prev = con;
        }
        VertexId last = static_cast<VertexId>(roles.size());
        roles.push_back(Role::Agent);
        raw.push_back({prev, last, Rational(1)});
        raw.push_back({last, right, Rational(1)});  // c = 1 at the original objective
    }

    // ports: each vertex numbers its incident edges 1..deg by neighbour id
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
        for (std::size_t i = 0; i < incident[v].size(); ++i) {
            auto [nbv, e] = incident[v][i];
            if (edges[e].u == static_cast<VertexId>(v)) edges[e].port_u = static_cast<int>(i) + 1;
            else edges[e].port_v = static_cast<int>(i) + 1;
        }
    }

    LowerBoundInstance out{
        MaxMinInstance(std::move(roles), edges, IdMode::UniqueIds, params.d_i, params.d_k),
        {},
        {},
        params};
    for (int i = 0; i < q.left_count; ++i)
        out.original_constraints.push_back(static_cast<VertexId>(i));
    for (int k = 0; k < q.right_count; ++k)
        out.original_objectives.push_back(static_cast<VertexId>(q.left_count + k));
    return out;
}

Rational utility_upper_bound(int d_i, int d_k, int s) {
    if (d_i < 2 || d_k < 2) throw std::invalid_argument("utility_upper_bound: degrees must be >= 2");
    if (s < 0) throw std::invalid_argument("utility_upper_bound: s must be >= 0");
    Rational num(static_cast<long>(d_k) - 1 + static_cast<long>(d_k) * d_i * s -
                 static_cast<long>(d_i) * s);
    Rational den(static_cast<long>(d_k) - 1 + static_cast<long>(d_k) * s);
    return Rational(d_k, d_i) * num / den;
}

SkInstance build_Sk(const LowerBoundInstance& s, VertexId k, const LowerBoundParams& params) {
    params.check();
    if (std::find(s.original_objectives.begin(), s.original_objectives.end(), k) ==
        s.original_objectives.end())
        throw std::domain_error("build_Sk: k is not an original objective of S");

    const MaxMinInstance& inst = s.instance;
    const int radius = 4 * params.s + 2 + params.r;

    std::map<VertexId, int> dist;
    dist[k] = 0;
    std::deque<VertexId> bfs{k};
    while (!bfs.empty()) {
        VertexId x = bfs.front();
        bfs.pop_front();
        if (dist[x] >= radius) continue;
        for (const auto& h : inst.neighbors(x))
            if (!dist.count(h.to)) {
                dist[h.to] = dist[x] + 1;
                bfs.push_back(h.to);
            }
    }

    std::vector<VertexId> ball;
    for (const auto& [v, d] : dist) ball.push_back(v);
    std::sort(ball.begin(), ball.end());
    std::map<VertexId, VertexId> new_id;
    for (std::size_t i = 0; i < ball.size(); ++i) new_id[ball[i]] = static_cast<VertexId>(i);

    std::vector<Role> roles(ball.size());
    for (std::size_t i = 0; i < ball.size(); ++i) roles[i] = inst.role(ball[i]);

    std::vector<EdgeSpec> edges;
    for (const auto& e : inst.edges()) {
        if (!dist.count(e.u) || !dist.count(e.v)) continue;
        edges.push_back({new_id.at(e.u), new_id.at(e.v), e.port_u, e.port_v, e.coeff});
    }
    if (edges.size() + 1 != ball.size())
        throw ConstructionError("build_Sk: the ball around k contains a cycle (girth violated)");

    // boundary constraints lose their far edges; re-rank only their ports
    // (they sit outside every radius-r view of the agents adjacent to k)
    std::vector<std::vector<int>> kept_ports(ball.size());
    for (const auto& e : edges) {
        kept_ports[e.u].push_back(e.port_u);
        kept_ports[e.v].push_back(e.port_v);
    }
    for (std::size_t v = 0; v < ball.size(); ++v) {
        int full_degree = inst.degree(ball[v]);
        if (static_cast<int>(kept_ports[v].size()) == full_degree) continue;
        if (roles[v] != Role::Constraint)
            throw ConstructionError("build_Sk: a non-constraint leaf appeared at the boundary");
        std::sort(kept_ports[v].begin(), kept_ports[v].end());
        std::map<int, int> rank;
        for (std::size_t i = 0; i < kept_ports[v].size(); ++i)
            rank[kept_ports[v][i]] = static_cast<int>(i) + 1;
        for (auto& e : edges) {
            if (e.u == static_cast<VertexId>(v)) e.port_u = rank.at(e.port_u);
            if (e.v == static_cast<VertexId>(v)) e.port_v = rank.at(e.port_v);
        }
    }

    SkInstance out{
        MaxMinInstance(std::move(roles), edges, IdMode::UniqueIds, params.d_i, params.d_k),
        new_id.at(k),
        ball,
        params};
    return out;
}

Assignment appendix_solution(const SkInstance& sk) {
    const MaxMinInstance& inst = sk.instance;
    const long d = std::max(static_cast<long>(sk.params.d_i), static_cast<long>(sk.params.d_k) + 1);

    std::map<VertexId, int> dist;
    dist[sk.root_objective] = 0;
    std::deque<VertexId> bfs{sk.root_objective};
    while (!bfs.empty()) {
        VertexId x = bfs.front();
        bfs.pop_front();
        for (const auto& h : inst.neighbors(x))
            if (!dist.count(h.to)) {
                dist[h.to] = dist[x] + 1;
                bfs.push_back(h.to);
            }
    }

    Assignment out(inst);
    for (VertexId v : inst.agents()) {
        auto it = dist.find(v);
        if (it == dist.end()) throw ConstructionError("appendix_solution: disconnected agent");
        int dv = it->second;
        if (dv % 4 == 1) {
            unsigned long j = static_cast<unsigned long>((dv - 1) / 4);
            // 1 - 1/D^(2j+1)
            out.set(v, Rational(1) - rational_power_fraction(1, d, 2 * j + 1));
        } else if (dv % 4 == 3) {
            unsigned long j = static_cast<unsigned long>((dv - 3) / 4);
            out.set(v, rational_power_fraction(1, d, 2 * j + 2));
        } else {
            throw ConstructionError("appendix_solution: agent at even distance from the root");
        }
    }
    return out;
}

Rational relative_growth(const MaxMinInstance& inst, int big_r) {
    if (big_r < 1) throw std::invalid_argument("relative_growth: radius must be >= 1");
    const std::size_t n = inst.vertex_count();
    Rational best(1);
    std::vector<int> dist(n);
    for (VertexId v : inst.agents()) {
        std::fill(dist.begin(), dist.end(), -1);
        dist[v] = 0;
        std::deque<VertexId> bfs{v};
        int ecc = 0;
        while (!bfs.empty()) {
            VertexId x = bfs.front();
            bfs.pop_front();
            for (const auto& h : inst.neighbors(x))
                if (dist[h.to] < 0) {
                    dist[h.to] = dist[x] + 1;
                    ecc = std::max(ecc, dist[h.to]);
                    bfs.push_back(h.to);
                }
        }
        std::vector<long> agents_within(static_cast<std::size_t>(ecc) + 1, 0);
        for (VertexId u : inst.agents())
            if (dist[u] >= 0) agents_within[static_cast<std::size_t>(dist[u])]++;
        for (std::size_t d = 1; d < agents_within.size(); ++d) agents_within[d] += agents_within[d - 1];
        auto count_at = [&](int r) {
            if (r < 0) return 0L;
            std::size_t idx = std::min<std::size_t>(static_cast<std::size_t>(r), agents_within.size() - 1);
            return agents_within[idx];
        };
        for (int r = big_r; r <= std::max(big_r, ecc); ++r) {
            long denom = count_at(r);
            if (denom == 0) continue;
            Rational ratio(count_at(r + 2), denom);
            if (ratio > best) best = ratio;
        }
    }
    return best;
}

Rational growth_bound(int j, int s) {
    if (j < 1) throw std::invalid_argument("growth_bound: j must be >= 1");
    if (s < 0) throw std::invalid_argument("growth_bound: s must be >= 0");
    mpz_class pow2;
    mpz_ui_pow_ui(pow2.get_mpz_t(), 2, static_cast<unsigned long>(j));
    return Rational(1) + Rational(pow2, (pow2 - 1) * (2 * s + 1));
}

}  // namespace maxmin
