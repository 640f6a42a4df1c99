#include "maxmin/local_algorithm.hpp"

#include "maxmin/errors.hpp"

#include <algorithm>
#include <deque>
#include <map>
#include <stdexcept>

namespace maxmin {

void AlgoParams::check() const {
    if (delta_i < 2 || delta_k < 2)
        throw std::invalid_argument("algo params: degree bounds must be >= 2");
    if (level < 0) throw std::invalid_argument("algo params: level must be >= 0");
}

mpz_class n_of(int l, const AlgoParams& p) {
    if (l < 0) throw std::invalid_argument("n_of: negative level");
    mpz_class step = mpz_class(p.delta_i - 1) * mpz_class(p.delta_k - 1);
    mpz_class sum = 0, term = 1;
    for (int j = 0; j < l; ++j) {
        sum += term;
        term *= step;
    }
    return sum;
}

RegionSizes region_sizes(int l, const AlgoParams& p) {
    p.check();
    mpz_class n = n_of(l, p);
    RegionSizes out;
    out.size_kv = 1 + mpz_class(p.delta_i - 1) * p.delta_k * n;
    out.size_ki = mpz_class(p.delta_i) * n;
    out.size_boundary = 1 + mpz_class(p.delta_i * p.delta_k - p.delta_i - p.delta_k) * n;
    return out;
}

Rational averaging_factor(const AlgoParams& p) {
    p.check();
    mpz_class denom =
        p.delta_i + mpz_class(p.delta_i) * (p.delta_i - 1) * (p.delta_k - 1) * n_of(p.level, p);
    return Rational(mpz_class(1), denom);
}

Rational approx_ratio(const AlgoParams& p) {
    p.check();
    mpz_class count = 1 + mpz_class(p.delta_i - 1) * p.delta_k * n_of(p.level, p);
    return Rational(1) / (averaging_factor(p) * Rational(count));
}

Rational approx_ratio_limit(const AlgoParams& p) {
    p.check();
    return Rational(p.delta_i) * (Rational(1) - Rational(1, p.delta_k));
}

namespace {

int used_port_max(const std::vector<ViewNode>& nodes, int idx) {
    const ViewNode& n = nodes[static_cast<std::size_t>(idx)];
    int mx = n.parent >= 0 ? n.port_here : 0;
    for (int c : n.children)
        mx = std::max(mx, nodes[static_cast<std::size_t>(c)].port_at_parent);
    return mx;
}

}  // namespace

LocalView regularize_view(const LocalView& view, const AlgoParams& p) {
    p.check();
    std::vector<ViewNode> nodes = view.nodes();
    const int radius = view.radius();

    std::deque<int> queue;
    for (int i = 0; i < static_cast<int>(nodes.size()); ++i) queue.push_back(i);

    auto agent_neighbour_count = [&nodes](int idx) {
        const ViewNode& n = nodes[static_cast<std::size_t>(idx)];
        int cnt = static_cast<int>(n.children.size());
        if (n.parent >= 0) ++cnt;  // the parent of a constraint/objective is an agent
        return cnt;
    };

    while (!queue.empty()) {
        int idx = queue.front();
        queue.pop_front();
        ViewNode node = nodes[static_cast<std::size_t>(idx)];
        if (node.role == Role::Agent) {
            int ni = 0, nk = 0;
            if (node.parent >= 0) {
                Role pr = nodes[static_cast<std::size_t>(node.parent)].role;
                (pr == Role::Constraint ? ni : nk)++;
            }
            for (int c : node.children) {
                Role cr = nodes[static_cast<std::size_t>(c)].role;
                (cr == Role::Constraint ? ni : nk)++;
            }
            if (ni > 1 || nk > 1)
                throw UnsupportedInstanceError(
                    "regularize_view: agent with multiple constraints or objectives "
                    "(not a bipartite max-min LP)");
            continue;
        }
        const bool is_constraint = node.role == Role::Constraint;
        const int target = is_constraint ? p.delta_i : p.delta_k;
        const int have = agent_neighbour_count(idx);
        if (have > target)
            throw UnsupportedInstanceError("regularize_view: degree exceeds declared bound");
        if (node.depth >= radius) continue;  // virtual trees stop at the horizon
        int next_port = used_port_max(nodes, idx) + 1;
        for (int t = have; t < target; ++t) {
            // padding agent: coefficient 0 toward this node, bounded on the far side
            int agent_idx = static_cast<int>(nodes.size());
            nodes.push_back({Role::Agent, idx, node.depth + 1, next_port++, 1, Rational(0),
                             true, {}});
            nodes[static_cast<std::size_t>(idx)].children.push_back(agent_idx);
            if (node.depth + 2 <= radius) {
                int far_idx = static_cast<int>(nodes.size());
                Role far_role = is_constraint ? Role::Objective : Role::Constraint;
                nodes.push_back({far_role, agent_idx, node.depth + 2, 2, 1, Rational(1), true, {}});
                nodes[static_cast<std::size_t>(agent_idx)].children.push_back(far_idx);
                queue.push_back(far_idx);  // grows its own padding recursively
            }
        }
    }

    return LocalView(std::move(nodes), {}, radius, IdMode::PortNumbering);
}

namespace {

struct TreeArc {
    int port_here;   // port at the current node
    int port_there;  // port at the neighbour
    int neighbour;   // view node index
    const Rational* coeff;
};

// tree neighbours of a view node, ordered by the port at the node itself
std::vector<TreeArc> tree_arcs(const std::vector<ViewNode>& nodes, int idx) {
    const ViewNode& n = nodes[static_cast<std::size_t>(idx)];
    std::vector<TreeArc> arcs;
    if (n.parent >= 0) arcs.push_back({n.port_here, n.port_at_parent, n.parent, &n.coeff});
    for (int c : n.children) {
        const ViewNode& ch = nodes[static_cast<std::size_t>(c)];
        arcs.push_back({ch.port_at_parent, ch.port_here, c, &ch.coeff});
    }
    std::sort(arcs.begin(), arcs.end(),
              [](const TreeArc& a, const TreeArc& b) { return a.port_here < b.port_here; });
    return arcs;
}

struct BallBuilder {
    const std::vector<ViewNode>& nodes;
    int max_depth;
    std::vector<Role> roles;
    std::vector<int> view_node_of;
    std::vector<EdgeSpec> edges;    // ports hold the originals until compression
    std::vector<std::vector<int>> port_values;  // original ports seen per new vertex
    std::string code;

    int visit(int idx, int came_from, int depth) {
        int id = static_cast<int>(roles.size());
        roles.push_back(nodes[static_cast<std::size_t>(idx)].role);
        view_node_of.push_back(idx);
        port_values.emplace_back();
        switch (roles.back()) {
            case Role::Agent: code += 'V'; break;
            case Role::Constraint: code += 'I'; break;
            case Role::Objective: code += 'K'; break;
        }
        code += '(';
        if (depth < max_depth) {
            for (const TreeArc& arc : tree_arcs(nodes, idx)) {
                if (arc.neighbour == came_from) continue;
                code += std::to_string(arc.port_here);
                code += ',';
                code += std::to_string(arc.port_there);
                code += ',';
                code += arc.coeff->str();
                code += ':';
                int child_id = visit(arc.neighbour, idx, depth + 1);
                edges.push_back({static_cast<VertexId>(id), static_cast<VertexId>(child_id),
                                 arc.port_here, arc.port_there, *arc.coeff});
                port_values[static_cast<std::size_t>(id)].push_back(arc.port_here);
                port_values[static_cast<std::size_t>(child_id)].push_back(arc.port_there);
                code += ';';
            }
        }
        code += ')';
        return id;
    }
};

}  // namespace

Subproblem build_subproblem(const LocalView& reg_view, int k_node, const AlgoParams& p) {
    p.check();
    const auto& nodes = reg_view.nodes();
    if (k_node < 0 || k_node >= static_cast<int>(nodes.size()))
        throw std::domain_error("build_subproblem: no such view node");
    if (nodes[static_cast<std::size_t>(k_node)].role != Role::Objective)
        throw std::domain_error("build_subproblem: node is not an objective");
    if (nodes[static_cast<std::size_t>(k_node)].depth > p.gather_radius())
        throw std::domain_error("build_subproblem: objective outside the gather region");

    BallBuilder b{nodes, p.subproblem_radius(), {}, {}, {}, {}, {}};
    b.visit(k_node, -1, 0);

    // compress ports per vertex to 1..deg, preserving the original order
    std::vector<std::map<int, int>> rank(b.roles.size());
    for (std::size_t v = 0; v < b.roles.size(); ++v) {
        std::vector<int> ports = b.port_values[v];
        std::sort(ports.begin(), ports.end());
        for (std::size_t i = 0; i < ports.size(); ++i)
            rank[v][ports[i]] = static_cast<int>(i) + 1;
    }
    for (auto& e : b.edges) {
        e.port_u = rank[e.u].at(e.port_u);
        e.port_v = rank[e.v].at(e.port_v);
    }

    int root_agent = -1;
    for (std::size_t v = 0; v < b.view_node_of.size(); ++v)
        if (b.view_node_of[v] == reg_view.root()) root_agent = static_cast<int>(v);
    if (root_agent < 0)
        throw std::logic_error("build_subproblem: view root fell outside the ball");

    MaxMinInstance inst(std::move(b.roles), b.edges, IdMode::PortNumbering, p.delta_i,
                        p.delta_k);
    return Subproblem{std::move(inst), std::move(b.view_node_of), root_agent,
                      std::move(b.code)};
}

Assignment run_local(const MaxMinInstance& inst, const AlgoParams& p) {
    p.check();
    if (!inst.is_bipartite_max_min())
        throw UnsupportedInstanceError("run_local: instance is not a bipartite max-min LP");
    if (inst.max_constraint_degree() > p.delta_i || inst.max_objective_degree() > p.delta_k)
        throw UnsupportedInstanceError("run_local: instance exceeds the declared degree bounds");

    const Rational q = averaging_factor(p);
    Assignment out(inst);
    std::map<std::string, std::vector<Rational>> memo;  // canonical subproblem -> primal

    for (VertexId u : inst.agents()) {
        LocalView view = local_view(inst, u, p.radius(), IdMode::PortNumbering);
        LocalView reg = regularize_view(view, p);
        Rational sum(0);
        const auto& nodes = reg.nodes();
        for (int idx = 0; idx < static_cast<int>(nodes.size()); ++idx) {
            const ViewNode& n = nodes[static_cast<std::size_t>(idx)];
            if (n.role != Role::Objective || n.depth > p.gather_radius()) continue;
            Subproblem sub = build_subproblem(reg, idx, p);
            auto it = memo.find(sub.code);
            if (it == memo.end()) {
                MaxMinResult sol = solve_max_min(sub.instance);
                if (sol.status != SolveStatus::Optimal)
                    throw UnsupportedInstanceError(
                        "run_local: subproblem has unbounded utility (an objective with no "
                        "positively-weighted constraint in reach)");
                std::vector<Rational> primal(sub.instance.vertex_count(), Rational(0));
                for (const auto& [v, val] : sol.x.values())
                    primal[v] = val;
                it = memo.emplace(sub.code, std::move(primal)).first;
            }
            sum += it->second[static_cast<std::size_t>(sub.root_agent_id)];
        }
        out.set(u, q * sum);
    }
    return out;
}

Assignment safe_baseline(const MaxMinInstance& inst) {
    Assignment out(inst);
    for (VertexId v : inst.agents()) {
        bool found = false;
        Rational best(0);
        for (const auto& h : inst.neighbors(v)) {
            if (inst.role(h.to) != Role::Constraint || h.coeff.sign() <= 0) continue;
            Rational cand = Rational(1) / (Rational(inst.degree(h.to)) * h.coeff);
            if (!found || cand < best) best = cand;
            found = true;
        }
        if (!found) {
            // no positively-weighted constraint: bound by the objective side instead
            for (const auto& h : inst.neighbors(v)) {
                if (inst.role(h.to) != Role::Objective || h.coeff.sign() <= 0) continue;
                Rational cand = Rational(1) / (Rational(inst.degree(h.to)) * h.coeff);
                if (!found || cand < best) best = cand;
                found = true;
            }
        }
        out.set(v, found ? best : Rational(0));
    }
    return out;
}

}  // namespace maxmin
