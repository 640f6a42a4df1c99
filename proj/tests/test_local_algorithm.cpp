#include "maxmin/local_algorithm.hpp"

#include "maxmin/errors.hpp"
#include "support.hpp"

#include <doctest.h>

#include <algorithm>
#include <map>
#include <random>

using namespace maxmin;
using namespace testsupport;

namespace {

// count nodes of a role within tree distance `limit` of node `from`
long count_within(const LocalView& view, int from, int limit, Role role) {
    const auto& nodes = view.nodes();
    std::vector<int> dist(nodes.size(), -1);
    std::vector<int> queue{from};
    dist[static_cast<std::size_t>(from)] = 0;
    long count = 0;
    for (std::size_t qi = 0; qi < queue.size(); ++qi) {
        int x = queue[qi];
        const auto& n = nodes[static_cast<std::size_t>(x)];
        if (n.role == role) ++count;
        if (dist[static_cast<std::size_t>(x)] == limit) continue;
        std::vector<int> nbs = n.children;
        if (n.parent >= 0) nbs.push_back(n.parent);
        for (int y : nbs)
            if (dist[static_cast<std::size_t>(y)] < 0) {
                dist[static_cast<std::size_t>(y)] = dist[static_cast<std::size_t>(x)] + 1;
                queue.push_back(y);
            }
    }
    return count;
}

}  // namespace

TEST_CASE("n(l) counts regularized branchings") {
    AlgoParams p{4, 3, 1};
    CHECK(n_of(0, p) == 0);
    CHECK(n_of(1, p) == 1);
    CHECK(n_of(2, p) == 7);  // 1 + 3*2
    AlgoParams q{3, 3, 1};
    CHECK(n_of(2, q) == 5);
    CHECK(n_of(3, q) == 21);
}

TEST_CASE("region sizes match the closed forms") {
    AlgoParams p{4, 3, 1};
    auto r1 = region_sizes(1, p);
    CHECK(r1.size_kv == 10);
    CHECK(r1.size_ki == 4);
    CHECK(r1.size_boundary == 6);
    CHECK(mpz_class(p.delta_i) * r1.size_boundary == 24);
    auto r0 = region_sizes(0, p);
    CHECK(r0.size_kv == 1);
    CHECK(r0.size_ki == 0);
    CHECK(r0.size_boundary == 1);
    // the boundary is always the difference of the two regions
    for (int di = 2; di <= 4; ++di)
        for (int dk = 2; dk <= 4; ++dk)
            for (int l = 0; l <= 3; ++l) {
                auto rs = region_sizes(l, {di, dk, 0});
                CHECK(rs.size_boundary == rs.size_kv - rs.size_ki);
            }
}

TEST_CASE("averaging factor") {
    CHECK(averaging_factor({4, 3, 1}) == Rational(1, 28));
    CHECK(averaging_factor({3, 3, 1}) == Rational(1, 15));
    for (int di = 2; di <= 5; ++di)
        CHECK(averaging_factor({di, 3, 0}) == Rational(1, di));
}

TEST_CASE("approximation ratio: worked values, both forms, monotone limit") {
    CHECK(approx_ratio({4, 3, 1}) == Rational(14, 5));
    CHECK(approx_ratio({3, 3, 1}) == Rational(15, 7));
    CHECK(approx_ratio({4, 3, 0}) == Rational(4));
    CHECK(approx_ratio({3, 3, 0}) == Rational(3));
    CHECK(approx_ratio_limit({4, 3, 0}) == Rational(8, 3));

    for (int di : {2, 3, 4}) {
        for (int dk : {2, 3, 4}) {
            Rational limit = approx_ratio_limit({di, dk, 0});
            Rational prev = approx_ratio({di, dk, 0});
            for (int l = 1; l <= 5; ++l) {
                AlgoParams p{di, dk, l};
                Rational alpha = approx_ratio(p);
                CHECK(alpha < prev);
                CHECK(alpha > limit);
                prev = alpha;
                // the rewritten closed form, valid for L >= 1
                Rational inner = Rational(dk) + Rational(1) / (Rational(di - 1) * Rational(n_of(l, p)));
                CHECK(alpha == Rational(di) * (Rational(1) - Rational(1) / inner));
            }
        }
    }
}

TEST_CASE("regularization pads an under-full objective with zero-weight agents") {
    auto inst = sensor_instance();
    // k_1 (vertex 12) has a single agent; delta_k = 3 adds two virtual agents
    auto view = local_view(inst, 12, 2, IdMode::PortNumbering);
    auto reg = regularize_view(view, {3, 3, 0});
    const auto& root = reg.node(0);
    CHECK(root.children.size() == 3);
    int virt = 0;
    for (int c : root.children) {
        const auto& child = reg.node(c);
        if (!child.is_virtual) continue;
        ++virt;
        CHECK(child.coeff == Rational(0));
        REQUIRE(child.children.size() == 1);
        const auto& far = reg.node(child.children[0]);
        CHECK(far.is_virtual);
        CHECK(far.role == Role::Constraint);
        CHECK(far.coeff == Rational(1));
    }
    CHECK(virt == 2);
}

TEST_CASE("an already-regular view is unchanged apart from flags") {
    // 12-cycle with pattern agent, constraint, agent, objective: (2,2)-regular
    std::vector<Role> roles;
    std::vector<RawEdge> raw;
    for (int j = 0; j < 12; ++j)
        roles.push_back(j % 4 == 1 ? Role::Constraint
                        : j % 4 == 3 ? Role::Objective
                                     : Role::Agent);
    for (int j = 0; j < 12; ++j)
        raw.push_back({static_cast<VertexId>(j), static_cast<VertexId>((j + 1) % 12), Rational(1)});
    auto inst = make_instance(std::move(roles), raw, IdMode::PortNumbering, 2, 2);
    auto view = local_view(inst, 0, 5);
    auto reg = regularize_view(view, {2, 2, 0});
    CHECK(reg.nodes().size() == view.nodes().size());
    for (const auto& n : reg.nodes()) CHECK(!n.is_virtual);
}

TEST_CASE("padding a lone constraint reproduces the regular tree counts") {
    std::vector<Role> roles{Role::Constraint};
    MaxMinInstance lone(roles, {}, IdMode::PortNumbering);
    auto reg = regularize_view(local_view(lone, 0, 6), {4, 3, 0});
    CHECK(count_within(reg, 0, 6, Role::Objective) == 28);  // 4 + 24
    CHECK(count_within(reg, 0, 2, Role::Objective) == 4);
}

TEST_CASE("counting identities on the regularized tree") {
    auto inst = single_agent_instance();
    for (int di : {2, 3, 4}) {
        for (int dk : {2, 3, 4}) {
            for (int l = 0; l <= 2; ++l) {
                AlgoParams p{di, dk, l};
                auto view = local_view(inst, 0, 4 * l + 1);
                auto reg = regularize_view(view, p);
                auto sizes = region_sizes(l, p);
                CHECK(count_within(reg, 0, 4 * l + 1, Role::Objective) == sizes.size_kv.get_si());
                // the root's constraint neighbour
                int i_node = -1;
                for (int c : reg.node(0).children)
                    if (reg.node(c).role == Role::Constraint) i_node = c;
                REQUIRE(i_node >= 0);
                CHECK(count_within(reg, i_node, 4 * l, Role::Objective) == sizes.size_ki.get_si());
            }
        }
    }
}

TEST_CASE("subproblem at level zero is the star around the objective") {
    auto inst = single_agent_instance();
    AlgoParams p{3, 3, 0};
    auto reg = regularize_view(local_view(inst, 0, p.radius()), p);
    int k_node = -1;
    for (int c : reg.node(0).children)
        if (reg.node(c).role == Role::Objective) k_node = c;
    REQUIRE(k_node >= 0);
    auto sub = build_subproblem(reg, k_node, p);
    CHECK(sub.instance.objectives().size() == 1);
    CHECK(sub.instance.agents().size() == 3);
    CHECK(sub.instance.constraints().size() == 3);
    CHECK(sub.instance.role(0) == Role::Objective);
    CHECK(validate_instance(sub.instance).ok);
    // every leaf is a constraint
    for (VertexId v = 0; v < sub.instance.vertex_count(); ++v)
        if (sub.instance.degree(v) == 1) CHECK(sub.instance.role(v) == Role::Constraint);
    CHECK(sub.root_agent_id >= 0);
    CHECK(sub.instance.role(static_cast<VertexId>(sub.root_agent_id)) == Role::Agent);
}

TEST_CASE("subproblem at level one matches the regular-tree shape") {
    auto inst = single_agent_instance();
    AlgoParams p{4, 3, 1};
    auto reg = regularize_view(local_view(inst, 0, p.radius()), p);
    int k_node = -1;
    for (int c : reg.node(0).children)
        if (reg.node(c).role == Role::Objective) k_node = c;
    REQUIRE(k_node >= 0);
    auto sub = build_subproblem(reg, k_node, p);
    CHECK(sub.instance.agents().size() == 30);       // 3 + 9 + 18
    CHECK(sub.instance.objectives().size() == 10);   // 1 + 9
    CHECK(sub.instance.constraints().size() == 21);  // 3 + 18
    for (VertexId v = 0; v < sub.instance.vertex_count(); ++v)
        if (sub.instance.degree(v) == 1) CHECK(sub.instance.role(v) == Role::Constraint);
}

TEST_CASE("agents sharing an objective build identical subproblem code multisets") {
    std::mt19937_64 rng(31);
    for (int t = 0; t < 6; ++t) {
        auto inst = random_bipartite(rng, 14, 3, 3);
        AlgoParams p{3, 3, 1};
        std::map<VertexId, std::vector<std::string>> codes_of_agent;
        for (VertexId u : inst.agents()) {
            auto reg = regularize_view(local_view(inst, u, p.radius(), IdMode::PortNumbering), p);
            std::vector<std::string> codes;
            for (int idx = 0; idx < static_cast<int>(reg.nodes().size()); ++idx) {
                const auto& n = reg.nodes()[static_cast<std::size_t>(idx)];
                if (n.role != Role::Objective || n.depth > p.gather_radius()) continue;
                codes.push_back(build_subproblem(reg, idx, p).code);
            }
            std::sort(codes.begin(), codes.end());
            codes_of_agent[u] = std::move(codes);
        }
        for (VertexId k : inst.objectives()) {
            std::vector<VertexId> vk;
            for (const auto& h : inst.neighbors(k))
                if (inst.role(h.to) == Role::Agent) vk.push_back(h.to);
            for (std::size_t i = 1; i < vk.size(); ++i)
                CHECK(codes_of_agent[vk[0]] == codes_of_agent[vk[i]]);
        }
    }
}

TEST_CASE("run_local on the sensor instance meets the certified ratio") {
    auto inst = sensor_instance();
    AlgoParams p{3, 3, 1};
    auto x = run_local(inst, p);
    CHECK(check_feasible(inst, x).empty());
    // omega* = 3/5, alpha = 15/7
    Rational floor = Rational(3, 5) / approx_ratio(p);
    CHECK(floor == Rational(7, 25));
    for (VertexId k : inst.objectives()) CHECK(objective_utility(inst, x, k) >= floor);
    CHECK(consistency_check(inst, x, p.radius()).empty());
}

TEST_CASE("run_local is feasible for a single agent at any level") {
    auto inst = single_agent_instance();
    for (int l = 0; l <= 2; ++l) {
        auto x = run_local(inst, {3, 3, l});
        CHECK(check_feasible(inst, x).empty());
        CHECK(x.at(0).sign() > 0);
    }
}

TEST_CASE("run_local rejects unsupported instances") {
    // non-bipartite: one agent on two constraints
    std::vector<Role> roles{Role::Agent, Role::Constraint, Role::Constraint, Role::Objective};
    std::vector<RawEdge> raw{{0, 1, Rational(1)}, {0, 2, Rational(1)}, {0, 3, Rational(1)}};
    auto bad = make_instance(std::move(roles), raw, IdMode::PortNumbering);
    CHECK_THROWS_AS(run_local(bad, AlgoParams{2, 2, 0}), UnsupportedInstanceError);

    auto star = star_instance(4);
    CHECK_THROWS_AS(run_local(star, AlgoParams{3, 3, 0}), UnsupportedInstanceError);
}

TEST_CASE("feasibility and certified ratio on a small random corpus") {
    std::mt19937_64 rng(41);
    for (int t = 0; t < 8; ++t) {
        auto inst = random_bipartite(rng, 12, 3, 3);
        auto opt = solve_max_min(inst);
        REQUIRE(opt.status == SolveStatus::Optimal);
        for (int l : {0, 1}) {
            AlgoParams p{3, 3, l};
            auto x = run_local(inst, p);
            CHECK(check_feasible(inst, x).empty());
            Rational floor = opt.omega / approx_ratio(p);
            for (VertexId k : inst.objectives())
                CHECK(objective_utility(inst, x, k) >= floor);
            CHECK(consistency_check(inst, x, p.radius()).empty());
        }
    }
}

TEST_CASE("safe baseline values and feasibility") {
    auto sensor = sensor_instance();
    auto x = safe_baseline(sensor);
    for (VertexId v : sensor.agents()) CHECK(x.at(v) == Rational(1, 3));
    CHECK(min_utility(sensor, x) == Rational(1, 3));
    CHECK(check_feasible(sensor, x).empty());

    auto star = star_instance(5);
    auto y = safe_baseline(star);
    for (VertexId v : star.agents()) CHECK(y.at(v) == Rational(1, 5));

    std::vector<Role> roles{Role::Agent, Role::Constraint, Role::Objective};
    std::vector<RawEdge> raw{{0, 1, Rational(2)}, {0, 2, Rational(1)}};
    auto heavy = make_instance(std::move(roles), raw, IdMode::PortNumbering);
    CHECK(safe_baseline(heavy).at(0) == Rational(1, 2));

    std::mt19937_64 rng(53);
    for (int t = 0; t < 10; ++t) {
        auto inst = random_bipartite(rng, 20, 4, 3);
        CHECK(check_feasible(inst, safe_baseline(inst)).empty());
    }
}
