// Command-line front end: exact solves, local-algorithm runs, lower-bound
// instance generation, and re-verification of generated experiment
// directories. All randomness flows from --seed; identical command lines
// produce byte-identical outputs.

#include "maxmin/errors.hpp"
#include "maxmin/instance.hpp"
#include "maxmin/io.hpp"
#include "maxmin/local_algorithm.hpp"
#include "maxmin/lowerbound.hpp"
#include "maxmin/lp.hpp"
#include "maxmin/view.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <set>
#include <sstream>

namespace fs = std::filesystem;
using nlohmann::json;
using namespace maxmin;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitInput = 2;
constexpr int kExitUnsupported = 3;
constexpr int kExitVerification = 4;
constexpr int kExitResource = 5;

struct CliError {
    int code;
    std::string message;
};

std::string read_file(const fs::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw CliError{kExitInput, "cannot open " + path.string()};
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

void write_file(const fs::path& path, const std::string& text) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw CliError{kExitInput, "cannot write " + path.string()};
    out << text;
}

MaxMinInstance load_instance(const fs::path& path) {
    auto inst = decode_instance(read_file(path));
    auto report = validate_instance(inst);
    if (!report.ok) {
        std::string msg = path.string() + " failed validation:";
        for (const auto& v : report.violations)
            msg += "\n  [" + v.kind + "] " + v.where + ": " + v.message;
        throw CliError{kExitInput, msg};
    }
    return inst;
}

std::string show(const Rational& r) { return r.str() + " (~" + r.decimal(6) + ")"; }

// ------------------------------------------------------------------ solve

int cmd_solve(const std::string& path, bool as_json) {
    auto inst = load_instance(path);
    auto sol = solve_max_min(inst);
    if (sol.status == SolveStatus::Unbounded) {
        if (as_json) std::cout << json{{"status", "unbounded"}}.dump(2) << "\n";
        else std::cout << "status = unbounded (an objective has no binding constraint)\n";
        return kExitOk;
    }
    if (as_json) {
        json jx = json::object();
        for (const auto& [v, val] : sol.x.values()) jx[std::to_string(v)] = val.str();
        json doc{{"status", "optimal"},
                 {"omega", sol.omega.str()},
                 {"omega_decimal", sol.omega.decimal(6)},
                 {"x", jx},
                 {"pivots", sol.pivots}};
        std::cout << doc.dump(2) << "\n";
    } else {
        std::cout << "omega = " << show(sol.omega) << "\n";
        for (const auto& [v, val] : sol.x.values())
            std::cout << "x[" << v << "] = " << show(val) << "\n";
        std::cout << "pivots = " << sol.pivots << "\n";
    }
    return kExitOk;
}

// -------------------------------------------------------------- run-local

int cmd_run_local(const std::string& path, int delta_i, int delta_k, int level,
                  const std::string& emit_dir, bool as_json) {
    auto inst = load_instance(path);
    AlgoParams params{delta_i, delta_k, level};
    Assignment x = [&] {
        try {
            return run_local(inst, params);
        } catch (const UnsupportedInstanceError& e) {
            throw CliError{kExitUnsupported, e.what()};
        }
    }();

    if (!emit_dir.empty()) {
        fs::create_directories(emit_dir);
        std::set<std::string> seen;
        int index = 0;
        for (VertexId u : inst.agents()) {
            auto reg = regularize_view(local_view(inst, u, params.radius(),
                                                  IdMode::PortNumbering),
                                       params);
            for (int idx = 0; idx < static_cast<int>(reg.nodes().size()); ++idx) {
                const auto& node = reg.nodes()[static_cast<std::size_t>(idx)];
                if (node.role != Role::Objective || node.depth > params.gather_radius())
                    continue;
                auto sub = build_subproblem(reg, idx, params);
                if (!seen.insert(sub.code).second) continue;
                char name[32];
                std::snprintf(name, sizeof name, "sub_%04d.json", index++);
                write_file(fs::path(emit_dir) / name, encode_instance(sub.instance));
            }
        }
    }

    auto opt = solve_max_min(inst);
    Rational alpha = approx_ratio(params);
    bool ratio_ok = true;
    Rational min_util = min_utility(inst, x);
    if (opt.status == SolveStatus::Optimal) {
        Rational floor = opt.omega / alpha;
        for (VertexId k : inst.objectives())
            ratio_ok = ratio_ok && objective_utility(inst, x, k) >= floor;
    }
    bool feasible = check_feasible(inst, x).empty();

    if (as_json) {
        json jx = json::object();
        for (const auto& [v, val] : x.values()) jx[std::to_string(v)] = val.str();
        json doc{{"x", jx},
                 {"min_utility", min_util.str()},
                 {"alpha", alpha.str()},
                 {"omega_star", opt.status == SolveStatus::Optimal ? opt.omega.str() : "unbounded"},
                 {"feasible", feasible},
                 {"ratio_check", ratio_ok ? "PASS" : "FAIL"}};
        std::cout << doc.dump(2) << "\n";
    } else {
        for (const auto& [v, val] : x.values())
            std::cout << "x[" << v << "] = " << show(val) << "\n";
        std::cout << "min utility = " << show(min_util) << "\n";
        std::cout << "alpha = " << show(alpha) << " (L = " << level << ", horizon "
                  << params.radius() << ")\n";
        if (opt.status == SolveStatus::Optimal)
            std::cout << "omega* = " << show(opt.omega) << "\n";
        else
            std::cout << "omega* = unbounded\n";
        std::cout << "ratio check: " << (ratio_ok && feasible ? "PASS" : "FAIL") << "\n";
    }
    return ratio_ok && feasible ? kExitOk : kExitVerification;
}

// ---------------------------------------------------------- gen-lowerbound

json q_to_json(const BipartiteGraph& q) {
    json edges = json::array();
    for (auto [u, v] : q.edges) edges.push_back({u, v});
    return json{{"left", q.left_count}, {"right", q.right_count}, {"edges", edges}};
}

BipartiteGraph q_from_json(const json& j) {
    BipartiteGraph q;
    q.left_count = j.at("left").get<int>();
    q.right_count = j.at("right").get<int>();
    for (const auto& e : j.at("edges")) q.edges.push_back({e.at(0).get<int>(), e.at(1).get<int>()});
    return q;
}

int cmd_gen_lowerbound(int d_i, int d_k, int s, int r, std::uint64_t seed,
                       const std::string& out_dir, const std::string& sk_spec,
                       long max_lifts, long restarts, long max_vertices, bool relax_girth,
                       int target_girth_override, bool as_json) {
    LowerBoundParams params{d_i, d_k, s, r};
    params.check();
    HighGirthOptions opts;
    opts.max_lifts = max_lifts;
    opts.restarts_per_level = restarts;
    opts.max_vertices = max_vertices;

    int target_girth = relax_girth ? std::max(4, target_girth_override)
                                   : params.required_girth();
    BipartiteGraph q;
    try {
        q = high_girth_biregular(d_i, d_k, target_girth, seed, opts);
    } catch (const ResourceError& e) {
        std::cerr << "resource budget exceeded: " << e.what()
                  << " (best girth achieved: " << e.best_girth << ")\n";
        return kExitResource;
    }
    auto achieved = girth(q);

    auto built = build_S(q, params, relax_girth ? GirthCheck::Skip : GirthCheck::Require);

    fs::create_directories(out_dir);
    write_file(fs::path(out_dir) / "S.json", encode_instance(built.instance));

    std::vector<VertexId> requested;
    if (sk_spec == "all") {
        requested = built.original_objectives;
    } else if (sk_spec != "none" && !sk_spec.empty()) {
        std::stringstream ss(sk_spec);
        std::string tok;
        while (std::getline(ss, tok, ','))
            requested.push_back(static_cast<VertexId>(std::stoul(tok)));
    }

    json sk_entries = json::array();
    for (VertexId k : requested) {
        auto sk = build_Sk(built, k, params);
        char name[32];
        std::snprintf(name, sizeof name, "S_k%u.json", k);
        write_file(fs::path(out_dir) / name, encode_instance(sk.instance));
        sk_entries.push_back({{"k", k}, {"file", name}, {"root", sk.root_objective}});
    }

    json manifest{
        {"command", "gen-lowerbound"},
        {"parameters",
         {{"d_i", d_i},
          {"d_k", d_k},
          {"s", s},
          {"r", r},
          {"seed", seed},
          {"max_lifts", max_lifts},
          {"restarts", restarts},
          {"max_vertices", max_vertices},
          {"relax_girth", relax_girth},
          {"target_girth", target_girth},
          {"sk", sk_spec}}},
        {"g_required", params.required_girth()},
        {"girth_achieved", achieved ? json(*achieved) : json(nullptr)},
        {"skeleton", q_to_json(q)},
        {"s_file", "S.json"},
        {"sk_files", sk_entries},
        {"utility_upper_bound", utility_upper_bound(d_i, d_k, s).str()},
        {"growth_bound_j3", growth_bound(3, s).str()},
        {"status", "ok"}};
    write_file(fs::path(out_dir) / "manifest.json", manifest.dump(2) + "\n");

    if (as_json) std::cout << manifest.dump(2) << "\n";
    else {
        std::cout << "skeleton: " << q.left_count << "+" << q.right_count << " vertices, "
                  << q.edges.size() << " edges, girth "
                  << (achieved ? std::to_string(*achieved) : "infinite") << " (required g = "
                  << params.required_girth() << (relax_girth ? ", relaxed" : "") << ")\n";
        std::cout << "S: " << built.instance.agents().size() << " agents, "
                  << built.instance.constraints().size() << " constraints, "
                  << built.instance.objectives().size() << " objectives -> " << out_dir
                  << "/S.json\n";
        std::cout << "S_k instances written: " << sk_entries.size() << "\n";
        std::cout << "utility upper bound = " << show(utility_upper_bound(d_i, d_k, s)) << "\n";
    }
    return kExitOk;
}

// ------------------------------------------------------------------ verify

struct Check {
    std::string name;
    bool ok;
    std::string detail;
};

int cmd_verify(const std::string& dir, bool deep, bool as_json) {
    std::vector<Check> checks;
    auto add = [&checks](std::string name, bool ok, std::string detail = "") {
        checks.push_back({std::move(name), ok, std::move(detail)});
    };

    json manifest;
    try {
        manifest = json::parse(read_file(fs::path(dir) / "manifest.json"));
    } catch (const json::parse_error& e) {
        throw CliError{kExitInput, std::string("manifest.json: ") + e.what()};
    }

    const auto& p = manifest.at("parameters");
    LowerBoundParams params{p.at("d_i").get<int>(), p.at("d_k").get<int>(), p.at("s").get<int>(),
                            p.at("r").get<int>()};
    bool relaxed = p.value("relax_girth", false);

    BipartiteGraph q = q_from_json(manifest.at("skeleton"));
    add("skeleton biregular", q.is_biregular(params.d_i, params.d_k));
    auto g_actual = girth(q);
    bool girth_matches = manifest.at("girth_achieved").is_null()
                             ? !g_actual.has_value()
                             : (g_actual && *g_actual == manifest.at("girth_achieved").get<int>());
    add("girth matches manifest", girth_matches,
        g_actual ? "recomputed " + std::to_string(*g_actual) : "recomputed infinite");
    if (!relaxed)
        add("girth meets requirement", g_actual ? *g_actual >= params.required_girth() : true);

    add("utility bound matches manifest",
        utility_upper_bound(params.d_i, params.d_k, params.s).str() ==
            manifest.at("utility_upper_bound").get<std::string>());
    add("growth bound matches manifest",
        growth_bound(3, params.s).str() == manifest.at("growth_bound_j3").get<std::string>());

    std::string s_text = read_file(fs::path(dir) / manifest.at("s_file").get<std::string>());
    auto s_inst = decode_instance(s_text);
    add("S validates", validate_instance(s_inst).ok);
    auto rebuilt = build_S(q, params, relaxed ? GirthCheck::Skip : GirthCheck::Require);
    add("S matches its construction", encode_instance(rebuilt.instance) == s_text);

    // feasibility: the safe baseline must always be feasible on S
    add("safe baseline feasible on S",
        check_feasible(s_inst, safe_baseline(s_inst)).empty());

    // consistency: the local algorithm at L = 0 is view-consistent on S
    {
        AlgoParams ap{params.d_i, params.d_k, 0};
        auto x = run_local(s_inst, ap);
        add("run-local feasible on S", check_feasible(s_inst, x).empty());
        add("consistency on S", consistency_check(s_inst, x, ap.radius()).empty());
    }

    // counting identities on a regularized view of an S agent
    {
        AlgoParams ap{params.d_i, params.d_k, 1};
        VertexId agent = s_inst.agents().front();
        auto reg = regularize_view(local_view(s_inst, agent, 4 * 1 + 1, IdMode::PortNumbering), ap);
        std::vector<int> dist(reg.nodes().size(), -1);
        std::vector<int> queue{0};
        dist[0] = 0;
        long found = 0;
        for (std::size_t qi = 0; qi < queue.size(); ++qi) {
            int xnode = queue[qi];
            const auto& node = reg.nodes()[static_cast<std::size_t>(xnode)];
            if (node.role == Role::Objective) ++found;
            std::vector<int> nbs = node.children;
            if (node.parent >= 0) nbs.push_back(node.parent);
            for (int y : nbs)
                if (dist[static_cast<std::size_t>(y)] < 0) {
                    dist[static_cast<std::size_t>(y)] = dist[static_cast<std::size_t>(xnode)] + 1;
                    queue.push_back(y);
                }
        }
        add("counting identity |K(v,1)|", found == region_sizes(1, ap).size_kv.get_si(),
            "found " + std::to_string(found));
    }

    // growth against the closed-form envelope
    {
        Rational measured = relative_growth(s_inst, 3 * (4 * params.s + 2));
        add("relative growth within bound", measured <= growth_bound(3, params.s),
            "measured " + measured.str());
    }

    for (const auto& entry : manifest.at("sk_files")) {
        VertexId k = entry.at("k").get<VertexId>();
        std::string file = entry.at("file").get<std::string>();
        std::string text = read_file(fs::path(dir) / file);
        auto parsed = decode_instance(text);
        std::string label = "S_k(" + std::to_string(k) + ")";
        add(label + " validates", validate_instance(parsed).ok);
        auto sk = build_Sk(rebuilt, k, params);
        add(label + " matches its construction", encode_instance(sk.instance) == text);

        SkInstance from_file{std::move(parsed), entry.at("root").get<VertexId>(), {}, params};
        auto x = appendix_solution(from_file);
        add(label + " closed-form solution feasible",
            check_feasible(from_file.instance, x).empty());
        add(label + " closed-form utility exceeds d_k - 1",
            min_utility(from_file.instance, x) > Rational(params.d_k - 1),
            "utility " + min_utility(from_file.instance, x).str());
        if (deep) {
            auto opt = solve_max_min(from_file.instance);
            add(label + " optimum exceeds d_k - 1",
                opt.status == SolveStatus::Optimal && opt.omega > Rational(params.d_k - 1),
                "omega " + opt.omega.str());
        }
    }

    if (deep) {
        auto opt = solve_max_min(s_inst);
        add("solve_max_min(S) within the closed-form bound",
            opt.status == SolveStatus::Optimal &&
                opt.omega <= utility_upper_bound(params.d_i, params.d_k, params.s),
            "omega " + opt.omega.str());
    }

    bool all_ok = true;
    for (const auto& c : checks) all_ok = all_ok && c.ok;
    if (as_json) {
        json out = json::array();
        for (const auto& c : checks)
            out.push_back({{"check", c.name}, {"ok", c.ok}, {"detail", c.detail}});
        std::cout << json{{"checks", out}, {"ok", all_ok}}.dump(2) << "\n";
    } else {
        for (const auto& c : checks)
            std::cout << (c.ok ? "[PASS] " : "[FAIL] ") << c.name
                      << (c.detail.empty() ? "" : " — " + c.detail) << "\n";
        std::cout << (all_ok ? "verification PASSED" : "verification FAILED") << "\n";
    }
    return all_ok ? kExitOk : kExitVerification;
}

// --------------------------------------------------------------- show-view

int cmd_show_view(const std::string& path, VertexId vertex, int radius) {
    auto inst = load_instance(path);
    if (vertex >= inst.vertex_count())
        throw CliError{kExitInput, "vertex " + std::to_string(vertex) + " does not exist"};
    std::cout << render_view(local_view(inst, vertex, radius));
    return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"exact max-min LP toolkit: local algorithm, LP oracle, lower-bound instances"};
    app.require_subcommand(1);

    std::string instance_path, out_dir, emit_dir, sk_spec = "none", dir;
    int delta_i = 2, delta_k = 2, level = 0;
    int d_i = 3, d_k = 3, s_param = 0, r_param = 4;
    std::uint64_t seed = 1;
    long max_lifts = 24, restarts = 12, max_vertices = 200000;
    int target_girth = 0;
    bool as_json = false, relax_girth = false, deep = false;
    VertexId vertex = 0;
    int radius = 2;

    auto* solve = app.add_subcommand("solve", "exact two-phase optimum of an instance");
    solve->add_option("--instance", instance_path)->required();
    solve->add_flag("--json", as_json);

    auto* runl = app.add_subcommand("run-local", "run the local averaging algorithm");
    runl->add_option("--instance", instance_path)->required();
    runl->add_option("--delta-i", delta_i)->required();
    runl->add_option("--delta-k", delta_k)->required();
    runl->add_option("--L", level)->required();
    runl->add_option("--emit-subproblems", emit_dir);
    runl->add_flag("--json", as_json);

    auto* gen = app.add_subcommand("gen-lowerbound", "generate the adversarial instance family");
    gen->add_option("--d-i", d_i)->required();
    gen->add_option("--d-k", d_k)->required();
    gen->add_option("--s", s_param);
    gen->add_option("--r", r_param);
    gen->add_option("--seed", seed);
    gen->add_option("--out", out_dir)->required();
    gen->add_option("--sk", sk_spec, "none | all | comma-separated objective ids");
    gen->add_option("--max-lifts", max_lifts);
    gen->add_option("--restarts", restarts);
    gen->add_option("--max-vertices", max_vertices);
    gen->add_flag("--relax-girth", relax_girth,
                  "build S from a low-girth skeleton (bound/growth experiments only)");
    gen->add_option("--target-girth", target_girth,
                    "skeleton girth to aim for under --relax-girth (default 4)");
    gen->add_flag("--json", as_json);

    auto* verify = app.add_subcommand("verify", "re-check a generated directory");
    verify->add_option("--dir", dir)->required();
    verify->add_flag("--deep", deep, "also run the exact LP bound checks");
    verify->add_flag("--json", as_json);

    auto* view = app.add_subcommand("show-view", "render a local view as an indented tree");
    view->add_option("--instance", instance_path)->required();
    view->add_option("--vertex", vertex)->required();
    view->add_option("--radius", radius)->required();

    CLI11_PARSE(app, argc, argv);

    try {
        if (solve->parsed()) return cmd_solve(instance_path, as_json);
        if (runl->parsed())
            return cmd_run_local(instance_path, delta_i, delta_k, level, emit_dir, as_json);
        if (gen->parsed())
            return cmd_gen_lowerbound(d_i, d_k, s_param, r_param, seed, out_dir, sk_spec,
                                      max_lifts, restarts, max_vertices, relax_girth,
                                      target_girth, as_json);
        if (verify->parsed()) return cmd_verify(dir, deep, as_json);
        if (view->parsed()) return cmd_show_view(instance_path, vertex, radius);
    } catch (const CliError& e) {
        std::cerr << "error: " << e.message << "\n";
        return e.code;
    } catch (const ParseError& e) {
        std::cerr << "parse error: " << e.what() << "\n";
        return kExitInput;
    } catch (const UnsupportedInstanceError& e) {
        std::cerr << "unsupported instance: " << e.what() << "\n";
        return kExitUnsupported;
    } catch (const ResourceError& e) {
        std::cerr << "resource budget exceeded: " << e.what() << "\n";
        return kExitResource;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitInput;
    }
    return kExitOk;
}
