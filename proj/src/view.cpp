#include "maxmin/view.hpp"

#include "maxmin/errors.hpp"

#include <deque>
#include <map>
#include <sstream>

namespace maxmin {

LocalView local_view(const MaxMinInstance& inst, VertexId v, int radius) {
    return local_view(inst, v, radius, inst.id_mode());
}

LocalView local_view(const MaxMinInstance& inst, VertexId v, int radius, IdMode flavor) {
    if (radius < 0) throw std::invalid_argument("local_view: negative radius");
    (void)inst.role(v);  // existence check

    std::vector<ViewNode> nodes;
    std::vector<VertexId> origins;  // parallel to nodes during construction
    nodes.push_back({inst.role(v), -1, 0, 0, 0, Rational(0), false, {}});
    origins.push_back(v);

    std::deque<int> queue{0};
    while (!queue.empty()) {
        int cur = queue.front();
        queue.pop_front();
        if (nodes[static_cast<std::size_t>(cur)].depth >= radius) continue;
        VertexId host = origins[static_cast<std::size_t>(cur)];
        // the parent edge, seen from this vertex, uses port_here; skip it
        int skip_port = nodes[static_cast<std::size_t>(cur)].port_here;
        bool has_parent = nodes[static_cast<std::size_t>(cur)].parent >= 0;
        for (const auto& h : inst.neighbors(host)) {
            if (has_parent && h.port_here == skip_port) continue;
            int child = static_cast<int>(nodes.size());
            nodes.push_back({inst.role(h.to), cur, nodes[static_cast<std::size_t>(cur)].depth + 1,
                             h.port_here, h.port_there, h.coeff, false, {}});
            origins.push_back(h.to);
            nodes[static_cast<std::size_t>(cur)].children.push_back(child);
            queue.push_back(child);
        }
        // neighbors() is port-sorted, so children are already in canonical order
    }

    if (flavor == IdMode::PortNumbering) origins.clear();
    return LocalView(std::move(nodes), std::move(origins), radius, flavor);
}

VertexId LocalView::origin(int node) const {
    if (origins_.empty())
        throw std::logic_error("origin: port-numbering views carry no original vertex ids");
    return origins_[static_cast<std::size_t>(node)];
}

namespace {

void encode_node(const LocalView& view, int idx, std::string& out) {
    const ViewNode& n = view.node(idx);
    switch (n.role) {
        case Role::Agent: out += 'V'; break;
        case Role::Constraint: out += 'I'; break;
        case Role::Objective: out += 'K'; break;
    }
    if (n.is_virtual) out += '~';
    if (view.mode() == IdMode::UniqueIds && view.has_origins()) {
        out += '#';
        out += std::to_string(view.origin(idx));
    }
    out += '(';
    for (int c : n.children) {
        const ViewNode& ch = view.node(c);
        out += std::to_string(ch.port_at_parent);
        out += ',';
        out += std::to_string(ch.port_here);
        out += ',';
        out += ch.coeff.str();
        out += ':';
        encode_node(view, c, out);
        out += ';';
    }
    out += ')';
}

void render_node(const LocalView& view, int idx, int indent, std::ostringstream& os) {
    const ViewNode& n = view.node(idx);
    os << std::string(static_cast<std::size_t>(indent) * 2, ' ');
    os << role_name(n.role);
    if (n.is_virtual) os << " (virtual)";
    if (view.mode() == IdMode::UniqueIds && view.has_origins()) os << " #" << view.origin(idx);
    if (n.parent >= 0)
        os << "  [port " << n.port_at_parent << "|" << n.port_here << ", coeff "
           << n.coeff.str() << "]";
    os << "\n";
    for (int c : n.children) render_node(view, c, indent + 1, os);
}

}  // namespace

ViewCode canonical_code(const LocalView& view) {
    std::string out;
    out.reserve(view.nodes().size() * 8);
    encode_node(view, view.root(), out);
    return out;
}

std::string render_view(const LocalView& view) {
    std::ostringstream os;
    render_node(view, view.root(), 0, os);
    return os.str();
}

std::vector<std::pair<VertexId, VertexId>> consistency_check(const MaxMinInstance& inst,
                                                             const Assignment& x, int radius,
                                                             IdMode flavor) {
    std::map<ViewCode, std::map<Rational, std::vector<VertexId>>> groups;
    for (VertexId u : inst.agents()) {
        ViewCode code = canonical_code(local_view(inst, u, radius, flavor));
        groups[std::move(code)][x.at(u)].push_back(u);
    }
    std::vector<std::pair<VertexId, VertexId>> out;
    for (const auto& [code, by_value] : groups) {
        if (by_value.size() < 2) continue;
        for (auto it = by_value.begin(); it != by_value.end(); ++it) {
            auto jt = it;
            for (++jt; jt != by_value.end(); ++jt)
                for (VertexId u : it->second)
                    for (VertexId v : jt->second) out.emplace_back(u, v);
        }
    }
    return out;
}

}  // namespace maxmin
