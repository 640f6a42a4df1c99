#pragma once

#include "maxmin/instance.hpp"

#include <string>
#include <utility>
#include <vector>

namespace maxmin {

/// Node of a radius-r local view: the depth-r truncation of the universal
/// cover, materialized eagerly as a rooted tree. Children are reached by
/// walking every incident edge of the copied vertex except straight back
/// over the parent edge, and are ordered by the port number at this node.
struct ViewNode {
    Role role;
    int parent = -1;         // index into LocalView::nodes(); -1 at the root
    int depth = 0;
    int port_at_parent = 0;  // port at the parent vertex on the edge down to this node
    int port_here = 0;       // port at this vertex on that same edge
    Rational coeff;          // coefficient carried by the parent edge (0 at the root)
    bool is_virtual = false; // set by regularization, never by unfolding
    std::vector<int> children;
};

class LocalView {
public:
    LocalView(std::vector<ViewNode> nodes, std::vector<VertexId> origins, int radius,
              IdMode mode)
        : nodes_(std::move(nodes)), origins_(std::move(origins)), radius_(radius),
          mode_(mode) {}

    const std::vector<ViewNode>& nodes() const { return nodes_; }
    const ViewNode& node(int i) const { return nodes_[static_cast<std::size_t>(i)]; }
    int root() const { return 0; }
    int radius() const { return radius_; }
    IdMode mode() const { return mode_; }

    /// Original vertex id of a node. Only available in UniqueIds mode; a
    /// port-numbering view carries no originals at all.
    VertexId origin(int node) const;
    bool has_origins() const { return !origins_.empty(); }

private:
    std::vector<ViewNode> nodes_;
    std::vector<VertexId> origins_;  // empty in PortNumbering mode
    int radius_;
    IdMode mode_;
};

/// Depth-r truncated unfolding rooted at v, built from non-backtracking
/// walks. `flavor` defaults to the instance's id mode; pass PortNumbering to
/// build the anonymous view of a UniqueIds instance (what a port-numbering
/// algorithm sees).
LocalView local_view(const MaxMinInstance& inst, VertexId v, int radius);
LocalView local_view(const MaxMinInstance& inst, VertexId v, int radius, IdMode flavor);

/// Canonical byte string: equal codes iff the views are isomorphic as
/// rooted, port-labelled, coefficient-labelled trees. Children are already
/// deterministically ordered by parent-side port, so serialization is
/// canonical without any sorting.
using ViewCode = std::string;
ViewCode canonical_code(const LocalView& view);

/// Indented tree rendering for debugging and docs.
std::string render_view(const LocalView& view);

/// All agent pairs (u, v) whose radius-r views have equal canonical codes
/// but x_u != x_v. Empty output certifies view-consistency of x on this
/// instance. Views are built in the given flavor (PortNumbering by default:
/// the setting in which the local algorithm runs).
std::vector<std::pair<VertexId, VertexId>> consistency_check(
    const MaxMinInstance& inst, const Assignment& x, int radius,
    IdMode flavor = IdMode::PortNumbering);

}  // namespace maxmin
