#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <vector>

#include "overmesh/error.hpp"

namespace overmesh {

using NodeId = std::uint64_t;

/// Unordered node pair, stored normalized with a < b.
struct Edge {
    NodeId a;
    NodeId b;

    Edge(NodeId u, NodeId v) : a(u < v ? u : v), b(u < v ? v : u) {
        if (u == v) throw Error("self loop " + std::to_string(u) + "-" + std::to_string(v));
    }

    auto operator<=>(const Edge&) const = default;
};

struct EdgeAttr {
    bool carries_traffic = false;
};

/// Two paths between the same endpoints whose interior node sets are disjoint.
struct PathPair {
    std::vector<NodeId> first;
    std::vector<NodeId> second;
};

/// Undirected simple graph over integer node ids. Adjacency is kept symmetric,
/// ids removed from the graph are retired and can never be reused, and every
/// edge owns one EdgeAttr. Iteration order is ascending id everywhere.
class OverlayGraph {
public:
    void add_node(NodeId id);
    void add_edge(NodeId u, NodeId v);
    void remove_node(NodeId id);
    void remove_edge(NodeId u, NodeId v);

    bool has_node(NodeId id) const { return adjacency_.contains(id); }
    bool has_edge(NodeId u, NodeId v) const;
    const std::set<NodeId>& neighbors(NodeId id) const;
    std::size_t degree(NodeId id) const { return neighbors(id).size(); }

    std::size_t node_count() const { return adjacency_.size(); }
    std::size_t edge_count() const { return attrs_.size(); }
    std::vector<NodeId> node_ids() const;
    std::vector<Edge> edge_list() const;

    bool carries_traffic(NodeId u, NodeId v) const;
    void set_traffic(NodeId u, NodeId v, bool value);
    void clear_traffic();
    std::vector<Edge> traffic_edges() const;

    /// Full invariant check: adjacency symmetry, simple-graph constraints,
    /// attrs keyed exactly by the edge set, no live retired id.
    /// Throws Error on the first violation found.
    void validate() const;

private:
    std::map<NodeId, std::set<NodeId>> adjacency_;
    std::map<Edge, EdgeAttr> attrs_;
    std::set<NodeId> retired_;

    void check_invariants_debug() const;
};

// Connectivity ---------------------------------------------------------------

std::set<NodeId> reachable_from(const OverlayGraph& g, NodeId src);
bool is_connected(const OverlayGraph& g);
std::size_t component_count(const OverlayGraph& g);

/// Nodes whose removal increases the number of connected components,
/// via the linear-time lowpoint DFS.
std::set<NodeId> articulation_points(const OverlayGraph& g);

/// Connected, at least 3 nodes, and no articulation point. A single node and
/// a single edge are not biconnected.
bool is_biconnected(const OverlayGraph& g);

/// True iff two u-v paths with disjoint interiors exist. Computed as a
/// unit-capacity max-flow on the node-split digraph; a direct edge u-v
/// counts as one path.
bool has_two_node_disjoint_paths(const OverlayGraph& g, NodeId u, NodeId v);

/// Explicit witness for has_two_node_disjoint_paths, from the decomposition
/// of the value-2 flow. Absent when no such pair exists.
std::optional<PathPair> node_disjoint_path_pair(const OverlayGraph& g, NodeId u, NodeId v);

/// Unweighted shortest-path hop counts from src. The source itself and
/// unreachable nodes are absent from the map.
std::map<NodeId, std::size_t> bfs_hops(const OverlayGraph& g, NodeId src);

/// True iff p is a simple path in g whose consecutive pairs are all edges.
bool is_simple_path(const OverlayGraph& g, const std::vector<NodeId>& p);

/// Checks the PathPair invariants against g: shared endpoints, disjoint
/// interiors, both paths simple.
bool is_valid_path_pair(const OverlayGraph& g, const PathPair& pp);

} // namespace overmesh
