#pragma once

#include <map>
#include <optional>
#include <set>
#include <vector>

#include "overmesh/graph.hpp"

namespace overmesh {

/// Source-rooted data-delivery tree over a mesh. Trees built with
/// build_delivery_tree span the mesh and follow BFS distances; explicitly
/// supplied trees may cover a subset of nodes (their parent chains still all
/// lead to the source).
struct DeliveryTree {
    NodeId source = 0;
    std::map<NodeId, NodeId> parent; // source absent
    std::set<Edge> tree_edges;

    bool has_node(NodeId id) const { return id == source || parent.contains(id); }
    std::vector<NodeId> node_ids() const;

    /// Tree path source -> dest.
    std::vector<NodeId> path_to(NodeId dest) const;
};

/// Primary feed along the tree plus a backup path that shares no interior
/// node with it.
struct DoubleFeed {
    NodeId dest = 0;
    std::vector<NodeId> primary;
    std::vector<NodeId> backup;
};

/// BFS shortest-path tree from source; each node's parent is its lowest-id
/// neighbor on the previous BFS level. Marks carries_traffic on exactly the
/// tree edges. Throws if the mesh is disconnected, listing unreachable nodes.
DeliveryTree build_delivery_tree(OverlayGraph& g, NodeId source);

/// Wraps an explicit parent map (e.g. parsed from JSON) as a DeliveryTree,
/// validating that every entry is a mesh edge and every chain reaches source.
DeliveryTree delivery_tree_from_parents(const OverlayGraph& g, NodeId source,
                                        const std::map<NodeId, NodeId>& parent);

/// Sets carries_traffic true on exactly the tree edges, false elsewhere.
void mark_traffic(OverlayGraph& g, const DeliveryTree& tree);

/// Primary = tree path; backup = shortest path in the mesh avoiding the
/// primary's interior (and, for a direct-edge primary, the edge itself).
/// Absent when no such backup exists.
std::optional<DoubleFeed> double_feed(const OverlayGraph& g, const DeliveryTree& tree, NodeId dest);

/// Mesh edges outside the tree that appear on at least one destination's
/// backup path; these carry the feed in addition to the tree.
std::set<Edge> extraneous_edges(const OverlayGraph& g, const DeliveryTree& tree);

} // namespace overmesh
