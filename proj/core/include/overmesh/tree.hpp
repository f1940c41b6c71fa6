#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "overmesh/graph.hpp"

namespace overmesh {

/// Rooted tree with ordered children lists; the children order defines the
/// left-to-right leaf sequence used by the augmentations.
struct RootedTree {
    NodeId root = 0;
    std::map<NodeId, NodeId> parent;                 // root absent
    std::map<NodeId, std::vector<NodeId>> children;  // only nodes with children

    std::size_t node_count() const { return parent.size() + 1; }
    std::vector<NodeId> node_ids() const;
    bool has_node(NodeId id) const;
    bool is_leaf(NodeId id) const;

    /// Leaves in depth-first, children-order sequence.
    std::vector<NodeId> leaves_in_order() const;

    /// Depth of every node (root = 0).
    std::map<NodeId, std::size_t> depths() const;

    /// Checks single root, acyclicity, and parent/children consistency.
    /// Throws Error on violation.
    void validate() const;
};

enum class AugmentApproach { LeafChain, Grandparent };

std::string to_string(AugmentApproach approach);
AugmentApproach augment_approach_from_string(const std::string& s);

/// Extra edges that make a tree biconnected; never duplicates a tree edge
/// or another added edge.
struct Augmentation {
    AugmentApproach approach = AugmentApproach::LeafChain;
    std::vector<Edge> added_edges;
};

/// Complete binary tree with 2^levels - 1 nodes, ids in breadth-first order
/// starting at 1.
RootedTree build_full_binary_tree(std::size_t levels);

/// Chains consecutive leaves left to right: L-1 added links for L leaves,
/// which is (N-1)/2 for a full binary tree with N nodes.
Augmentation leaf_chain_augment(const RootedTree& t);

/// Links every node at depth >= 2 to its grandparent; the root's children,
/// which have none, are linked to a sibling instead (paired left to right,
/// an odd leftover to its nearest left sibling). N-2 links for a full
/// binary tree with N nodes.
Augmentation grandparent_augment(const RootedTree& t);

/// Graph containing all tree edges plus the augmentation's edges.
OverlayGraph tree_to_graph(const RootedTree& t, const std::optional<Augmentation>& aug = std::nullopt);

/// Closed-form added-link count for a full binary tree with the given number
/// of levels: (N-1)/2 for leaf-chain, N-2 for grandparent, N = 2^levels - 1.
std::size_t additional_links_count(std::size_t levels, AugmentApproach approach);

} // namespace overmesh
