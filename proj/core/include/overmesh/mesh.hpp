#pragma once

#include <cstdint>
#include <set>
#include <vector>

#include "overmesh/graph.hpp"

namespace overmesh {

/// How a joining node chooses between equal-degree attachment candidates.
/// seeded-random is a pure function of (seed, joining id, candidate set),
/// so equal seeds give identical choices for identical inputs.
struct TieBreakPolicy {
    enum class Kind { LowestId, SeededRandom };

    Kind kind = Kind::LowestId;
    std::uint64_t seed = 0;

    static TieBreakPolicy lowest_id() { return {Kind::LowestId, 0}; }
    static TieBreakPolicy seeded_random(std::uint64_t seed) { return {Kind::SeededRandom, seed}; }
};

/// The nodes a join attached to: empty for the first node, one for the
/// second, two distinct nodes for every later join.
struct JoinOutcome {
    std::set<NodeId> attached_to;
};

/// Attaches new_id to the two live nodes of minimum degree (bootstrap: the
/// first node gets no edge, the second one edge, the third completes a
/// triangle). Ties are broken by policy.
JoinOutcome join(OverlayGraph& g, NodeId new_id, const TieBreakPolicy& policy);

/// Attaches new_id to exactly the given targets. Target count must match
/// what join would use at the current graph size.
JoinOutcome join_explicit(OverlayGraph& g, NodeId new_id, const std::set<NodeId>& targets);

/// True iff the edge's endpoints keep two node-disjoint paths when the edge
/// is removed.
bool is_redundant(const OverlayGraph& g, NodeId u, NodeId v);

/// Repeatedly scans edges in ascending order and removes every redundant
/// edge that carries no traffic, re-evaluating after each removal, until a
/// full pass removes nothing. Returns removed edges in removal order.
std::vector<Edge> prune_redundant(OverlayGraph& g);

/// Removes the failed node and re-forms a ring among its former neighbors,
/// reusing existing neighbor-to-neighbor edges where possible (exhaustive
/// ordering search up to 8 neighbors, greedy beyond). Returns added edges.
std::vector<Edge> repair_failure(OverlayGraph& g, NodeId failed);

} // namespace overmesh
