#include "overmesh/mesh.hpp"

#include <algorithm>
#include <random>

#include "rng_util.hpp"

namespace overmesh {

namespace {

NodeId pick_min_degree(const OverlayGraph& g, const std::vector<NodeId>& pool,
                       const TieBreakPolicy& policy, std::mt19937_64& rng) {
    std::size_t min_deg = g.degree(pool.front());
    for (NodeId id : pool) min_deg = std::min(min_deg, g.degree(id));
    std::vector<NodeId> tied;
    for (NodeId id : pool)
        if (g.degree(id) == min_deg) tied.push_back(id);
    if (policy.kind == TieBreakPolicy::Kind::LowestId) return tied.front();
    return tied[detail::uniform_below(rng, tied.size())];
}

} // namespace

JoinOutcome join(OverlayGraph& g, NodeId new_id, const TieBreakPolicy& policy) {
    const std::size_t n = g.node_count();
    JoinOutcome outcome;

    if (n == 0) {
        g.add_node(new_id);
        return outcome;
    }
    if (n == 1) {
        NodeId only = g.node_ids().front();
        g.add_node(new_id);
        g.add_edge(new_id, only);
        outcome.attached_to = {only};
        return outcome;
    }

    std::mt19937_64 rng(detail::splitmix64(policy.seed ^ detail::splitmix64(new_id)));
    std::vector<NodeId> pool = g.node_ids();
    NodeId first = pick_min_degree(g, pool, policy, rng);
    pool.erase(std::find(pool.begin(), pool.end(), first));
    NodeId second = pick_min_degree(g, pool, policy, rng);

    g.add_node(new_id);
    g.add_edge(new_id, first);
    g.add_edge(new_id, second);
    outcome.attached_to = {first, second};
    return outcome;
}

JoinOutcome join_explicit(OverlayGraph& g, NodeId new_id, const std::set<NodeId>& targets) {
    const std::size_t n = g.node_count();
    const std::size_t want = n >= 2 ? 2 : n;
    if (targets.size() != want)
        throw Error("join of node " + std::to_string(new_id) + " needs " + std::to_string(want) +
                    " target(s), got " + std::to_string(targets.size()));
    for (NodeId t : targets)
        if (!g.has_node(t)) throw Error("join target " + std::to_string(t) + " does not exist");

    g.add_node(new_id);
    for (NodeId t : targets) g.add_edge(new_id, t);
    return JoinOutcome{targets};
}

bool is_redundant(const OverlayGraph& g, NodeId u, NodeId v) {
    if (!g.has_edge(u, v)) throw Error("edge " + std::to_string(u) + "-" + std::to_string(v) + " does not exist");
    OverlayGraph copy = g;
    copy.remove_edge(u, v);
    return has_two_node_disjoint_paths(copy, u, v);
}

std::vector<Edge> prune_redundant(OverlayGraph& g) {
    std::vector<Edge> removed;
    bool changed = true;
    while (changed) {
        changed = false;
        for (const Edge& e : g.edge_list()) {
            if (!g.has_edge(e.a, e.b)) continue; // removed earlier in this pass
            if (g.carries_traffic(e.a, e.b)) continue;
            g.remove_edge(e.a, e.b);
            if (has_two_node_disjoint_paths(g, e.a, e.b)) {
                removed.push_back(e);
                changed = true;
            } else {
                g.add_edge(e.a, e.b);
            }
        }
    }
    return removed;
}

namespace {

// Missing consecutive pairs of the cycle ring[0], ring[1], ..., ring[0].
std::vector<Edge> missing_ring_edges(const OverlayGraph& g, const std::vector<NodeId>& ring) {
    std::vector<Edge> missing;
    for (std::size_t i = 0; i < ring.size(); ++i) {
        NodeId a = ring[i];
        NodeId b = ring[(i + 1) % ring.size()];
        if (!g.has_edge(a, b)) missing.emplace_back(a, b);
    }
    return missing;
}

// Exhaustive search over cyclic orderings: first element pinned, reversal
// deduplicated, first ordering with the fewest missing edges wins.
std::vector<NodeId> best_ring_exhaustive(const OverlayGraph& g, const std::vector<NodeId>& members) {
    std::vector<NodeId> rest(members.begin() + 1, members.end());
    std::sort(rest.begin(), rest.end());
    std::vector<NodeId> best;
    std::size_t best_missing = members.size() + 1;
    do {
        if (rest.size() >= 2 && rest.front() > rest.back()) continue;
        std::vector<NodeId> ring{members.front()};
        ring.insert(ring.end(), rest.begin(), rest.end());
        std::size_t miss = missing_ring_edges(g, ring).size();
        if (miss < best_missing) {
            best_missing = miss;
            best = ring;
        }
    } while (std::next_permutation(rest.begin(), rest.end()));
    return best;
}

// Greedy fallback for large neighbor sets: extend a path from the lowest id,
// preferring unused members already linked to the tail.
std::vector<NodeId> best_ring_greedy(const OverlayGraph& g, const std::vector<NodeId>& members) {
    std::vector<NodeId> ring{members.front()};
    std::set<NodeId> unused(members.begin() + 1, members.end());
    while (!unused.empty()) {
        NodeId tail = ring.back();
        NodeId next = 0;
        bool found = false;
        for (NodeId cand : unused) { // ascending, so lowest-id linked candidate wins
            if (g.has_edge(tail, cand)) {
                next = cand;
                found = true;
                break;
            }
        }
        if (!found) next = *unused.begin();
        unused.erase(next);
        ring.push_back(next);
    }
    return ring;
}

} // namespace

std::vector<Edge> repair_failure(OverlayGraph& g, NodeId failed) {
    const std::set<NodeId> former = g.neighbors(failed); // copy; throws if missing
    g.remove_node(failed);

    if (former.size() <= 1) return {};
    std::vector<NodeId> members(former.begin(), former.end());
    if (former.size() == 2) {
        if (g.has_edge(members[0], members[1])) return {};
        g.add_edge(members[0], members[1]);
        return {Edge(members[0], members[1])};
    }

    std::vector<NodeId> ring =
        members.size() <= 8 ? best_ring_exhaustive(g, members) : best_ring_greedy(g, members);
    std::vector<Edge> added = missing_ring_edges(g, ring);
    for (const Edge& e : added) g.add_edge(e.a, e.b);
    return added;
}

} // namespace overmesh
