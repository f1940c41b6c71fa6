#include "overmesh/delivery.hpp"

#include <algorithm>
#include <deque>

namespace overmesh {

std::vector<NodeId> DeliveryTree::node_ids() const {
    std::vector<NodeId> ids{source};
    for (const auto& [id, _] : parent) ids.push_back(id);
    std::sort(ids.begin(), ids.end());
    return ids;
}

std::vector<NodeId> DeliveryTree::path_to(NodeId dest) const {
    if (!has_node(dest)) throw Error("node " + std::to_string(dest) + " is not in the delivery tree");
    std::vector<NodeId> path{dest};
    NodeId at = dest;
    while (at != source) {
        at = parent.at(at);
        path.push_back(at);
    }
    std::reverse(path.begin(), path.end());
    return path;
}

DeliveryTree build_delivery_tree(OverlayGraph& g, NodeId source) {
    std::map<NodeId, std::size_t> hops = bfs_hops(g, source); // throws on missing source
    if (hops.size() + 1 != g.node_count()) {
        std::string missing;
        for (NodeId id : g.node_ids())
            if (id != source && !hops.contains(id)) missing += (missing.empty() ? "" : ", ") + std::to_string(id);
        throw Error("mesh is disconnected; unreachable from " + std::to_string(source) + ": " + missing);
    }

    DeliveryTree tree;
    tree.source = source;
    for (const auto& [id, dist] : hops) {
        // lowest-id neighbor on the previous BFS level
        for (NodeId nb : g.neighbors(id)) {
            std::size_t nb_dist = nb == source ? 0 : hops.at(nb);
            if (nb_dist + 1 == dist) {
                tree.parent[id] = nb;
                tree.tree_edges.insert(Edge(id, nb));
                break;
            }
        }
    }
    mark_traffic(g, tree);
    return tree;
}

DeliveryTree delivery_tree_from_parents(const OverlayGraph& g, NodeId source,
                                        const std::map<NodeId, NodeId>& parent) {
    if (!g.has_node(source)) throw Error("source " + std::to_string(source) + " does not exist");
    if (parent.contains(source)) throw Error("source must not have a parent entry");

    DeliveryTree tree;
    tree.source = source;
    tree.parent = parent;
    for (const auto& [child, par] : parent) {
        if (!g.has_edge(child, par))
            throw Error("tree edge " + std::to_string(child) + "-" + std::to_string(par) +
                        " is not a mesh edge");
        tree.tree_edges.insert(Edge(child, par));
    }
    for (const auto& [child, _] : parent) {
        // walk to source, bounded by tree size to catch cycles
        NodeId at = child;
        std::size_t steps = 0;
        while (at != source) {
            auto it = parent.find(at);
            if (it == parent.end())
                throw Error("parent chain of " + std::to_string(child) + " does not reach the source");
            at = it->second;
            if (++steps > parent.size())
                throw Error("parent chain of " + std::to_string(child) + " contains a cycle");
        }
    }
    return tree;
}

void mark_traffic(OverlayGraph& g, const DeliveryTree& tree) {
    for (const Edge& e : tree.tree_edges)
        if (!g.has_edge(e.a, e.b))
            throw Error("tree edge " + std::to_string(e.a) + "-" + std::to_string(e.b) +
                        " is not a mesh edge");
    g.clear_traffic();
    for (const Edge& e : tree.tree_edges) g.set_traffic(e.a, e.b, true);
}

namespace {

// Shortest path src -> dst by BFS, parent = lowest-id neighbor on the
// previous level; nodes in `banned` and the single `banned_edge` are skipped.
std::optional<std::vector<NodeId>> constrained_shortest_path(const OverlayGraph& g, NodeId src,
                                                            NodeId dst, const std::set<NodeId>& banned,
                                                            const std::optional<Edge>& banned_edge) {
    std::map<NodeId, NodeId> came_from;
    std::set<NodeId> seen{src};
    std::deque<NodeId> queue{src};
    while (!queue.empty() && !seen.contains(dst)) {
        NodeId v = queue.front();
        queue.pop_front();
        for (NodeId nb : g.neighbors(v)) {
            if (seen.contains(nb) || banned.contains(nb)) continue;
            if (banned_edge && Edge(v, nb) == *banned_edge) continue;
            seen.insert(nb);
            came_from[nb] = v;
            queue.push_back(nb);
        }
    }
    if (!seen.contains(dst)) return std::nullopt;
    std::vector<NodeId> path{dst};
    while (path.back() != src) path.push_back(came_from.at(path.back()));
    std::reverse(path.begin(), path.end());
    return path;
}

} // namespace

std::optional<DoubleFeed> double_feed(const OverlayGraph& g, const DeliveryTree& tree, NodeId dest) {
    if (!g.has_node(dest)) throw Error("node " + std::to_string(dest) + " does not exist");
    if (dest == tree.source) throw Error("destination equals the source");

    std::vector<NodeId> primary = tree.path_to(dest);
    std::set<NodeId> interior(primary.begin() + 1, primary.end() - 1);
    // The primary's unit of flow is pinned: the backup may not reroute it, so
    // it must avoid the primary's interior outright (and the direct edge when
    // the primary is a single hop).
    std::optional<Edge> banned_edge;
    if (primary.size() == 2) banned_edge = Edge(tree.source, dest);

    auto backup = constrained_shortest_path(g, tree.source, dest, interior, banned_edge);
    if (!backup) return std::nullopt;
    return DoubleFeed{dest, std::move(primary), std::move(*backup)};
}

std::set<Edge> extraneous_edges(const OverlayGraph& g, const DeliveryTree& tree) {
    std::set<Edge> extra;
    for (NodeId dest : tree.node_ids()) {
        if (dest == tree.source) continue;
        auto feed = double_feed(g, tree, dest);
        if (!feed) continue;
        for (std::size_t i = 0; i + 1 < feed->backup.size(); ++i) {
            Edge e(feed->backup[i], feed->backup[i + 1]);
            if (!tree.tree_edges.contains(e)) extra.insert(e);
        }
    }
    return extra;
}

} // namespace overmesh
