#include "overmesh/graph.hpp"

#include <algorithm>
#include <cassert>
#include <deque>
#include <queue>

namespace overmesh {

namespace {

std::string id_str(NodeId id) { return std::to_string(id); }
std::string edge_str(NodeId u, NodeId v) { return id_str(u) + "-" + id_str(v); }

} // namespace

// OverlayGraph ---------------------------------------------------------------

void OverlayGraph::add_node(NodeId id) {
    if (adjacency_.contains(id)) throw Error("node " + id_str(id) + " already exists");
    if (retired_.contains(id)) throw Error("node id " + id_str(id) + " was retired and cannot be reused");
    adjacency_.emplace(id, std::set<NodeId>{});
    check_invariants_debug();
}

void OverlayGraph::add_edge(NodeId u, NodeId v) {
    Edge e(u, v); // rejects self loops
    if (!adjacency_.contains(u)) throw Error("edge endpoint " + id_str(u) + " does not exist");
    if (!adjacency_.contains(v)) throw Error("edge endpoint " + id_str(v) + " does not exist");
    if (attrs_.contains(e)) throw Error("edge " + edge_str(u, v) + " already exists");
    adjacency_[u].insert(v);
    adjacency_[v].insert(u);
    attrs_.emplace(e, EdgeAttr{});
    check_invariants_debug();
}

void OverlayGraph::remove_node(NodeId id) {
    auto it = adjacency_.find(id);
    if (it == adjacency_.end()) throw Error("node " + id_str(id) + " does not exist");
    for (NodeId nb : it->second) {
        adjacency_[nb].erase(id);
        attrs_.erase(Edge(id, nb));
    }
    adjacency_.erase(it);
    retired_.insert(id);
    check_invariants_debug();
}

void OverlayGraph::remove_edge(NodeId u, NodeId v) {
    Edge e(u, v);
    if (!attrs_.contains(e)) throw Error("edge " + edge_str(u, v) + " does not exist");
    adjacency_[u].erase(v);
    adjacency_[v].erase(u);
    attrs_.erase(e);
    check_invariants_debug();
}

bool OverlayGraph::has_edge(NodeId u, NodeId v) const {
    if (u == v) return false;
    return attrs_.contains(Edge(u, v));
}

const std::set<NodeId>& OverlayGraph::neighbors(NodeId id) const {
    auto it = adjacency_.find(id);
    if (it == adjacency_.end()) throw Error("node " + id_str(id) + " does not exist");
    return it->second;
}

std::vector<NodeId> OverlayGraph::node_ids() const {
    std::vector<NodeId> out;
    out.reserve(adjacency_.size());
    for (const auto& [id, _] : adjacency_) out.push_back(id);
    return out;
}

std::vector<Edge> OverlayGraph::edge_list() const {
    std::vector<Edge> out;
    out.reserve(attrs_.size());
    for (const auto& [e, _] : attrs_) out.push_back(e);
    return out;
}

bool OverlayGraph::carries_traffic(NodeId u, NodeId v) const {
    auto it = attrs_.find(Edge(u, v));
    if (it == attrs_.end()) throw Error("edge " + edge_str(u, v) + " does not exist");
    return it->second.carries_traffic;
}

void OverlayGraph::set_traffic(NodeId u, NodeId v, bool value) {
    auto it = attrs_.find(Edge(u, v));
    if (it == attrs_.end()) throw Error("edge " + edge_str(u, v) + " does not exist");
    it->second.carries_traffic = value;
}

void OverlayGraph::clear_traffic() {
    for (auto& [_, attr] : attrs_) attr.carries_traffic = false;
}

std::vector<Edge> OverlayGraph::traffic_edges() const {
    std::vector<Edge> out;
    for (const auto& [e, attr] : attrs_)
        if (attr.carries_traffic) out.push_back(e);
    return out;
}

void OverlayGraph::validate() const {
    for (const auto& [id, nbs] : adjacency_) {
        if (retired_.contains(id)) throw Error("live node " + id_str(id) + " is also retired");
        for (NodeId nb : nbs) {
            if (nb == id) throw Error("self loop at " + id_str(id));
            auto it = adjacency_.find(nb);
            if (it == adjacency_.end())
                throw Error("edge " + edge_str(id, nb) + " references missing node");
            if (!it->second.contains(id))
                throw Error("asymmetric adjacency at " + edge_str(id, nb));
            if (!attrs_.contains(Edge(id, nb)))
                throw Error("edge " + edge_str(id, nb) + " has no attr entry");
        }
    }
    for (const auto& [e, _] : attrs_) {
        auto it = adjacency_.find(e.a);
        if (it == adjacency_.end() || !it->second.contains(e.b))
            throw Error("attr entry " + edge_str(e.a, e.b) + " without adjacency");
    }
}

void OverlayGraph::check_invariants_debug() const {
#ifndef NDEBUG
    validate();
#endif
}

// Connectivity ---------------------------------------------------------------

std::set<NodeId> reachable_from(const OverlayGraph& g, NodeId src) {
    if (!g.has_node(src)) throw Error("node " + id_str(src) + " does not exist");
    std::set<NodeId> seen{src};
    std::deque<NodeId> queue{src};
    while (!queue.empty()) {
        NodeId v = queue.front();
        queue.pop_front();
        for (NodeId nb : g.neighbors(v))
            if (seen.insert(nb).second) queue.push_back(nb);
    }
    return seen;
}

bool is_connected(const OverlayGraph& g) {
    if (g.node_count() == 0) return true;
    return reachable_from(g, g.node_ids().front()).size() == g.node_count();
}

std::size_t component_count(const OverlayGraph& g) {
    std::set<NodeId> seen;
    std::size_t count = 0;
    for (NodeId id : g.node_ids()) {
        if (seen.contains(id)) continue;
        ++count;
        auto comp = reachable_from(g, id);
        seen.insert(comp.begin(), comp.end());
    }
    return count;
}

std::set<NodeId> articulation_points(const OverlayGraph& g) {
    const std::vector<NodeId> ids = g.node_ids();
    const std::size_t n = ids.size();
    std::map<NodeId, int> index;
    for (std::size_t i = 0; i < n; ++i) index[ids[i]] = static_cast<int>(i);

    std::vector<std::vector<int>> adj(n);
    for (std::size_t i = 0; i < n; ++i)
        for (NodeId nb : g.neighbors(ids[i])) adj[i].push_back(index[nb]);

    std::vector<int> disc(n, -1), low(n, 0), parent(n, -1);
    std::vector<bool> art(n, false);
    int timer = 0;

    struct Frame {
        int v;
        std::size_t next = 0;
    };

    for (std::size_t r = 0; r < n; ++r) {
        if (disc[r] != -1) continue;
        int root = static_cast<int>(r);
        int root_children = 0;
        std::vector<Frame> stack{{root}};
        disc[root] = low[root] = timer++;
        while (!stack.empty()) {
            Frame& f = stack.back();
            if (f.next < adj[f.v].size()) {
                int w = adj[f.v][f.next++];
                if (disc[w] == -1) {
                    parent[w] = f.v;
                    disc[w] = low[w] = timer++;
                    if (f.v == root) ++root_children;
                    stack.push_back({w});
                } else if (w != parent[f.v]) {
                    low[f.v] = std::min(low[f.v], disc[w]);
                }
            } else {
                int v = f.v;
                stack.pop_back();
                int p = parent[v];
                if (p != -1) {
                    low[p] = std::min(low[p], low[v]);
                    // non-root p is an articulation point if low[child] >= disc[p]
                    if (p != root && low[v] >= disc[p]) art[p] = true;
                }
            }
        }
        if (root_children >= 2) art[root] = true;
    }

    std::set<NodeId> out;
    for (std::size_t i = 0; i < n; ++i)
        if (art[i]) out.insert(ids[i]);
    return out;
}

bool is_biconnected(const OverlayGraph& g) {
    if (g.node_count() < 3) return false;
    if (!is_connected(g)) return false;
    return articulation_points(g).empty();
}

// Node-split unit-capacity flow ----------------------------------------------
//
// Every node other than the two terminals is split into an in/out pair joined
// by a capacity-1 arc, so each interior node can lie on at most one path.
// Terminals are single vertices, which keeps them out of path interiors.

namespace {

struct Arc {
    int to;
    int cap;
    int flow = 0;
};

struct FlowNet {
    std::vector<Arc> arcs;
    std::vector<std::vector<int>> adj;
    int source = 0;
    int sink = 0;
    // maps a flow vertex back to its NodeId (both halves of a split map to the same id)
    std::vector<NodeId> label;

    void add_arc(int from, int to, int cap) {
        adj[from].push_back(static_cast<int>(arcs.size()));
        arcs.push_back({to, cap});
        adj[to].push_back(static_cast<int>(arcs.size()));
        arcs.push_back({from, 0});
    }

    bool augment_unit() {
        std::vector<int> parent_arc(adj.size(), -1);
        std::deque<int> queue{source};
        std::vector<bool> seen(adj.size(), false);
        seen[source] = true;
        while (!queue.empty() && !seen[sink]) {
            int v = queue.front();
            queue.pop_front();
            for (int ai : adj[v]) {
                const Arc& a = arcs[ai];
                if (seen[a.to] || a.cap - a.flow <= 0) continue;
                seen[a.to] = true;
                parent_arc[a.to] = ai;
                queue.push_back(a.to);
            }
        }
        if (!seen[sink]) return false;
        for (int v = sink; v != source;) {
            int ai = parent_arc[v];
            arcs[ai].flow += 1;
            arcs[ai ^ 1].flow -= 1;
            v = arcs[ai ^ 1].to;
        }
        return true;
    }
};

// Builds the split network for terminals u, v. Vertex layout: 0 = u (source),
// 1 = v (sink), then an in/out pair per remaining node in ascending id order.
FlowNet build_split_network(const OverlayGraph& g, NodeId u, NodeId v) {
    FlowNet net;
    std::map<NodeId, int> in_vertex;
    std::vector<NodeId> ids = g.node_ids();

    int next = 2;
    net.label = {u, v};
    for (NodeId id : ids) {
        if (id == u || id == v) continue;
        in_vertex[id] = next;
        net.label.push_back(id);
        net.label.push_back(id);
        next += 2;
    }
    net.adj.resize(static_cast<std::size_t>(next));
    net.source = 0;
    net.sink = 1;

    auto out_of = [&](NodeId id) { return in_vertex[id] + 1; };

    for (NodeId id : ids) {
        if (id == u || id == v) continue;
        net.add_arc(in_vertex[id], out_of(id), 1);
    }
    for (const Edge& e : g.edge_list()) {
        if (e.a == u || e.b == u) {
            NodeId other = e.a == u ? e.b : e.a;
            net.add_arc(0, other == v ? 1 : in_vertex[other], 1);
        } else if (e.a == v || e.b == v) {
            NodeId other = e.a == v ? e.b : e.a;
            net.add_arc(out_of(other), 1, 1);
        } else {
            net.add_arc(out_of(e.a), in_vertex[e.b], 1);
            net.add_arc(out_of(e.b), in_vertex[e.a], 1);
        }
    }
    return net;
}

void require_pair(const OverlayGraph& g, NodeId u, NodeId v) {
    if (!g.has_node(u)) throw Error("node " + id_str(u) + " does not exist");
    if (!g.has_node(v)) throw Error("node " + id_str(v) + " does not exist");
    if (u == v) throw Error("node pair must be distinct, got " + id_str(u) + " twice");
}

} // namespace

bool has_two_node_disjoint_paths(const OverlayGraph& g, NodeId u, NodeId v) {
    require_pair(g, u, v);
    FlowNet net = build_split_network(g, u, v);
    return net.augment_unit() && net.augment_unit();
}

std::optional<PathPair> node_disjoint_path_pair(const OverlayGraph& g, NodeId u, NodeId v) {
    require_pair(g, u, v);
    FlowNet net = build_split_network(g, u, v);
    if (!net.augment_unit() || !net.augment_unit()) return std::nullopt;

    // Unit node capacities make each flow-carrying arc part of exactly one
    // source-sink path, so consuming arcs while walking yields simple paths.
    auto trace = [&]() {
        std::vector<NodeId> path{u};
        int at = net.source;
        while (at != net.sink) {
            for (int ai : net.adj[at]) {
                Arc& a = net.arcs[ai];
                if (a.cap > 0 && a.flow > 0) {
                    a.flow = 0;
                    if (net.label[a.to] != path.back()) path.push_back(net.label[a.to]);
                    at = a.to;
                    break;
                }
            }
        }
        return path;
    };

    PathPair pp;
    pp.first = trace();
    pp.second = trace();
    assert(is_valid_path_pair(g, pp));
    return pp;
}

std::map<NodeId, std::size_t> bfs_hops(const OverlayGraph& g, NodeId src) {
    if (!g.has_node(src)) throw Error("node " + id_str(src) + " does not exist");
    std::map<NodeId, std::size_t> dist;
    dist[src] = 0;
    std::deque<NodeId> queue{src};
    while (!queue.empty()) {
        NodeId v = queue.front();
        queue.pop_front();
        for (NodeId nb : g.neighbors(v)) {
            if (dist.contains(nb)) continue;
            dist[nb] = dist[v] + 1;
            queue.push_back(nb);
        }
    }
    dist.erase(src);
    return dist;
}

bool is_simple_path(const OverlayGraph& g, const std::vector<NodeId>& p) {
    if (p.empty()) return false;
    std::set<NodeId> seen(p.begin(), p.end());
    if (seen.size() != p.size()) return false;
    for (std::size_t i = 0; i + 1 < p.size(); ++i)
        if (!g.has_node(p[i]) || !g.has_node(p[i + 1]) || !g.has_edge(p[i], p[i + 1])) return false;
    return g.has_node(p.back());
}

bool is_valid_path_pair(const OverlayGraph& g, const PathPair& pp) {
    const auto& f = pp.first;
    const auto& s = pp.second;
    if (f.size() < 2 || s.size() < 2) return false;
    if (f.front() != s.front() || f.back() != s.back()) return false;
    if (!is_simple_path(g, f) || !is_simple_path(g, s)) return false;
    std::set<NodeId> interior_f(f.begin() + 1, f.end() - 1);
    for (std::size_t i = 1; i + 1 < s.size(); ++i)
        if (interior_f.contains(s[i])) return false;
    return true;
}

} // namespace overmesh
