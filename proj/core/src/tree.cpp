#include "overmesh/tree.hpp"

#include <algorithm>
#include <deque>
#include <set>

namespace overmesh {

std::vector<NodeId> RootedTree::node_ids() const {
    std::vector<NodeId> ids{root};
    for (const auto& [id, _] : parent) ids.push_back(id);
    std::sort(ids.begin(), ids.end());
    return ids;
}

bool RootedTree::has_node(NodeId id) const {
    return id == root || parent.contains(id);
}

bool RootedTree::is_leaf(NodeId id) const {
    auto it = children.find(id);
    return it == children.end() || it->second.empty();
}

std::vector<NodeId> RootedTree::leaves_in_order() const {
    std::vector<NodeId> leaves;
    std::vector<NodeId> stack{root};
    while (!stack.empty()) {
        NodeId v = stack.back();
        stack.pop_back();
        auto it = children.find(v);
        if (it == children.end() || it->second.empty()) {
            leaves.push_back(v);
            continue;
        }
        for (auto c = it->second.rbegin(); c != it->second.rend(); ++c) stack.push_back(*c);
    }
    return leaves;
}

std::map<NodeId, std::size_t> RootedTree::depths() const {
    std::map<NodeId, std::size_t> depth{{root, 0}};
    std::deque<NodeId> queue{root};
    while (!queue.empty()) {
        NodeId v = queue.front();
        queue.pop_front();
        auto it = children.find(v);
        if (it == children.end()) continue;
        for (NodeId c : it->second) {
            depth[c] = depth[v] + 1;
            queue.push_back(c);
        }
    }
    return depth;
}

void RootedTree::validate() const {
    if (parent.contains(root)) throw Error("root " + std::to_string(root) + " has a parent");
    for (const auto& [child, par] : parent) {
        if (child == par) throw Error("node " + std::to_string(child) + " is its own parent");
        if (par != root && !parent.contains(par))
            throw Error("parent " + std::to_string(par) + " of " + std::to_string(child) + " is not in the tree");
        auto it = children.find(par);
        if (it == children.end() ||
            std::find(it->second.begin(), it->second.end(), child) == it->second.end())
            throw Error("children list of " + std::to_string(par) + " is missing " + std::to_string(child));
    }
    std::size_t listed = 0;
    for (const auto& [par, kids] : children) {
        if (!has_node(par)) throw Error("children map references unknown node " + std::to_string(par));
        std::set<NodeId> seen;
        for (NodeId c : kids) {
            if (!seen.insert(c).second)
                throw Error("duplicate child " + std::to_string(c) + " under " + std::to_string(par));
            auto it = parent.find(c);
            if (it == parent.end() || it->second != par)
                throw Error("child " + std::to_string(c) + " does not point back to " + std::to_string(par));
        }
        listed += kids.size();
    }
    if (listed != parent.size()) throw Error("children lists and parent map disagree");
    // reachability from root rules out cycles among parent entries
    if (depths().size() != node_count()) throw Error("tree has unreachable nodes or a cycle");
}

std::string to_string(AugmentApproach approach) {
    return approach == AugmentApproach::LeafChain ? "leaf-chain" : "grandparent";
}

AugmentApproach augment_approach_from_string(const std::string& s) {
    if (s == "leaf-chain") return AugmentApproach::LeafChain;
    if (s == "grandparent") return AugmentApproach::Grandparent;
    throw Error("unknown augmentation approach '" + s + "'");
}

RootedTree build_full_binary_tree(std::size_t levels) {
    if (levels < 1) throw Error("levels must be >= 1");
    if (levels > 25) throw Error("levels must be <= 25");
    const NodeId n = (NodeId{1} << levels) - 1;
    RootedTree t;
    t.root = 1;
    for (NodeId id = 1; id <= n; ++id) {
        if (2 * id <= n) t.children[id] = {2 * id, 2 * id + 1};
        if (id > 1) t.parent[id] = id / 2;
    }
    return t;
}

Augmentation leaf_chain_augment(const RootedTree& t) {
    Augmentation aug{AugmentApproach::LeafChain, {}};
    std::vector<NodeId> leaves = t.leaves_in_order();
    for (std::size_t i = 0; i + 1 < leaves.size(); ++i)
        aug.added_edges.emplace_back(leaves[i], leaves[i + 1]);
    return aug;
}

Augmentation grandparent_augment(const RootedTree& t) {
    Augmentation aug{AugmentApproach::Grandparent, {}};
    for (NodeId id : t.node_ids()) {
        auto p = t.parent.find(id);
        if (p == t.parent.end()) continue;
        auto gp = t.parent.find(p->second);
        if (gp == t.parent.end()) continue;
        aug.added_edges.emplace_back(id, gp->second);
    }
    // Root children have no grandparent: pair them left to right, and link an
    // odd leftover to its nearest left sibling.
    auto it = t.children.find(t.root);
    if (it != t.children.end()) {
        const std::vector<NodeId>& sibs = it->second;
        for (std::size_t i = 0; i + 1 < sibs.size(); i += 2)
            aug.added_edges.emplace_back(sibs[i], sibs[i + 1]);
        if (sibs.size() >= 3 && sibs.size() % 2 == 1)
            aug.added_edges.emplace_back(sibs[sibs.size() - 2], sibs.back());
    }
    return aug;
}

OverlayGraph tree_to_graph(const RootedTree& t, const std::optional<Augmentation>& aug) {
    OverlayGraph g;
    for (NodeId id : t.node_ids()) g.add_node(id);
    for (const auto& [child, par] : t.parent) g.add_edge(child, par);
    if (aug) {
        for (const Edge& e : aug->added_edges) {
            if (!t.has_node(e.a) || !t.has_node(e.b))
                throw Error("augmentation edge " + std::to_string(e.a) + "-" + std::to_string(e.b) +
                            " references a node outside the tree");
            g.add_edge(e.a, e.b);
        }
    }
    return g;
}

std::size_t additional_links_count(std::size_t levels, AugmentApproach approach) {
    if (levels < 2) throw Error("levels must be >= 2");
    if (levels > 25) throw Error("levels must be <= 25");
    const std::size_t n = (std::size_t{1} << levels) - 1;
    return approach == AugmentApproach::LeafChain ? (n - 1) / 2 : n - 2;
}

} // namespace overmesh
