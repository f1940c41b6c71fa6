#include "overmesh/io.hpp"

#include <algorithm>
#include <charconv>
#include <initializer_list>
#include <sstream>

#include <boost/rational.hpp>

#include "json.hpp"

namespace overmesh {

namespace {

using nlohmann::ordered_json;

ordered_json parse_json(const std::string& text, const char* what) {
    try {
        return ordered_json::parse(text);
    } catch (const nlohmann::json::exception& e) {
        throw Error(std::string("invalid ") + what + " JSON: " + e.what());
    }
}

void require_keys(const ordered_json& j, std::initializer_list<const char*> required,
                  const char* what) {
    if (!j.is_object()) throw Error(std::string(what) + " JSON must be an object");
    for (const char* key : required)
        if (!j.contains(key)) throw Error(std::string(what) + " JSON is missing key '" + key + "'");
    for (const auto& [key, _] : j.items())
        if (std::none_of(required.begin(), required.end(),
                         [&key](const char* r) { return key == r; }))
            throw Error(std::string(what) + " JSON has unexpected key '" + key + "'");
}

NodeId node_from_json(const ordered_json& v, const char* what) {
    if (!v.is_number_unsigned())
        throw Error(std::string(what) + " JSON: expected a non-negative integer node id");
    return v.get<NodeId>();
}

Edge edge_from_json(const ordered_json& v, const char* what) {
    if (!v.is_array() || v.size() != 2)
        throw Error(std::string(what) + " JSON: expected a [u,v] pair");
    return {node_from_json(v[0], what), node_from_json(v[1], what)};
}

ordered_json pairs_json(const std::vector<Edge>& edges) {
    ordered_json arr = ordered_json::array();
    for (const Edge& e : edges) arr.push_back(ordered_json::array({e.a, e.b}));
    return arr;
}

std::uint64_t parse_u64(const std::string& s, const char* what) {
    std::uint64_t value{};
    const char* end = s.data() + s.size();
    auto [ptr, ec] = std::from_chars(s.data(), end, value);
    if (ec != std::errc{} || ptr != end)
        throw Error(std::string("invalid ") + what + " '" + s + "'");
    return value;
}

std::string dump_line(const ordered_json& j) { return j.dump() + "\n"; }

} // namespace

std::string graph_to_json(const OverlayGraph& g) {
    ordered_json j;
    j["nodes"] = g.node_ids();
    j["edges"] = pairs_json(g.edge_list());
    j["traffic"] = pairs_json(g.traffic_edges());
    return dump_line(j);
}

OverlayGraph graph_from_json(const std::string& text) {
    ordered_json j = parse_json(text, "graph");
    require_keys(j, {"nodes", "edges", "traffic"}, "graph");
    if (!j["nodes"].is_array() || !j["edges"].is_array() || !j["traffic"].is_array())
        throw Error("graph JSON: nodes, edges, and traffic must be arrays");
    OverlayGraph g;
    for (const auto& n : j["nodes"]) g.add_node(node_from_json(n, "graph"));
    for (const auto& e : j["edges"]) {
        Edge edge = edge_from_json(e, "graph");
        g.add_edge(edge.a, edge.b);
    }
    for (const auto& e : j["traffic"]) {
        Edge edge = edge_from_json(e, "graph");
        g.set_traffic(edge.a, edge.b, true);
    }
    return g;
}

std::string graph_to_dot(const OverlayGraph& g) {
    std::string out = "graph G {\n";
    for (NodeId id : g.node_ids())
        if (g.degree(id) == 0) out += "  " + std::to_string(id) + ";\n";
    for (const Edge& e : g.edge_list()) {
        out += "  " + std::to_string(e.a) + " -- " + std::to_string(e.b);
        if (g.carries_traffic(e.a, e.b)) out += " [style=bold]";
        out += ";\n";
    }
    return out + "}\n";
}

std::string tree_to_json(const RootedTree& t) {
    ordered_json j;
    j["root"] = t.root;
    ordered_json kids = ordered_json::object();
    for (const auto& [id, list] : t.children)
        if (!list.empty()) kids[std::to_string(id)] = list;
    j["children"] = kids;
    return dump_line(j);
}

RootedTree tree_from_json(const std::string& text) {
    ordered_json j = parse_json(text, "tree");
    require_keys(j, {"root", "children"}, "tree");
    if (!j["children"].is_object()) throw Error("tree JSON: children must be an object");
    RootedTree t;
    t.root = node_from_json(j["root"], "tree");
    for (const auto& [key, val] : j["children"].items()) {
        NodeId parent = parse_u64(key, "tree node key");
        if (!val.is_array() || val.empty())
            throw Error("tree JSON: children lists must be non-empty arrays");
        std::vector<NodeId> list;
        for (const auto& c : val) list.push_back(node_from_json(c, "tree"));
        t.children[parent] = list;
        for (NodeId c : list) {
            if (t.parent.contains(c))
                throw Error("tree JSON: node " + std::to_string(c) + " has two parents");
            t.parent[c] = parent;
        }
    }
    if (t.parent.contains(t.root)) throw Error("tree JSON: the root must not appear as a child");
    t.validate();
    return t;
}

std::string augmentation_to_json(const Augmentation& aug) {
    ordered_json j;
    j["approach"] = to_string(aug.approach);
    std::vector<Edge> sorted = aug.added_edges;
    std::sort(sorted.begin(), sorted.end());
    j["added"] = pairs_json(sorted);
    return dump_line(j);
}

Augmentation augmentation_from_json(const std::string& text) {
    ordered_json j = parse_json(text, "augmentation");
    require_keys(j, {"approach", "added"}, "augmentation");
    if (!j["approach"].is_string() || !j["added"].is_array())
        throw Error("augmentation JSON: approach must be a string and added an array");
    Augmentation aug;
    aug.approach = augment_approach_from_string(j["approach"].get<std::string>());
    std::set<Edge> seen;
    for (const auto& e : j["added"]) {
        Edge edge = edge_from_json(e, "augmentation");
        if (!seen.insert(edge).second)
            throw Error("augmentation JSON: duplicate added edge " + std::to_string(edge.a) + "-" +
                        std::to_string(edge.b));
        aug.added_edges.push_back(edge);
    }
    return aug;
}

std::string delivery_tree_to_json(const DeliveryTree& tree) {
    ordered_json j;
    j["source"] = tree.source;
    ordered_json parents = ordered_json::object();
    for (const auto& [child, parent] : tree.parent)
        parents[std::to_string(child)] = std::to_string(parent);
    j["parent"] = parents;
    return dump_line(j);
}

DeliveryTree delivery_tree_from_json(const std::string& text, const OverlayGraph& g) {
    ordered_json j = parse_json(text, "delivery tree");
    require_keys(j, {"source", "parent"}, "delivery tree");
    if (!j["parent"].is_object()) throw Error("delivery tree JSON: parent must be an object");
    NodeId source = node_from_json(j["source"], "delivery tree");
    std::map<NodeId, NodeId> parent;
    for (const auto& [key, val] : j["parent"].items()) {
        if (!val.is_string()) throw Error("delivery tree JSON: parent values must be strings");
        parent[parse_u64(key, "delivery tree node key")] =
            parse_u64(val.get<std::string>(), "delivery tree parent value");
    }
    return delivery_tree_from_parents(g, source, parent);
}

std::string script_to_text(const ChurnScript& script) {
    std::string out = "seed=" + std::to_string(script.seed) + "\n";
    out += "policy=";
    out += script.policy == TieBreakPolicy::Kind::SeededRandom ? "random" : "lowest-id";
    out += "\n";
    for (const ChurnEvent& ev : script.events) {
        switch (ev.kind) {
            case ChurnEvent::Kind::Join: out += "join"; break;
            case ChurnEvent::Kind::JoinExplicit:
                out += "join! " + std::to_string(ev.args.at(0)) + " " + std::to_string(ev.args.at(1));
                break;
            case ChurnEvent::Kind::Fail: out += "fail " + std::to_string(ev.args.at(0)); break;
            case ChurnEvent::Kind::Prune: out += "prune"; break;
            case ChurnEvent::Kind::BuildTree: out += "tree " + std::to_string(ev.args.at(0)); break;
        }
        out += "\n";
    }
    return out;
}

namespace {

std::vector<std::string> split_words(const std::string& line) {
    std::istringstream in(line);
    std::vector<std::string> words;
    std::string w;
    while (in >> w) words.push_back(w);
    return words;
}

} // namespace

ChurnScript script_from_text(const std::string& text) {
    std::vector<std::string> lines;
    std::istringstream in(text);
    std::string raw;
    while (std::getline(in, raw)) {
        const auto begin = raw.find_first_not_of(" \t\r");
        if (begin == std::string::npos) continue; // blank line
        lines.push_back(raw.substr(begin, raw.find_last_not_of(" \t\r") - begin + 1));
    }
    if (lines.size() < 2 || !lines[0].starts_with("seed=") || !lines[1].starts_with("policy="))
        throw Error("script must start with seed=<u64> and policy=<lowest-id|random> lines");

    ChurnScript script;
    script.seed = parse_u64(lines[0].substr(5), "script seed");
    const std::string policy = lines[1].substr(7);
    if (policy == "lowest-id")
        script.policy = TieBreakPolicy::Kind::LowestId;
    else if (policy == "random")
        script.policy = TieBreakPolicy::Kind::SeededRandom;
    else
        throw Error("unknown script policy '" + policy + "' (expected lowest-id or random)");

    for (std::size_t i = 2; i < lines.size(); ++i) {
        const std::vector<std::string> words = split_words(lines[i]);
        ChurnEvent ev;
        if (words[0] == "join" && words.size() == 1) {
            ev.kind = ChurnEvent::Kind::Join;
        } else if (words[0] == "join!" && words.size() == 3) {
            ev.kind = ChurnEvent::Kind::JoinExplicit;
            ev.args = {parse_u64(words[1], "join! target"), parse_u64(words[2], "join! target")};
        } else if (words[0] == "fail" && words.size() == 2) {
            ev.kind = ChurnEvent::Kind::Fail;
            ev.args = {parse_u64(words[1], "fail target")};
        } else if (words[0] == "prune" && words.size() == 1) {
            ev.kind = ChurnEvent::Kind::Prune;
        } else if (words[0] == "tree" && words.size() == 2) {
            ev.kind = ChurnEvent::Kind::BuildTree;
            ev.args = {parse_u64(words[1], "tree source")};
        } else {
            throw Error("bad script line '" + lines[i] + "'");
        }
        script.events.push_back(ev);
    }
    return script;
}

namespace {

ordered_json metrics_json(const MetricsRecord& m) {
    ordered_json j;
    j["n"] = m.n;
    j["edges"] = m.edges;
    j["avg_degree"] =
        m.avg_degree ? ordered_json(boost::rational_cast<double>(*m.avg_degree)) : ordered_json(nullptr);
    j["max_degree"] = m.max_degree;
    j["avg_hops"] =
        m.avg_hops ? ordered_json(boost::rational_cast<double>(*m.avg_hops)) : ordered_json(nullptr);
    if (m.approach) j["approach"] = *m.approach;
    return j;
}

} // namespace

std::string trace_to_jsonl(const std::vector<TraceEntry>& entries) {
    std::string out;
    for (const TraceEntry& e : entries) {
        ordered_json j;
        j["step"] = e.step;
        j["event"] = e.event;
        j["edges_added"] = pairs_json(e.edges_added);
        j["edges_removed"] = pairs_json(e.edges_removed);
        j["post_biconnected"] = e.post_biconnected;
        j["post_metrics"] = metrics_json(e.post_metrics);
        out += dump_line(j);
    }
    return out;
}

std::string mesh_sweep_csv(const std::vector<MetricsRecord>& records) {
    std::string out = "n,edges,avg_degree,max_degree,avg_hops\n";
    for (const MetricsRecord& r : records) {
        if (!r.avg_degree || !r.avg_hops)
            throw Error("mesh sweep rows need defined avg_degree and avg_hops");
        out += std::to_string(r.n) + "," + std::to_string(r.edges) + "," +
               to_decimal_string(*r.avg_degree) + "," + std::to_string(r.max_degree) + "," +
               to_decimal_string(*r.avg_hops) + "\n";
    }
    return out;
}

std::string tree_sweep_csv(const std::vector<TreeSweepRecord>& records) {
    std::string out = "n,leaf_chain_links,grandparent_links,ratio\n";
    for (const TreeSweepRecord& r : records)
        out += std::to_string(r.n) + "," + std::to_string(r.leaf_chain_links) + "," +
               std::to_string(r.grandparent_links) + "," + to_decimal_string(r.ratio) + "\n";
    return out;
}

namespace {

std::string path_string(const std::vector<NodeId>& path) {
    std::string s;
    for (NodeId id : path) {
        if (!s.empty()) s += "-";
        s += std::to_string(id);
    }
    return s;
}

} // namespace

std::string feeds_report(const OverlayGraph& g, const DeliveryTree& tree) {
    std::string out;
    for (NodeId dest : tree.node_ids()) {
        if (dest == tree.source) continue;
        auto feed = double_feed(g, tree, dest);
        out += std::to_string(dest) + " primary=" + path_string(tree.path_to(dest)) + " backup=";
        out += feed ? path_string(feed->backup) : "NONE";
        out += "\n";
    }
    return out;
}

} // namespace overmesh
