#pragma once

#include <string>
#include <vector>

#include "overmesh/delivery.hpp"
#include "overmesh/graph.hpp"
#include "overmesh/metrics.hpp"
#include "overmesh/sim.hpp"
#include "overmesh/tree.hpp"

namespace overmesh {

// All emitters produce canonical bytes: compact JSON with a trailing newline,
// pairs stored low-id-first and sorted, LF line endings, '.' decimal
// separator, no locale dependence. Parsers reject malformed or unknown
// content by throwing Error.

/// {"nodes":[...],"edges":[[u,v],...],"traffic":[[u,v],...]}
std::string graph_to_json(const OverlayGraph& g);
OverlayGraph graph_from_json(const std::string& text);

/// Graphviz source; traffic-carrying edges are drawn bold, isolated nodes
/// appear as bare statements.
std::string graph_to_dot(const OverlayGraph& g);

/// {"root":1,"children":{"1":[2,3],...}} — keys ascending, leaves omitted.
std::string tree_to_json(const RootedTree& t);
RootedTree tree_from_json(const std::string& text);

/// {"approach":"leaf-chain","added":[[u,v],...]}
std::string augmentation_to_json(const Augmentation& aug);
Augmentation augmentation_from_json(const std::string& text);

/// {"source":1,"parent":{"4":"5",...}} — parent keys and values are strings.
std::string delivery_tree_to_json(const DeliveryTree& tree);
/// Parses and validates against g (every entry a mesh edge, chains reaching
/// the source). The tree may cover a subset of g's nodes.
DeliveryTree delivery_tree_from_json(const std::string& text, const OverlayGraph& g);

/// Line-oriented script: header lines seed=<u64> and policy=<lowest-id|random>
/// followed by one event per line (join | join! u v | fail k | prune | tree s).
std::string script_to_text(const ChurnScript& script);
ChurnScript script_from_text(const std::string& text);

/// One compact JSON object per line, one line per trace entry.
std::string trace_to_jsonl(const std::vector<TraceEntry>& entries);

/// CSV with header n,edges,avg_degree,max_degree,avg_hops; rationals rendered
/// to 6 decimal places.
std::string mesh_sweep_csv(const std::vector<MetricsRecord>& records);

/// CSV with header n,leaf_chain_links,grandparent_links,ratio.
std::string tree_sweep_csv(const std::vector<TreeSweepRecord>& records);

/// One line per destination, ascending: "dest primary=a-b-c backup=x-y-z"
/// with NONE when no disjoint backup exists.
std::string feeds_report(const OverlayGraph& g, const DeliveryTree& tree);

} // namespace overmesh
