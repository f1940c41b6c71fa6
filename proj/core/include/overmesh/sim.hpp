#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "overmesh/graph.hpp"
#include "overmesh/mesh.hpp"
#include "overmesh/metrics.hpp"

namespace overmesh {

/// One churn event. Argument meaning per kind:
///   Join         none (the engine assigns the next fresh id)
///   JoinExplicit the two attachment targets
///   Fail         the failing node
///   Prune        none
///   BuildTree    the delivery-tree source
struct ChurnEvent {
    enum class Kind { Join, JoinExplicit, Fail, Prune, BuildTree };

    Kind kind = Kind::Join;
    std::vector<NodeId> args;
};

/// A replayable event sequence. The seed drives tie-breaking when the policy
/// is SeededRandom, and script generation for generated scripts.
struct ChurnScript {
    std::uint64_t seed = 0;
    TieBreakPolicy::Kind policy = TieBreakPolicy::Kind::LowestId;
    std::vector<ChurnEvent> events;
};

/// Mesh state immediately after one applied event. Steps count from 1.
struct TraceEntry {
    std::size_t step = 0;
    std::string event; // e.g. "join 5", "join! 5 2 3", "fail 7", "prune", "tree 1"
    std::vector<Edge> edges_added;
    std::vector<Edge> edges_removed;
    bool post_biconnected = false;
    MetricsRecord post_metrics;
};

/// An invariant failure together with the shortest trailing-truncated script
/// prefix that reproduces it.
struct ViolationReport {
    std::size_t step = 0;
    std::string message;
    ChurnScript repro;
};

struct RunResult {
    std::vector<TraceEntry> entries;
    std::optional<ViolationReport> violation; // set iff the run halted early
};

/// What run() asserts after every event.
enum class CheckLevel { None, Biconnectivity, Full };

std::string to_string(CheckLevel level);
CheckLevel check_level_from_string(const std::string& s);

/// Applies the script in order, recording one TraceEntry per event. At
/// Biconnectivity level and above, asserts the mesh is biconnected after
/// every event once it has >= 3 nodes; Full additionally asserts the 2N-3
/// edge count and max degree <= 4 while the history consists of joins only
/// (either form; adversarial explicit targets can breach the degree bound,
/// which is exactly what Full is meant to surface). On an assertion failure
/// the run halts and reports the failing prefix; malformed events throw
/// instead.
RunResult run(const ChurnScript& script, CheckLevel check_level);

/// Deterministic pseudo-random script: n_joins joins and n_fails fails,
/// interleaved uniformly by remaining counts (a fail is only scheduled while
/// more than 3 nodes would survive it; its target is uniform among live
/// nodes), plus a prune after every prune_every-th join/fail (0 = never).
/// Requires n_joins >= n_fails + 3 so at least 3 nodes stay live.
ChurnScript generate_script(std::uint64_t seed, std::size_t n_joins, std::size_t n_fails,
                            std::size_t prune_every,
                            TieBreakPolicy::Kind policy = TieBreakPolicy::Kind::LowestId);

} // namespace overmesh
