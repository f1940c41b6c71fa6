#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include <boost/rational.hpp>

#include "overmesh/graph.hpp"
#include "overmesh/mesh.hpp"

namespace overmesh {

/// Exact rational used for every reported metric; values are rendered to
/// fixed decimals only at the serialization boundary.
using Rational = boost::rational<std::int64_t>;

/// Renders a rational as a fixed-point decimal string with `places` digits
/// after the point, rounding halves away from zero. `places` must be >= 1.
std::string to_decimal_string(const Rational& value, int places = 6);

/// One metrics snapshot: a sweep row or a simulator trace record.
struct MetricsRecord {
    std::size_t n = 0;
    std::size_t edges = 0;
    std::optional<Rational> avg_degree; // absent for the empty graph
    std::size_t max_degree = 0;
    std::optional<Rational> avg_hops;   // absent when n < 2 or disconnected
    std::optional<std::string> approach;
};

/// Mean node degree, exactly 2*edges/n. Throws on an empty graph.
Rational avg_degree(const OverlayGraph& g);

/// Mean BFS hop count over all n*(n-1)/2 unordered node pairs. Throws when
/// n < 2 or the graph is disconnected.
Rational avg_hops(const OverlayGraph& g);

/// Largest node degree; 0 for an empty graph.
std::size_t max_degree(const OverlayGraph& g);

/// Full snapshot of g; avg_degree / avg_hops are left absent where they are
/// undefined instead of throwing.
MetricsRecord metrics_for(const OverlayGraph& g);

/// Grows one least-degree mesh through the requested sizes and records
/// metrics at each. Sizes must be >= 2 and strictly ascending; the result is
/// deterministic for a fixed policy (including its seed).
std::vector<MetricsRecord> sweep_mesh(const std::vector<std::size_t>& n_values,
                                      const TieBreakPolicy& policy);

/// One row of the tree-augmentation sweep: additional links required by each
/// approach on the full binary tree of the given depth.
struct TreeSweepRecord {
    std::size_t levels = 0;
    std::size_t n = 0;                 // 2^levels - 1
    std::size_t leaf_chain_links = 0;  // (n-1)/2
    std::size_t grandparent_links = 0; // n-2
    Rational ratio;                    // grandparent / leaf-chain
};

/// Additional-link counts per depth; every depth must be >= 2. Rows keep the
/// input order.
std::vector<TreeSweepRecord> sweep_trees(const std::vector<std::size_t>& levels_values);

/// Ordinary least-squares line fit.
struct LinearFit {
    double slope = 0.0;
    double intercept = 0.0;
    double r_squared = 0.0; // defined as 0 when ys have zero variance
};

/// Fits ys ~ slope*xs + intercept. Requires >= 3 points with distinct xs.
LinearFit linear_fit(const std::vector<double>& xs, const std::vector<double>& ys);

} // namespace overmesh
