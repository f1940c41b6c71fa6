#include "overmesh/metrics.hpp"

#include <algorithm>
#include <cmath>

#include <boost/multiprecision/cpp_int.hpp>

#include "overmesh/tree.hpp"

namespace overmesh {

std::string to_decimal_string(const Rational& value, int places) {
    if (places < 1) throw Error("decimal rendering needs at least 1 place");
    using boost::multiprecision::cpp_int;
    cpp_int num = value.numerator(); // denominator is kept positive by boost::rational
    cpp_int den = value.denominator();
    bool negative = num < 0;
    if (negative) num = -num;
    cpp_int scale = 1;
    for (int i = 0; i < places; ++i) scale *= 10;
    cpp_int scaled = (2 * num * scale + den) / (2 * den); // half away from zero
    std::string frac = cpp_int(scaled % scale).str();
    frac.insert(0, static_cast<std::size_t>(places) - frac.size(), '0');
    return (negative ? "-" : "") + cpp_int(scaled / scale).str() + "." + frac;
}

Rational avg_degree(const OverlayGraph& g) {
    if (g.node_count() == 0) throw Error("average degree of an empty graph is undefined");
    return {static_cast<std::int64_t>(2 * g.edge_count()), static_cast<std::int64_t>(g.node_count())};
}

Rational avg_hops(const OverlayGraph& g) {
    std::size_t n = g.node_count();
    if (n < 2) throw Error("average hops needs at least 2 nodes");
    std::int64_t total = 0;
    for (NodeId src : g.node_ids()) {
        auto hops = bfs_hops(g, src);
        if (hops.size() + 1 != n) throw Error("average hops of a disconnected graph is undefined");
        for (const auto& [dst, dist] : hops)
            if (dst > src) total += static_cast<std::int64_t>(dist);
    }
    return {total, static_cast<std::int64_t>(n * (n - 1) / 2)};
}

std::size_t max_degree(const OverlayGraph& g) {
    std::size_t best = 0;
    for (NodeId id : g.node_ids()) best = std::max(best, g.degree(id));
    return best;
}

MetricsRecord metrics_for(const OverlayGraph& g) {
    MetricsRecord rec;
    rec.n = g.node_count();
    rec.edges = g.edge_count();
    if (rec.n >= 1) rec.avg_degree = avg_degree(g);
    rec.max_degree = max_degree(g);
    if (rec.n >= 2 && is_connected(g)) rec.avg_hops = avg_hops(g);
    return rec;
}

std::vector<MetricsRecord> sweep_mesh(const std::vector<std::size_t>& n_values,
                                      const TieBreakPolicy& policy) {
    for (std::size_t i = 0; i < n_values.size(); ++i) {
        if (n_values[i] < 2) throw Error("mesh sweep sizes must be at least 2");
        if (i > 0 && n_values[i] <= n_values[i - 1])
            throw Error("mesh sweep sizes must be strictly ascending");
    }
    std::vector<MetricsRecord> out;
    OverlayGraph g;
    NodeId next = 1;
    for (std::size_t target : n_values) {
        while (g.node_count() < target) join(g, next++, policy);
        out.push_back(metrics_for(g));
    }
    return out;
}

std::vector<TreeSweepRecord> sweep_trees(const std::vector<std::size_t>& levels_values) {
    std::vector<TreeSweepRecord> out;
    for (std::size_t levels : levels_values) {
        TreeSweepRecord rec;
        rec.levels = levels;
        rec.leaf_chain_links = additional_links_count(levels, AugmentApproach::LeafChain);
        rec.grandparent_links = additional_links_count(levels, AugmentApproach::Grandparent);
        rec.n = (std::size_t{1} << levels) - 1;
        rec.ratio = {static_cast<std::int64_t>(rec.grandparent_links),
                     static_cast<std::int64_t>(rec.leaf_chain_links)};
        out.push_back(rec);
    }
    return out;
}

LinearFit linear_fit(const std::vector<double>& xs, const std::vector<double>& ys) {
    if (xs.size() != ys.size()) throw Error("linear fit needs equal-length inputs");
    if (xs.size() < 3) throw Error("linear fit needs at least 3 points");
    std::vector<double> sorted = xs;
    std::sort(sorted.begin(), sorted.end());
    if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end())
        throw Error("linear fit needs distinct x values");

    double n = static_cast<double>(xs.size());
    double mean_x = 0.0, mean_y = 0.0;
    for (std::size_t i = 0; i < xs.size(); ++i) {
        mean_x += xs[i];
        mean_y += ys[i];
    }
    mean_x /= n;
    mean_y /= n;

    double sxx = 0.0, sxy = 0.0;
    for (std::size_t i = 0; i < xs.size(); ++i) {
        sxx += (xs[i] - mean_x) * (xs[i] - mean_x);
        sxy += (xs[i] - mean_x) * (ys[i] - mean_y);
    }

    LinearFit fit;
    fit.slope = sxy / sxx;
    fit.intercept = mean_y - fit.slope * mean_x;

    double ss_total = 0.0, ss_residual = 0.0;
    for (std::size_t i = 0; i < xs.size(); ++i) {
        ss_total += (ys[i] - mean_y) * (ys[i] - mean_y);
        double err = ys[i] - (fit.slope * xs[i] + fit.intercept);
        ss_residual += err * err;
    }
    fit.r_squared = ss_total == 0.0 ? 0.0 : std::clamp(1.0 - ss_residual / ss_total, 0.0, 1.0);
    return fit;
}

} // namespace overmesh
