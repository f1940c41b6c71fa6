// Acceptance suite: ten end-to-end checks over the library and CLI, each
// reported as a single pass/fail line. Exits nonzero if any check fails.

#include <sys/wait.h>
#include <unistd.h>

#include <algorithm>
#include <array>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <random>
#include <set>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "overmesh/delivery.hpp"
#include "overmesh/graph.hpp"
#include "overmesh/io.hpp"
#include "overmesh/mesh.hpp"
#include "overmesh/metrics.hpp"
#include "overmesh/sim.hpp"
#include "overmesh/tree.hpp"
#include "oracles.hpp"

using namespace overmesh;
namespace fs = std::filesystem;

namespace {

struct Failure : std::runtime_error {
    using std::runtime_error::runtime_error;
};

void require(bool ok, const std::string& what) {
    if (!ok) throw Failure(what);
}

// ---- criterion 1: average degree convergence -------------------------------

void check_degree_convergence() {
    OverlayGraph g;
    const TieBreakPolicy policy = TieBreakPolicy::lowest_id();
    for (NodeId id = 1; id <= 500; ++id) {
        join(g, id, policy);
        const std::size_t n = g.node_count();
        if (n < 3) continue;
        const Rational expected(4 * static_cast<std::int64_t>(n) - 6,
                                static_cast<std::int64_t>(n));
        require(avg_degree(g) == expected,
                "avg degree at n=" + std::to_string(n) + " is not (4n-6)/n");
        if (n >= 60) {
            const Rational gap = Rational(4) - avg_degree(g);
            require(gap >= Rational(0) && gap <= Rational(1, 10),
                    "avg degree at n=" + std::to_string(n) + " strays beyond 0.1 of 4");
        }
    }
}

// ---- criterion 2: hop growth trend -----------------------------------------

void check_hop_growth() {
    std::vector<std::size_t> sizes;
    for (std::size_t n = 10; n <= 200; n += 10) sizes.push_back(n);
    const auto rows = sweep_mesh(sizes, TieBreakPolicy::lowest_id());
    std::vector<double> xs;
    std::vector<double> ys;
    for (const auto& row : rows) {
        require(row.avg_hops.has_value(), "sweep row lacks avg hops");
        xs.push_back(static_cast<double>(row.n));
        ys.push_back(boost::rational_cast<double>(*row.avg_hops));
    }
    const LinearFit fit = linear_fit(xs, ys);
    require(fit.slope > 0.0, "hop trend slope is not positive");
    require(fit.r_squared >= 0.98,
            "hop trend r^2 " + std::to_string(fit.r_squared) + " below 0.98");
}

// ---- criterion 3: degree cap under joins -----------------------------------

void check_degree_cap() {
    for (std::uint64_t seed = 0; seed < 500; ++seed) {
        const std::size_t n_final = 10 + (seed * 7) % 191;
        for (int which = 0; which < 2; ++which) {
            const TieBreakPolicy policy = which == 0
                                              ? TieBreakPolicy::lowest_id()
                                              : TieBreakPolicy::seeded_random(seed);
            OverlayGraph g;
            for (NodeId id = 1; id <= n_final; ++id) {
                join(g, id, policy);
                if (g.node_count() >= 2 && max_degree(g) > 4)
                    throw Failure("max degree exceeded 4 at n=" +
                                  std::to_string(g.node_count()) + " (seed " +
                                  std::to_string(seed) + ", policy " +
                                  (which == 0 ? "lowest-id" : "random") + ")");
            }
        }
    }
}

// ---- criterion 4: biconnectivity under churn -------------------------------

void check_entries_biconnected(const RunResult& r, const std::string& label) {
    for (const auto& entry : r.entries) {
        if (entry.post_metrics.n >= 3 && !entry.post_biconnected)
            throw Failure(label + ": mesh with " + std::to_string(entry.post_metrics.n) +
                          " nodes left non-biconnected at step " +
                          std::to_string(entry.step) + " without a report");
    }
}

void check_churn_biconnectivity() {
    // Mixed scripts: joins, fails, and periodic prunes. Any invariant report
    // must reproduce from its own script prefix; none are expected at all.
    std::size_t reported = 0;
    for (std::uint64_t seed = 0; seed < 1000; ++seed) {
        const std::size_t n_joins = 8 + seed % 25;
        const std::size_t n_fails = std::min<std::size_t>(seed % 7, n_joins - 3);
        const std::size_t prune_every = std::array<std::size_t, 4>{0, 5, 9, 13}[seed % 4];
        const auto policy = seed % 2 == 0 ? TieBreakPolicy::Kind::LowestId
                                          : TieBreakPolicy::Kind::SeededRandom;
        const ChurnScript script = generate_script(seed, n_joins, n_fails, prune_every, policy);
        const RunResult r = run(script, CheckLevel::Biconnectivity);
        if (r.violation.has_value()) {
            ++reported;
            const RunResult again = run(r.violation->repro, CheckLevel::Biconnectivity);
            require(again.violation.has_value() &&
                        again.violation->message == r.violation->message,
                    "reported violation did not reproduce (seed " + std::to_string(seed) + ")");
        } else {
            check_entries_biconnected(r, "mixed seed " + std::to_string(seed));
        }
    }
    require(reported == 0,
            std::to_string(reported) + " mixed-churn runs needed a repair report");

    // Join-only plus a single fail: zero reports tolerated.
    for (std::uint64_t seed = 0; seed < 1000; ++seed) {
        const std::size_t n_joins = 4 + seed % 30;
        const auto policy = seed % 2 == 0 ? TieBreakPolicy::Kind::LowestId
                                          : TieBreakPolicy::Kind::SeededRandom;
        const ChurnScript script = generate_script(seed, n_joins, 1, 0, policy);
        const RunResult r = run(script, CheckLevel::Biconnectivity);
        require(!r.violation.has_value(),
                "single-fail script reported a violation (seed " + std::to_string(seed) + ")");
        check_entries_biconnected(r, "single-fail seed " + std::to_string(seed));
    }
}

// ---- criterion 5: augmentation link counts ---------------------------------

void check_augmentation_counts() {
    for (std::size_t levels = 2; levels <= 10; ++levels) {
        const RootedTree t = build_full_binary_tree(levels);
        const std::size_t n = t.node_count();
        const std::size_t chain = leaf_chain_augment(t).added_edges.size();
        const std::size_t gp = grandparent_augment(t).added_edges.size();
        require(chain == (n - 1) / 2,
                "leaf-chain links at levels " + std::to_string(levels) + " are not (n-1)/2");
        require(gp == n - 2,
                "grandparent links at levels " + std::to_string(levels) + " are not n-2");
        require(additional_links_count(levels, AugmentApproach::LeafChain) == chain,
                "closed-form leaf-chain count disagrees at levels " + std::to_string(levels));
        require(additional_links_count(levels, AugmentApproach::Grandparent) == gp,
                "closed-form grandparent count disagrees at levels " + std::to_string(levels));
        if (n >= 31) {
            const Rational ratio(2 * static_cast<std::int64_t>(n) - 4,
                                 static_cast<std::int64_t>(n) - 1);
            require(Rational(static_cast<std::int64_t>(gp), static_cast<std::int64_t>(chain)) ==
                        ratio,
                    "link ratio closed form disagrees at levels " + std::to_string(levels));
            require(ratio >= Rational(19, 10) && ratio <= Rational(21, 10),
                    "link ratio outside [1.9, 2.1] at levels " + std::to_string(levels));
        }
    }
}

// ---- criterion 6: augmented trees biconnected ------------------------------

void check_augmented_biconnectivity() {
    for (std::size_t levels = 2; levels <= 10; ++levels) {
        const RootedTree t = build_full_binary_tree(levels);
        for (const auto approach : {AugmentApproach::LeafChain, AugmentApproach::Grandparent}) {
            const Augmentation aug =
                approach == AugmentApproach::LeafChain ? leaf_chain_augment(t)
                                                       : grandparent_augment(t);
            const OverlayGraph g = tree_to_graph(t, aug);
            require(is_biconnected(g), "augmented tree (levels " + std::to_string(levels) +
                                           ", " + to_string(approach) + ") is not biconnected");
        }
    }
}

// ---- criterion 7: oracle agreement -----------------------------------------

void check_one_graph_against_oracles(const OverlayGraph& g, const std::string& label) {
    require(is_biconnected(g) == oracle::brute_biconnected(g),
            label + ": biconnectivity disagrees with the oracle");
    const auto ids = g.node_ids();
    for (std::size_t i = 0; i < ids.size(); ++i)
        for (std::size_t j = i + 1; j < ids.size(); ++j)
            require(has_two_node_disjoint_paths(g, ids[i], ids[j]) ==
                        oracle::brute_two_disjoint(g, ids[i], ids[j]),
                    label + ": disjoint-path answer disagrees for pair " +
                        std::to_string(ids[i]) + "," + std::to_string(ids[j]));
    for (const Edge& e : g.edge_list())
        require(is_redundant(g, e.a, e.b) == oracle::brute_redundant_by_menger(g, e.a, e.b),
                label + ": redundancy disagrees on edge " + std::to_string(e.a) + "-" +
                    std::to_string(e.b));
}

void check_oracle_agreement() {
    for (std::size_t k = 1; k <= 6; ++k) {
        const std::uint64_t masks = oracle::mask_count(k);
        for (std::uint64_t mask = 0; mask < masks; ++mask) {
            const OverlayGraph g = oracle::graph_from_mask(k, mask);
            if (!oracle::connected_without(g)) continue;
            check_one_graph_against_oracles(
                g, "k=" + std::to_string(k) + " mask=" + std::to_string(mask));
        }
    }
    std::mt19937_64 rng(20260821);
    for (int i = 0; i < 200; ++i) {
        const std::size_t n = 4 + static_cast<std::size_t>(i) % 9;
        const OverlayGraph g = oracle::random_graph(rng, n, 30);
        check_one_graph_against_oracles(g, "random graph " + std::to_string(i));
    }
}

// ---- criterion 8: hub failure repair ---------------------------------------

void check_hub_repair() {
    OverlayGraph g;
    for (NodeId id : {5, 6, 7, 8, 9}) g.add_node(id);
    for (const auto& [a, b] : std::vector<std::pair<NodeId, NodeId>>{
             {5, 7}, {6, 7}, {7, 8}, {7, 9}, {5, 6}, {6, 8}, {8, 9}})
        g.add_edge(a, b);
    require(is_biconnected(g), "hub mesh is not biconnected before the failure");
    const std::vector<Edge> before_list = g.edge_list();
    const std::set<Edge> before(before_list.begin(), before_list.end());

    const std::vector<Edge> added = repair_failure(g, 7);
    require(added == std::vector<Edge>{Edge(5, 9)}, "repair did not add exactly 5-9");

    const std::vector<Edge> after_list = g.edge_list();
    const std::set<Edge> after(after_list.begin(), after_list.end());
    std::set<Edge> removed;
    std::set_difference(before.begin(), before.end(), after.begin(), after.end(),
                        std::inserter(removed, removed.end()));
    require(removed == std::set<Edge>{Edge(5, 7), Edge(6, 7), Edge(7, 8), Edge(7, 9)},
            "repair removed the wrong edge set");
    require(after == std::set<Edge>{Edge(5, 6), Edge(5, 9), Edge(6, 8), Edge(8, 9)},
            "repaired mesh has the wrong edge set");
    require(is_biconnected(g), "repaired mesh is not biconnected");
}

// ---- criterion 9: ring double feed -----------------------------------------

void check_double_feed() {
    OverlayGraph g;
    for (NodeId id = 0; id <= 5; ++id) g.add_node(id);
    for (const auto& [a, b] : std::vector<std::pair<NodeId, NodeId>>{
             {0, 1}, {1, 2}, {2, 3}, {3, 4}, {4, 5}, {0, 5}})
        g.add_edge(a, b);
    const DeliveryTree tree =
        delivery_tree_from_parents(g, 0, {{1, 0}, {2, 1}, {3, 2}, {4, 3}});

    const auto feed = double_feed(g, tree, 4);
    require(feed.has_value(), "no backup found for the far node");
    require(feed->primary == std::vector<NodeId>{0, 1, 2, 3, 4}, "primary path is wrong");
    require(feed->backup == std::vector<NodeId>{0, 5, 4}, "backup path is wrong");
    require(extraneous_edges(g, tree) == std::set<Edge>{Edge(0, 5), Edge(4, 5)},
            "extraneous edge set is wrong");
}

// ---- criterion 10: CLI determinism -----------------------------------------

struct CmdResult {
    int code = -1;
    std::string out;
    std::string err;
};

fs::path accept_dir() {
    static const fs::path dir = [] {
        fs::path d = fs::temp_directory_path() /
                     ("overmesh_accept_" + std::to_string(::getpid()));
        fs::create_directories(d);
        return d;
    }();
    return dir;
}

std::string slurp(const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

fs::path write_file(const std::string& name, const std::string& content) {
    const fs::path p = accept_dir() / name;
    std::ofstream out(p, std::ios::binary);
    out << content;
    return p;
}

CmdResult run_cli(const std::string& args) {
    static int serial = 0;
    ++serial;
    const fs::path out = accept_dir() / ("out" + std::to_string(serial));
    const fs::path err = accept_dir() / ("err" + std::to_string(serial));
    const std::string cmd = std::string("'") + OVERMESH_CLI_PATH + "' " + args + " >'" +
                            out.string() + "' 2>'" + err.string() + "'";
    const int status = std::system(cmd.c_str());
    CmdResult r;
    if (status != -1 && WIFEXITED(status)) r.code = WEXITSTATUS(status);
    r.out = slurp(out);
    r.err = slurp(err);
    return r;
}

void check_cli_determinism() {
    const fs::path loop = write_file(
        "loop.json",
        R"({"nodes":[0,1,2,3,4,5],"edges":[[0,1],[0,5],[1,2],[2,3],[3,4],[4,5]],"traffic":[]})"
        "\n");
    const fs::path k4 = write_file(
        "k4.json",
        R"({"nodes":[1,2,3,4],"edges":[[1,2],[1,3],[1,4],[2,3],[2,4],[3,4]],"traffic":[]})"
        "\n");
    const fs::path hub = write_file(
        "hub.json",
        R"({"nodes":[5,6,7,8,9],"edges":[[5,6],[5,7],[6,7],[6,8],[7,8],[7,9],[8,9]],"traffic":[]})"
        "\n");
    const CmdResult gen = run_cli("sim gen --seed 42 --joins 20 --fails 4 --prune-every 3");
    require(gen.code == 0, "sim gen failed while preparing a script");
    const fs::path script = write_file("gen.script", gen.out);

    const std::vector<std::string> commands = {
        "mesh build --nodes 60",
        "mesh build --nodes 45 --policy random --seed 11",
        "mesh build --nodes 8 --format dot",
        "mesh prune --in '" + k4.string() + "'",
        "mesh fail --node 7 --in '" + hub.string() + "'",
        "tree build --levels 6",
        "tree augment --levels 6 --approach leaf-chain",
        "tree augment --levels 6 --approach grandparent",
        "delivery tree --in '" + loop.string() + "' --source 0",
        "delivery feeds --in '" + loop.string() + "' --source 0",
        "sim gen --seed 42 --joins 20 --fails 4 --prune-every 3 --policy random",
        "sim run --in '" + script.string() + "' --check full",
        "sweep mesh --from 10 --to 60 --step 10 --policy random --seed 2",
        "sweep trees --from 2 --to 8",
    };
    for (const std::string& cmd : commands) {
        const CmdResult a = run_cli(cmd);
        const CmdResult b = run_cli(cmd);
        require(a.code == b.code, "exit code differs across reruns of: " + cmd);
        require(a.out == b.out, "stdout differs across reruns of: " + cmd);
        require(a.err == b.err, "stderr differs across reruns of: " + cmd);
    }
}

}  // namespace

int main() {
    const std::vector<std::pair<std::string, std::function<void()>>> criteria = {
        {"average degree convergence", check_degree_convergence},
        {"hop growth trend", check_hop_growth},
        {"degree cap under joins", check_degree_cap},
        {"biconnectivity under churn", check_churn_biconnectivity},
        {"augmentation link counts", check_augmentation_counts},
        {"augmented trees biconnected", check_augmented_biconnectivity},
        {"oracle agreement", check_oracle_agreement},
        {"hub failure repair", check_hub_repair},
        {"ring double feed", check_double_feed},
        {"CLI determinism", check_cli_determinism},
    };
    int failures = 0;
    for (std::size_t i = 0; i < criteria.size(); ++i) {
        const auto& [label, fn] = criteria[i];
        std::string verdict = "PASS";
        try {
            fn();
        } catch (const std::exception& e) {
            verdict = std::string("FAIL — ") + e.what();
            ++failures;
        }
        std::cout << "criterion " << (i + 1) << " (" << label << "): " << verdict << "\n";
    }
    if (failures != 0) {
        std::cout << failures << " criterion(s) failed\n";
        return 1;
    }
    std::cout << "all criteria passed\n";
    return 0;
}
