#include <cstdint>
#include <fstream>
#include <iostream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "CLI11.hpp"

#include "overmesh/delivery.hpp"
#include "overmesh/graph.hpp"
#include "overmesh/io.hpp"
#include "overmesh/mesh.hpp"
#include "overmesh/metrics.hpp"
#include "overmesh/sim.hpp"
#include "overmesh/tree.hpp"

namespace {

using namespace overmesh;

/// Flag combinations CLI11 cannot express (reported with exit code 2).
struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

std::string read_input(const std::string& path) {
    std::ostringstream buf;
    if (path == "-") {
        buf << std::cin.rdbuf();
    } else {
        std::ifstream in(path, std::ios::binary);
        if (!in) throw Error("cannot read '" + path + "'");
        buf << in.rdbuf();
    }
    return buf.str();
}

void write_output(const std::string& path, const std::string& data) {
    if (path == "-") {
        std::cout << data;
        std::cout.flush();
        return;
    }
    std::ofstream out(path, std::ios::binary);
    if (!out) throw Error("cannot write '" + path + "'");
    out << data;
    if (!out) throw Error("failed writing '" + path + "'");
}

TieBreakPolicy make_policy(const std::string& name, bool seed_given, std::uint64_t seed) {
    if (name == "random") {
        if (!seed_given) throw UsageError("--policy random requires an explicit --seed");
        return TieBreakPolicy::seeded_random(seed);
    }
    return TieBreakPolicy::lowest_id();
}

std::vector<std::size_t> inclusive_range(std::size_t from, std::size_t to, std::size_t step) {
    if (to < from) throw UsageError("--to must not be smaller than --from");
    std::vector<std::size_t> values;
    for (std::size_t v = from; v <= to; v += step) values.push_back(v);
    return values;
}

const auto policy_names = CLI::IsMember({"lowest-id", "random"});

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Biconnected overlay meshes: construction, tree augmentation, delivery paths, churn simulation"};
    app.require_subcommand(1);
    app.failure_message(CLI::FailureMessage::help);
    int exit_code = 0;

    // --- mesh ---------------------------------------------------------------
    auto* mesh = app.add_subcommand("mesh", "Build and maintain a least-degree mesh");
    mesh->require_subcommand(1);

    struct {
        std::uint64_t nodes = 0;
        std::string policy = "lowest-id";
        std::uint64_t seed = 0;
        std::string out = "-";
        std::string format = "json";
    } mesh_build;
    auto* mesh_build_cmd = mesh->add_subcommand("build", "Grow a mesh by successive joins");
    mesh_build_cmd->add_option("--nodes", mesh_build.nodes, "How many nodes join")->required();
    mesh_build_cmd->add_option("--policy", mesh_build.policy, "Tie-break policy")->check(policy_names);
    auto* mesh_build_seed =
        mesh_build_cmd->add_option("--seed", mesh_build.seed, "Seed for the random policy");
    mesh_build_cmd->add_option("--out", mesh_build.out, "Output path or -");
    mesh_build_cmd->add_option("--format", mesh_build.format, "Output format")
        ->check(CLI::IsMember({"json", "dot"}));
    mesh_build_cmd->callback([&] {
        auto policy = make_policy(mesh_build.policy, mesh_build_seed->count() > 0, mesh_build.seed);
        OverlayGraph g;
        for (NodeId id = 1; id <= mesh_build.nodes; ++id) join(g, id, policy);
        write_output(mesh_build.out,
                     mesh_build.format == "dot" ? graph_to_dot(g) : graph_to_json(g));
    });

    struct {
        std::string in;
        std::string out = "-";
        std::string format = "json";
    } mesh_prune;
    auto* mesh_prune_cmd = mesh->add_subcommand("prune", "Remove redundant traffic-free edges");
    mesh_prune_cmd->add_option("--in", mesh_prune.in, "Graph JSON path or -")->required();
    mesh_prune_cmd->add_option("--out", mesh_prune.out, "Output path or -");
    mesh_prune_cmd->add_option("--format", mesh_prune.format, "Output format")
        ->check(CLI::IsMember({"json", "dot"}));
    mesh_prune_cmd->callback([&] {
        OverlayGraph g = graph_from_json(read_input(mesh_prune.in));
        auto removed = prune_redundant(g);
        std::cerr << "removed " << removed.size() << " redundant edge(s)\n";
        write_output(mesh_prune.out,
                     mesh_prune.format == "dot" ? graph_to_dot(g) : graph_to_json(g));
    });

    struct {
        std::uint64_t node = 0;
        std::string in;
        std::string out = "-";
        std::string format = "json";
    } mesh_fail;
    auto* mesh_fail_cmd = mesh->add_subcommand("fail", "Fail a node and repair with a neighbor ring");
    mesh_fail_cmd->add_option("--node", mesh_fail.node, "Failing node id")->required();
    mesh_fail_cmd->add_option("--in", mesh_fail.in, "Graph JSON path or -")->required();
    mesh_fail_cmd->add_option("--out", mesh_fail.out, "Output path or -");
    mesh_fail_cmd->add_option("--format", mesh_fail.format, "Output format")
        ->check(CLI::IsMember({"json", "dot"}));
    mesh_fail_cmd->callback([&] {
        OverlayGraph g = graph_from_json(read_input(mesh_fail.in));
        auto added = repair_failure(g, mesh_fail.node);
        std::cerr << "added " << added.size() << " repair edge(s)\n";
        write_output(mesh_fail.out,
                     mesh_fail.format == "dot" ? graph_to_dot(g) : graph_to_json(g));
    });

    // --- tree ---------------------------------------------------------------
    auto* tree = app.add_subcommand("tree", "Full binary trees and biconnectivity augmentations");
    tree->require_subcommand(1);

    struct {
        std::size_t levels = 0;
        std::string out = "-";
    } tree_build;
    auto* tree_build_cmd = tree->add_subcommand("build", "Build a full binary tree");
    tree_build_cmd->add_option("--levels", tree_build.levels, "Tree depth (>= 1)")->required();
    tree_build_cmd->add_option("--out", tree_build.out, "Output path or -");
    tree_build_cmd->callback(
        [&] { write_output(tree_build.out, tree_to_json(build_full_binary_tree(tree_build.levels))); });

    struct {
        std::size_t levels = 0;
        std::string in;
        std::string approach;
        std::string out = "-";
    } tree_aug;
    auto* tree_aug_cmd = tree->add_subcommand("augment", "Compute augmentation links for a tree");
    auto* tree_aug_levels = tree_aug_cmd->add_option("--levels", tree_aug.levels,
                                                     "Depth of a full binary tree to augment");
    auto* tree_aug_in = tree_aug_cmd->add_option("--in", tree_aug.in, "Tree JSON path or -");
    tree_aug_cmd->add_option("--approach", tree_aug.approach, "leaf-chain or grandparent")
        ->required()
        ->check(CLI::IsMember({"leaf-chain", "grandparent"}));
    tree_aug_cmd->add_option("--out", tree_aug.out, "Output path or -");
    tree_aug_cmd->callback([&] {
        if ((tree_aug_levels->count() > 0) == (tree_aug_in->count() > 0))
            throw UsageError("tree augment needs exactly one of --levels and --in");
        RootedTree t = tree_aug_levels->count() > 0 ? build_full_binary_tree(tree_aug.levels)
                                                    : tree_from_json(read_input(tree_aug.in));
        Augmentation aug = augment_approach_from_string(tree_aug.approach) == AugmentApproach::LeafChain
                               ? leaf_chain_augment(t)
                               : grandparent_augment(t);
        write_output(tree_aug.out, augmentation_to_json(aug));
    });

    // --- delivery -----------------------------------------------------------
    auto* delivery = app.add_subcommand("delivery", "Delivery trees and double-feed backup paths");
    delivery->require_subcommand(1);

    struct {
        std::string in;
        std::uint64_t source = 0;
        std::string out = "-";
        std::string mesh_out;
    } del_tree;
    auto* del_tree_cmd = delivery->add_subcommand("tree", "Build the BFS delivery tree");
    del_tree_cmd->add_option("--in", del_tree.in, "Graph JSON path or -")->required();
    del_tree_cmd->add_option("--source", del_tree.source, "Source node id")->required();
    del_tree_cmd->add_option("--out", del_tree.out, "Output path or -");
    auto* del_tree_mesh_out = del_tree_cmd->add_option(
        "--mesh-out", del_tree.mesh_out, "Also write the mesh with traffic marks to this path");
    del_tree_cmd->callback([&] {
        OverlayGraph g = graph_from_json(read_input(del_tree.in));
        DeliveryTree t = build_delivery_tree(g, del_tree.source);
        write_output(del_tree.out, delivery_tree_to_json(t));
        if (del_tree_mesh_out->count() > 0) write_output(del_tree.mesh_out, graph_to_json(g));
    });

    struct {
        std::string in;
        std::uint64_t source = 0;
        std::string tree_path;
        std::string out = "-";
    } del_feeds;
    auto* del_feeds_cmd =
        delivery->add_subcommand("feeds", "Report primary and backup paths per destination");
    del_feeds_cmd->add_option("--in", del_feeds.in, "Graph JSON path or -")->required();
    auto* del_feeds_source =
        del_feeds_cmd->add_option("--source", del_feeds.source, "Build the BFS tree from this source");
    auto* del_feeds_tree =
        del_feeds_cmd->add_option("--tree", del_feeds.tree_path, "Use this delivery-tree JSON instead");
    del_feeds_cmd->add_option("--out", del_feeds.out, "Output path or -");
    del_feeds_cmd->callback([&] {
        if ((del_feeds_source->count() > 0) == (del_feeds_tree->count() > 0))
            throw UsageError("delivery feeds needs exactly one of --source and --tree");
        OverlayGraph g = graph_from_json(read_input(del_feeds.in));
        DeliveryTree t = del_feeds_source->count() > 0
                             ? build_delivery_tree(g, del_feeds.source)
                             : delivery_tree_from_json(read_input(del_feeds.tree_path), g);
        write_output(del_feeds.out, feeds_report(g, t));
    });

    // --- sim ----------------------------------------------------------------
    auto* sim = app.add_subcommand("sim", "Deterministic churn simulation");
    sim->require_subcommand(1);

    struct {
        std::string in;
        std::string check = "biconnectivity";
        std::string out = "-";
    } sim_run;
    auto* sim_run_cmd = sim->add_subcommand("run", "Replay a churn script and emit the trace");
    sim_run_cmd->add_option("--in", sim_run.in, "Script path or -")->required();
    sim_run_cmd->add_option("--check", sim_run.check, "Invariant check level")
        ->check(CLI::IsMember({"none", "biconnectivity", "full"}));
    sim_run_cmd->add_option("--out", sim_run.out, "Output path or -");
    sim_run_cmd->callback([&] {
        ChurnScript script = script_from_text(read_input(sim_run.in));
        RunResult result = run(script, check_level_from_string(sim_run.check));
        write_output(sim_run.out, trace_to_jsonl(result.entries));
        if (result.violation) {
            std::cerr << "invariant violation: " << result.violation->message << "\n"
                      << "reproduce with:\n"
                      << script_to_text(result.violation->repro);
            exit_code = 1;
        }
    });

    struct {
        std::uint64_t seed = 0;
        std::size_t joins = 0;
        std::size_t fails = 0;
        std::size_t prune_every = 0;
        std::string policy = "lowest-id";
        std::string out = "-";
    } sim_gen;
    auto* sim_gen_cmd = sim->add_subcommand("gen", "Generate a pseudo-random churn script");
    sim_gen_cmd->add_option("--seed", sim_gen.seed, "Generation seed")->required();
    sim_gen_cmd->add_option("--joins", sim_gen.joins, "Number of joins")->required();
    sim_gen_cmd->add_option("--fails", sim_gen.fails, "Number of fails");
    sim_gen_cmd->add_option("--prune-every", sim_gen.prune_every,
                            "Prune after every k-th join/fail (0 = never)");
    sim_gen_cmd->add_option("--policy", sim_gen.policy, "Tie-break policy")->check(policy_names);
    sim_gen_cmd->add_option("--out", sim_gen.out, "Output path or -");
    sim_gen_cmd->callback([&] {
        auto kind = sim_gen.policy == "random" ? TieBreakPolicy::Kind::SeededRandom
                                               : TieBreakPolicy::Kind::LowestId;
        write_output(sim_gen.out, script_to_text(generate_script(sim_gen.seed, sim_gen.joins,
                                                                 sim_gen.fails, sim_gen.prune_every,
                                                                 kind)));
    });

    // --- sweep --------------------------------------------------------------
    auto* sweep = app.add_subcommand("sweep", "Metric sweeps as CSV");
    sweep->require_subcommand(1);

    struct {
        std::size_t from = 0;
        std::size_t to = 0;
        std::size_t step = 10;
        std::string policy = "lowest-id";
        std::uint64_t seed = 0;
        std::string out = "-";
    } sweep_mesh_opts;
    auto* sweep_mesh_cmd = sweep->add_subcommand("mesh", "Mesh metrics over a range of sizes");
    sweep_mesh_cmd->add_option("--from", sweep_mesh_opts.from, "Smallest size (>= 2)")
        ->required()
        ->check(CLI::Range(std::size_t{2}, std::size_t{1} << 20));
    sweep_mesh_cmd->add_option("--to", sweep_mesh_opts.to, "Largest size")->required();
    sweep_mesh_cmd->add_option("--step", sweep_mesh_opts.step, "Size increment")
        ->check(CLI::Range(std::size_t{1}, std::size_t{1} << 20));
    sweep_mesh_cmd->add_option("--policy", sweep_mesh_opts.policy, "Tie-break policy")
        ->check(policy_names);
    auto* sweep_mesh_seed =
        sweep_mesh_cmd->add_option("--seed", sweep_mesh_opts.seed, "Seed for the random policy");
    sweep_mesh_cmd->add_option("--out", sweep_mesh_opts.out, "Output path or -");
    sweep_mesh_cmd->callback([&] {
        auto policy = make_policy(sweep_mesh_opts.policy, sweep_mesh_seed->count() > 0,
                                  sweep_mesh_opts.seed);
        auto records = sweep_mesh(
            inclusive_range(sweep_mesh_opts.from, sweep_mesh_opts.to, sweep_mesh_opts.step), policy);
        write_output(sweep_mesh_opts.out, mesh_sweep_csv(records));
    });

    struct {
        std::size_t from = 0;
        std::size_t to = 0;
        std::size_t step = 1;
        std::string out = "-";
    } sweep_trees_opts;
    auto* sweep_trees_cmd =
        sweep->add_subcommand("trees", "Augmentation link counts over a range of depths");
    sweep_trees_cmd->add_option("--from", sweep_trees_opts.from, "Smallest depth (>= 2)")
        ->required()
        ->check(CLI::Range(std::size_t{2}, std::size_t{25}));
    sweep_trees_cmd->add_option("--to", sweep_trees_opts.to, "Largest depth")
        ->required()
        ->check(CLI::Range(std::size_t{2}, std::size_t{25}));
    sweep_trees_cmd->add_option("--step", sweep_trees_opts.step, "Depth increment")
        ->check(CLI::Range(std::size_t{1}, std::size_t{25}));
    sweep_trees_cmd->add_option("--out", sweep_trees_opts.out, "Output path or -");
    sweep_trees_cmd->callback([&] {
        auto records = sweep_trees(
            inclusive_range(sweep_trees_opts.from, sweep_trees_opts.to, sweep_trees_opts.step));
        write_output(sweep_trees_opts.out, tree_sweep_csv(records));
    });

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : 2;
    } catch (const UsageError& e) {
        std::cerr << "usage error: " << e.what() << "\n";
        return 2;
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return exit_code;
}
