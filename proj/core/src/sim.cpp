#include "overmesh/sim.hpp"

#include <algorithm>
#include <random>

#include "overmesh/delivery.hpp"
#include "rng_util.hpp"

namespace overmesh {

std::string to_string(CheckLevel level) {
    switch (level) {
        case CheckLevel::None: return "none";
        case CheckLevel::Biconnectivity: return "biconnectivity";
        case CheckLevel::Full: return "full";
    }
    throw Error("unknown check level");
}

CheckLevel check_level_from_string(const std::string& s) {
    if (s == "none") return CheckLevel::None;
    if (s == "biconnectivity") return CheckLevel::Biconnectivity;
    if (s == "full") return CheckLevel::Full;
    throw Error("unknown check level '" + s + "' (expected none, biconnectivity, or full)");
}

namespace {

std::set<Edge> edge_set(const OverlayGraph& g) {
    auto list = g.edge_list();
    return {list.begin(), list.end()};
}

std::string step_prefix(std::size_t step) { return "step " + std::to_string(step) + ": "; }

void require_args(const ChurnEvent& ev, std::size_t count, std::size_t step, const char* what) {
    if (ev.args.size() != count)
        throw Error(step_prefix(step) + std::string(what) + " takes " + std::to_string(count) +
                    " argument(s), got " + std::to_string(ev.args.size()));
}

} // namespace

RunResult run(const ChurnScript& script, CheckLevel check_level) {
    const TieBreakPolicy policy = script.policy == TieBreakPolicy::Kind::SeededRandom
                                      ? TieBreakPolicy::seeded_random(script.seed)
                                      : TieBreakPolicy::lowest_id();
    RunResult result;
    OverlayGraph g;
    NodeId next_id = 1;
    bool joins_only = true;

    for (std::size_t i = 0; i < script.events.size(); ++i) {
        const ChurnEvent& ev = script.events[i];
        const std::size_t step = i + 1;
        const std::set<Edge> before = edge_set(g);
        std::string label;

        switch (ev.kind) {
            case ChurnEvent::Kind::Join: {
                require_args(ev, 0, step, "join");
                NodeId id = next_id++;
                join(g, id, policy);
                label = "join " + std::to_string(id);
                break;
            }
            case ChurnEvent::Kind::JoinExplicit: {
                // Still a join-only history: the 2N-3 edge count holds for any
                // two-target join, and a max-degree breach caused by adversarial
                // targets is exactly what Full level should surface.
                require_args(ev, 2, step, "join!");
                NodeId id = next_id++;
                join_explicit(g, id, {ev.args[0], ev.args[1]});
                label = "join! " + std::to_string(id) + " " + std::to_string(ev.args[0]) + " " +
                        std::to_string(ev.args[1]);
                break;
            }
            case ChurnEvent::Kind::Fail: {
                require_args(ev, 1, step, "fail");
                repair_failure(g, ev.args[0]);
                label = "fail " + std::to_string(ev.args[0]);
                joins_only = false;
                break;
            }
            case ChurnEvent::Kind::Prune: {
                require_args(ev, 0, step, "prune");
                prune_redundant(g);
                label = "prune";
                joins_only = false;
                break;
            }
            case ChurnEvent::Kind::BuildTree: {
                require_args(ev, 1, step, "tree");
                build_delivery_tree(g, ev.args[0]);
                label = "tree " + std::to_string(ev.args[0]);
                joins_only = false;
                break;
            }
        }

        const std::set<Edge> after = edge_set(g);
        TraceEntry entry;
        entry.step = step;
        entry.event = label;
        std::set_difference(after.begin(), after.end(), before.begin(), before.end(),
                            std::back_inserter(entry.edges_added));
        std::set_difference(before.begin(), before.end(), after.begin(), after.end(),
                            std::back_inserter(entry.edges_removed));
        entry.post_biconnected = is_biconnected(g);
        entry.post_metrics = metrics_for(g);
        result.entries.push_back(entry);

        std::optional<std::string> failure;
        if (check_level != CheckLevel::None && g.node_count() >= 3 && !entry.post_biconnected)
            failure = "mesh with " + std::to_string(g.node_count()) + " nodes is not biconnected";
        if (!failure && check_level == CheckLevel::Full && joins_only &&
            g.node_count() >= 2) {
            const std::size_t expected = 2 * g.node_count() - 3;
            if (g.edge_count() != expected)
                failure = "expected " + std::to_string(expected) + " edges, found " +
                          std::to_string(g.edge_count());
            else if (entry.post_metrics.max_degree > 4)
                failure = "max degree " + std::to_string(entry.post_metrics.max_degree) +
                          " exceeds 4";
        }
        if (failure) {
            ChurnScript repro;
            repro.seed = script.seed;
            repro.policy = script.policy;
            repro.events.assign(script.events.begin(),
                                script.events.begin() + static_cast<std::ptrdiff_t>(step));
            result.violation =
                ViolationReport{step, step_prefix(step) + "(" + label + ") " + *failure, repro};
            break;
        }
    }
    return result;
}

ChurnScript generate_script(std::uint64_t seed, std::size_t n_joins, std::size_t n_fails,
                            std::size_t prune_every, TieBreakPolicy::Kind policy) {
    if (n_joins < n_fails + 3)
        throw Error("need n_joins >= n_fails + 3 to keep 3 nodes live, got " +
                    std::to_string(n_joins) + " joins and " + std::to_string(n_fails) + " fails");

    ChurnScript script;
    script.seed = seed;
    script.policy = policy;
    std::mt19937_64 rng(detail::splitmix64(seed));

    std::set<NodeId> live;
    NodeId next_id = 1;
    std::size_t joins_left = n_joins;
    std::size_t fails_left = n_fails;
    std::size_t churn_count = 0;

    while (joins_left + fails_left > 0) {
        // A fail is eligible only while > 3 nodes would survive it. When only
        // fails remain, the n_joins >= n_fails + 3 precondition guarantees
        // eligibility.
        bool fail_now;
        if (joins_left == 0)
            fail_now = true;
        else if (fails_left == 0 || live.size() < 4)
            fail_now = false;
        else
            fail_now = detail::uniform_below(rng, joins_left + fails_left) < fails_left;

        if (fail_now) {
            std::vector<NodeId> pool(live.begin(), live.end());
            NodeId target = pool[detail::uniform_below(rng, pool.size())];
            live.erase(target);
            script.events.push_back({ChurnEvent::Kind::Fail, {target}});
            --fails_left;
        } else {
            live.insert(next_id++);
            script.events.push_back({ChurnEvent::Kind::Join, {}});
            --joins_left;
        }
        if (prune_every > 0 && ++churn_count % prune_every == 0)
            script.events.push_back({ChurnEvent::Kind::Prune, {}});
    }
    return script;
}

} // namespace overmesh
