#include "doctest.h"

#include "overlaysim/simulation.hpp"
#include "test_helpers.hpp"

using namespace overlaysim;
using namespace overlaysim::testing;

namespace {

SimConfig injected_config(ProtocolKind protocol, FailureMode mode, std::uint64_t seed = 1) {
    SimConfig cfg;
    cfg.topology.kind = TopologyKind::Uniform;
    cfg.topology.uniform_degree = 4;
    cfg.mode = mode;
    cfg.protocol = protocol;
    cfg.params.threshold_degree = 1000;
    cfg.seed = seed;
    return cfg;
}

SimConfig uniform_config(ProtocolKind protocol, FailureMode mode, int nodes, int degree,
                         std::uint64_t seed) {
    SimConfig cfg;
    cfg.topology.kind = TopologyKind::Uniform;
    cfg.topology.n_nodes = nodes;
    cfg.topology.uniform_degree = degree;
    cfg.mode = mode;
    cfg.protocol = protocol;
    cfg.seed = seed;
    return cfg;
}

} // namespace

TEST_SUITE_BEGIN("simulation");

TEST_CASE("targeted attack picks the highest-degree node") {
    OverlayGraph star(10);
    for (NodeId leaf = 1; leaf <= 9; ++leaf) star.add_link(0, leaf);
    Rng rng(1);
    const auto targets =
        select_failure_targets(star, FailureMode::TargetedAttack, TopologyKind::Uniform, {}, 1, rng);
    CHECK(targets == std::vector<NodeId>{0});
}

TEST_CASE("targeted attack on clustered nets ranks by inter-cluster links") {
    // Node 0: degree 9, all intra. Node 10: degree 3, all inter.
    OverlayGraph g(20);
    std::vector<int> cluster_of(20, 0);
    for (NodeId n = 10; n < 20; ++n) cluster_of[n] = 1;
    for (NodeId m = 1; m <= 9; ++m) g.add_link(0, m);
    g.add_link(10, 1);
    g.add_link(10, 2);
    g.add_link(10, 3);
    Rng rng(1);
    const auto targets = select_failure_targets(g, FailureMode::TargetedAttack,
                                                TopologyKind::Clustered, cluster_of, 1, rng);
    CHECK(targets == std::vector<NodeId>{10});
}

TEST_CASE("failures-only drains every node exactly once") {
    SimEngine engine(uniform_config(ProtocolKind::None, FailureMode::FailuresOnly, 30, 4, 7));
    const auto rows = engine.run_to_completion(0);
    CHECK(rows.size() == 30);
    CHECK(rows.back().active_count == 0);
    std::set<NodeId> failed;
    std::size_t total = 0;
    for (const auto& round_targets : engine.failure_log()) {
        for (NodeId f : round_targets) {
            failed.insert(f);
            ++total;
        }
    }
    CHECK(total == 30);
    CHECK(failed.size() == 30);
}

TEST_CASE("a five-cycle heals into one component after a repaired failure") {
    for (std::uint64_t seed = 1; seed <= 10; ++seed) {
        SimConfig cfg = injected_config(ProtocolKind::P2n, FailureMode::FailuresOnly, seed);
        SimEngine engine(cfg, cycle_graph(5), {});
        engine.run_round_with_failures({1});
        CHECK(engine.graph().component_sizes() == std::vector<std::size_t>{4});
        CHECK(engine.counters().accepts >= 1);
    }
}

TEST_CASE("cooperating neighbors create exactly one link to a lost node") {
    // Triangle 0-1-2, hub 3 linked to 0,1,2 and to 4; node 4 carries enough
    // pendant links that its own repair session dies on the degree cap, so
    // any link to 4 comes from the triangle side.
    for (std::uint64_t seed = 1; seed <= 20; ++seed) {
        OverlayGraph g(15);
        g.add_link(0, 1);
        g.add_link(0, 2);
        g.add_link(1, 2);
        for (NodeId n : {NodeId{0}, NodeId{1}, NodeId{2}, NodeId{4}}) g.add_link(3, n);
        for (NodeId pendant = 10; pendant < 15; ++pendant) g.add_link(4, pendant);

        SimConfig cfg = injected_config(ProtocolKind::P2n, FailureMode::FailuresOnly, seed);
        cfg.params.threshold_degree = 4; // binds for node 4 (degree 5), not the triangle
        SimEngine engine(cfg, std::move(g), {});
        engine.run_round_with_failures({3});

        int links_to_4 = 0;
        for (NodeId n : {NodeId{0}, NodeId{1}, NodeId{2}}) {
            if (engine.graph().has_edge(n, 4)) ++links_to_4;
        }
        CHECK(links_to_4 == 1);
        CHECK(engine.counters().guard_terminations == 1);
    }
}

TEST_CASE("requests from 1st or 2nd neighbors are refused, strangers accepted") {
    OverlayGraph g(4);
    g.add_link(0, 1);
    g.add_link(1, 2);
    SimConfig cfg = injected_config(ProtocolKind::P2n, FailureMode::FailuresOnly);
    SimEngine engine(cfg, std::move(g), {});

    std::vector<ProtocolMessage> outbox;
    engine.deliver_message({MessageKind::LinkCreationRequest, 2, 0, 0, 0, {}}, outbox);
    REQUIRE(outbox.size() == 1);
    CHECK(outbox[0].kind == MessageKind::LinkRefuse);
    CHECK(outbox[0].to == 2);
    CHECK(!engine.graph().has_edge(0, 2));

    outbox.clear();
    engine.deliver_message({MessageKind::LinkCreationRequest, 3, 0, 0, 0, {}}, outbox);
    CHECK(engine.graph().has_edge(0, 3));
    REQUIRE(outbox.size() == 2);
    CHECK(outbox[0].kind == MessageKind::NovelLinkNotify);
    CHECK(outbox[0].to == 1);
    CHECK(outbox[0].link_a == 0);
    CHECK(outbox[0].link_b == 3);
    CHECK(outbox[1].kind == MessageKind::LinkAccept);
    CHECK(outbox[1].to == 3);
}

TEST_CASE("messages touching inactive nodes are dropped and counted") {
    OverlayGraph g(3);
    g.add_link(0, 1);
    g.fail_node(2);
    SimConfig cfg = injected_config(ProtocolKind::P2n, FailureMode::FailuresOnly);
    SimEngine engine(cfg, std::move(g), {});
    std::vector<ProtocolMessage> outbox;
    engine.deliver_message({MessageKind::LinkCreationRequest, 0, 2, 0, 0, {}}, outbox);
    engine.deliver_message({MessageKind::LinkCreationRequest, 2, 0, 0, 0, {}}, outbox);
    CHECK(outbox.empty());
    CHECK(engine.counters().dropped_messages == 2);
}

TEST_CASE("neighbor list updates refresh the stored second-hop entries") {
    OverlayGraph g(5);
    g.add_link(0, 1);
    SimConfig cfg = injected_config(ProtocolKind::P2n, FailureMode::FailuresOnly);
    SimEngine engine(cfg, std::move(g), {});
    std::vector<ProtocolMessage> outbox;
    engine.deliver_message({MessageKind::NeighborListUpdate, 1, 0, 0, 0, {0, 3, 4}}, outbox);
    CHECK(engine.views().view(0).second_neighborhood() == std::set<NodeId>{3, 4});
}

TEST_CASE("evolution keeps the active count constant") {
    for (ProtocolKind protocol : {ProtocolKind::None, ProtocolKind::P2n, ProtocolKind::Pecc}) {
        SimConfig cfg = uniform_config(protocol, FailureMode::Evolution, 60, 4, 11);
        cfg.events_per_round = 3;
        SimEngine engine(cfg);
        for (int r = 0; r < 50; ++r) {
            CHECK(engine.run_round().active_count == 60);
        }
    }
}

TEST_CASE("with no protocol, isolation only ends by failure") {
    SimConfig cfg = uniform_config(ProtocolKind::None, FailureMode::FailuresOnly, 40, 4, 5);
    SimEngine engine(cfg);
    auto isolated_set = [&]() {
        std::set<NodeId> out;
        for (NodeId n : engine.graph().active_nodes()) {
            if (engine.graph().degree(n) == 0) out.insert(n);
        }
        return out;
    };
    std::set<NodeId> prev = isolated_set();
    std::size_t prev_links = engine.graph().edge_count();
    while (engine.graph().active_count() > 0) {
        engine.run_round();
        const auto current = isolated_set();
        for (NodeId n : prev) {
            const auto& failed = engine.failure_log().back();
            const bool failed_now = std::find(failed.begin(), failed.end(), n) != failed.end();
            if (!failed_now) CHECK(current.count(n) == 1);
        }
        CHECK(engine.graph().edge_count() <= prev_links);
        prev_links = engine.graph().edge_count();
        prev = current;
        CHECK(engine.counters().messages_sent == 0);
    }
}

TEST_CASE("run_to_completion row counts and determinism") {
    SimConfig failures = uniform_config(ProtocolKind::P2n, FailureMode::FailuresOnly, 30, 4, 21);
    CHECK(SimEngine(failures).run_to_completion(0).size() == 30);

    SimConfig evolution = uniform_config(ProtocolKind::P2n, FailureMode::Evolution, 40, 4, 21);
    CHECK(SimEngine(evolution).run_to_completion(200).size() == 200);

    const auto rows_a = SimEngine(failures).run_to_completion(0);
    const auto rows_b = SimEngine(failures).run_to_completion(0);
    CHECK(rows_a == rows_b);
}

TEST_CASE("active counts follow failures and arrivals") {
    SimConfig cfg = uniform_config(ProtocolKind::P2n, FailureMode::FailuresOnly, 36, 4, 3);
    cfg.events_per_round = 2;
    SimEngine engine(cfg);
    std::size_t prev = engine.graph().active_count();
    const auto rows = engine.run_to_completion(0);
    for (std::size_t r = 0; r < rows.size(); ++r) {
        CHECK(rows[r].active_count == prev - engine.failure_log()[r].size());
        prev = rows[r].active_count;
    }
}

TEST_CASE("link counters reconcile with the final edge count") {
    for (ProtocolKind protocol : {ProtocolKind::None, ProtocolKind::P2n, ProtocolKind::Pecc}) {
        SimConfig cfg = uniform_config(protocol, FailureMode::Evolution, 50, 4, 13);
        SimEngine engine(cfg);
        const std::size_t initial = engine.graph().edge_count();
        for (int r = 0; r < 40; ++r) engine.run_round();
        const SimCounters& c = engine.counters();
        CHECK(c.links_created == c.accepts);
        CHECK(engine.graph().edge_count() ==
              initial + c.join_links + c.links_created - c.links_removed);
        if (protocol == ProtocolKind::None) {
            CHECK(c.messages_sent == 0);
            CHECK(c.sessions_created == 0);
        }
    }
}

TEST_CASE("per-session requests never exceed the initial candidate set") {
    // requests <= sessions' initial candidates in aggregate.
    SimConfig cfg = uniform_config(ProtocolKind::P2n, FailureMode::FailuresOnly, 60, 4, 17);
    SimEngine engine(cfg);
    engine.run_to_completion(0);
    CHECK(engine.counters().requests <= engine.counters().sessions_created * 60);
}

TEST_CASE("repair restores lost second-neighbor relations") {
    Rng rng(404);
    int checked = 0;
    for (int trial = 0; trial < 100; ++trial) {
        OverlayGraph g = random_connected_graph(8 + rng.below(7), 0.15, rng);
        const std::size_t n_nodes = g.node_count();
        const NodeId f = static_cast<NodeId>(rng.below(n_nodes));
        const std::set<NodeId> pre_neighbors = g.neighbors(f);
        if (pre_neighbors.empty()) continue;

        std::map<NodeId, std::set<NodeId>> lost; // n -> Pi2_{n|f}
        for (NodeId n : pre_neighbors) {
            for (NodeId p : pre_neighbors) {
                if (p != n && !g.has_edge(n, p)) lost[n].insert(p);
            }
        }
        SimConfig cfg = injected_config(ProtocolKind::P2n, FailureMode::FailuresOnly, 1000 + trial);
        SimEngine engine(cfg, std::move(g), {});
        engine.run_round_with_failures({f});
        REQUIRE(engine.counters().guard_terminations == 0);
        for (const auto& [n, ps] : lost) {
            for (NodeId p : ps) {
                const bool near = engine.graph().has_edge(n, p) ||
                                  engine.graph().second_neighborhood(n).count(p) > 0;
                CHECK(near);
                ++checked;
            }
        }
    }
    CHECK(checked > 100);
}

TEST_CASE("a tripped message budget flags the run as divergent") {
    SimConfig cfg = injected_config(ProtocolKind::P2n, FailureMode::FailuresOnly, 3);
    cfg.message_budget_factor = 0;
    SimEngine engine(cfg, cycle_graph(5), {});
    engine.run_round_with_failures({1});
    CHECK(engine.divergent());
}

TEST_CASE("forced-zero ECC with pruning off replays the plain repair run") {
    SimConfig p2n = uniform_config(ProtocolKind::P2n, FailureMode::Evolution, 50, 4, 31);
    SimConfig pecc = p2n;
    pecc.protocol = ProtocolKind::Pecc;
    pecc.params.prune_enabled = false;
    pecc.params.force_zero_ecc = true;
    SimEngine a(p2n);
    SimEngine b(pecc);
    for (int r = 0; r < 30; ++r) {
        CHECK(a.run_round() == b.run_round());
    }
}

TEST_SUITE_END();
