#include "doctest.h"

#include <sstream>

#include "test_helpers.hpp"

using namespace overlaysim;
using namespace overlaysim::testing;

TEST_SUITE_BEGIN("graph");

TEST_CASE("add_link is symmetric and idempotent") {
    OverlayGraph g(2);
    g.add_link(0, 1);
    CHECK(g.neighbors(0) == std::set<NodeId>{1});
    CHECK(g.neighbors(1) == std::set<NodeId>{0});
    CHECK(g.edge_count() == 1);
    g.add_link(0, 1);
    g.add_link(1, 0);
    CHECK(g.edge_count() == 1);
}

TEST_CASE("add_link rejects self-loops and inactive endpoints") {
    OverlayGraph g(3);
    CHECK_THROWS_AS(g.add_link(0, 0), SelfLoopError);
    g.fail_node(2);
    CHECK_THROWS_AS(g.add_link(0, 2), InactiveNodeError);
    CHECK_THROWS_AS(g.add_link(0, 99), NoSuchNodeError);
}

TEST_CASE("fail_node strips incident edges and reports them") {
    OverlayGraph g = complete_graph(3);
    const auto removed = g.fail_node(2);
    CHECK(removed == std::vector<Edge>{{2, 0}, {2, 1}});
    CHECK(g.has_edge(0, 1));
    CHECK(g.degree(2) == 0);
    CHECK(!g.is_active(2));
    CHECK(g.edge_count() == 1);
    CHECK_THROWS_AS(g.fail_node(2), InactiveNodeError);
}

TEST_CASE("fail_node on an isolated node removes nothing") {
    OverlayGraph g(2);
    CHECK(g.fail_node(0).empty());
}

TEST_CASE("failing a star center isolates the leaves") {
    OverlayGraph g(5);
    for (NodeId leaf = 1; leaf <= 4; ++leaf) g.add_link(0, leaf);
    const auto removed = g.fail_node(0);
    CHECK(removed.size() == 4);
    CHECK(g.edge_count() == 0);
    CHECK(g.isolated_count() == 4);
}

TEST_CASE("ecc on a triangle edge is 1") {
    OverlayGraph g = complete_graph(3);
    const auto rec = g.ecc(0, 1);
    CHECK(rec.triangles == 1);
    CHECK(rec.ecc == 1.0);
}

TEST_CASE("ecc is 0 when no triangle can exist") {
    OverlayGraph g(3);
    g.add_link(0, 1);
    g.add_link(1, 2);
    CHECK(g.ecc(0, 1).ecc == 0.0);
}

TEST_CASE("ecc on a shared-neighbor edge") {
    // Pi_0 = {1,2,3}, Pi_1 = {0,2,4}: one common neighbor, min degree-1 = 2.
    OverlayGraph g(5);
    g.add_link(0, 1);
    g.add_link(0, 2);
    g.add_link(0, 3);
    g.add_link(1, 2);
    g.add_link(1, 4);
    CHECK(brute_ecc(g, 0, 1) == 0.5);
    const auto rec = g.ecc(0, 1);
    CHECK(rec.triangles == 1);
    CHECK(rec.ecc == 0.5);
}

TEST_CASE("ecc requires an edge") {
    OverlayGraph g(3);
    g.add_link(0, 1);
    CHECK_THROWS_AS(g.ecc(0, 2), NotAdjacentError);
}

TEST_CASE("ecc matches brute force on random graphs") {
    Rng rng(71);
    for (int trial = 0; trial < 200; ++trial) {
        const std::size_t n = 4 + rng.below(22);
        OverlayGraph g = random_graph(n, 0.05 + 0.3 * rng.uniform01(), rng);
        for (NodeId a = 0; a < n; ++a) {
            for (NodeId b : g.neighbors(a)) {
                if (a >= b) continue;
                const auto rec = g.ecc(a, b);
                CHECK(rec.ecc == brute_ecc(g, a, b));
                CHECK(rec.triangles == brute_triangles(g, a, b));
                CHECK(g.ecc(b, a).ecc == rec.ecc);
                CHECK(rec.ecc >= 0.0);
                CHECK(rec.ecc <= 1.0);
            }
        }
    }
}

TEST_CASE("ecc is 0 throughout a triangle-free graph") {
    // Bipartite, hence no triangles.
    Rng rng(5);
    OverlayGraph g(12);
    for (NodeId i = 0; i < 6; ++i) {
        for (NodeId j = 6; j < 12; ++j) {
            if (rng.bernoulli(0.4)) g.add_link(i, j);
        }
    }
    for (NodeId a = 0; a < 12; ++a) {
        for (NodeId b : g.neighbors(a)) {
            CHECK(g.ecc(a, b).ecc == 0.0);
        }
    }
}

TEST_CASE("neighborhood link count") {
    CHECK(complete_graph(3).neighborhood_link_count(0) == 3);

    OverlayGraph star(5);
    for (NodeId leaf = 1; leaf <= 4; ++leaf) star.add_link(0, leaf);
    CHECK(star.neighborhood_link_count(0) == 4);

    OverlayGraph c5 = cycle_graph(5);
    CHECK(brute_neighborhood_links(c5, 0) == 4);
    CHECK(c5.neighborhood_link_count(0) == 4);

    OverlayGraph g(2);
    g.fail_node(1);
    CHECK_THROWS_AS(g.neighborhood_link_count(1), InactiveNodeError);
}

TEST_CASE("neighborhood link count vs oracle, and L_n >= degree") {
    Rng rng(12);
    for (int trial = 0; trial < 50; ++trial) {
        OverlayGraph g = random_graph(15, 0.2, rng);
        for (NodeId n = 0; n < 15; ++n) {
            const std::size_t l = g.neighborhood_link_count(n);
            CHECK(l == brute_neighborhood_links(g, n));
            CHECK(l >= g.degree(n));
        }
    }
}

TEST_CASE("component sizes") {
    CHECK(cycle_graph(10).component_sizes() == std::vector<std::size_t>{10});

    OverlayGraph two(6);
    for (NodeId base : {NodeId{0}, NodeId{3}}) {
        two.add_link(base, base + 1);
        two.add_link(base + 1, base + 2);
        two.add_link(base, base + 2);
    }
    CHECK(two.component_sizes() == std::vector<std::size_t>{3, 3});

    OverlayGraph k3_plus(4);
    k3_plus.add_link(0, 1);
    k3_plus.add_link(1, 2);
    k3_plus.add_link(0, 2);
    CHECK(k3_plus.component_sizes() == std::vector<std::size_t>{3, 1});
    CHECK(k3_plus.isolated_count() == 1);
}

TEST_CASE("component sizes sum to the active count") {
    Rng rng(9);
    for (int trial = 0; trial < 30; ++trial) {
        OverlayGraph g = random_graph(20, 0.1, rng);
        for (int kills = 0; kills < 5; ++kills) {
            const auto active = g.active_nodes();
            g.fail_node(active[rng.below(active.size())]);
        }
        std::size_t sum = 0;
        for (std::size_t s : g.component_sizes()) sum += s;
        CHECK(sum == g.active_count());
    }
}

TEST_CASE("neighborhood stats") {
    const auto [k3_n1, k3_n2] = complete_graph(3).neighborhood_stats();
    CHECK(k3_n1 == doctest::Approx(2.0));
    CHECK(k3_n2 == doctest::Approx(0.0));

    OverlayGraph path(3);
    path.add_link(0, 1);
    path.add_link(1, 2);
    const auto [p_n1, p_n2] = path.neighborhood_stats();
    CHECK(p_n1 == doctest::Approx(4.0 / 3.0));
    CHECK(p_n2 == doctest::Approx(2.0 / 3.0));

    const auto [e_n1, e_n2] = OverlayGraph(5).neighborhood_stats();
    CHECK(e_n1 == 0.0);
    CHECK(e_n2 == 0.0);
}

TEST_CASE("neighborhood stats match a per-node depth-2 scan") {
    Rng rng(31);
    for (int trial = 0; trial < 20; ++trial) {
        OverlayGraph g = random_graph(18, 0.15, rng);
        double sum_n1 = 0;
        double sum_n2 = 0;
        for (NodeId n = 0; n < 18; ++n) {
            sum_n1 += static_cast<double>(g.degree(n));
            sum_n2 += static_cast<double>(bfs_two(g, n).size());
            CHECK(g.second_neighborhood(n) == bfs_two(g, n));
        }
        const auto [n1, n2] = g.neighborhood_stats();
        CHECK(n1 == doctest::Approx(sum_n1 / 18.0));
        CHECK(n2 == doctest::Approx(sum_n2 / 18.0));
    }
}

TEST_CASE("degree distribution") {
    const auto k4 = complete_graph(4).degree_distribution();
    CHECK(k4.size() == 1);
    CHECK(k4.at(3) == doctest::Approx(1.0));

    OverlayGraph star(5);
    for (NodeId leaf = 1; leaf <= 4; ++leaf) star.add_link(0, leaf);
    const auto d = star.degree_distribution();
    CHECK(d.at(4) == doctest::Approx(0.2));
    CHECK(d.at(1) == doctest::Approx(0.8));

    Rng rng(44);
    OverlayGraph g = random_graph(30, 0.2, rng);
    double total = 0;
    for (const auto& [degree, p] : g.degree_distribution()) total += p;
    CHECK(total == doctest::Approx(1.0).epsilon(1e-9));

    OverlayGraph empty(3);
    empty.fail_node(0);
    empty.fail_node(1);
    empty.fail_node(2);
    CHECK(empty.degree_distribution().empty());
}

TEST_CASE("adjacency stays symmetric under random operations") {
    Rng rng(77);
    OverlayGraph g(25);
    for (int op = 0; op < 400; ++op) {
        const NodeId a = static_cast<NodeId>(rng.below(25));
        const NodeId b = static_cast<NodeId>(rng.below(25));
        switch (rng.below(4)) {
            case 0:
                if (a != b && g.is_active(a) && g.is_active(b)) g.add_link(a, b);
                break;
            case 1: g.remove_link(a, b); break;
            case 2:
                if (g.is_active(a)) g.fail_node(a);
                break;
            default:
                if (!g.is_active(a)) g.activate_node(a);
                break;
        }
    }
    for (NodeId u = 0; u < 25; ++u) {
        if (!g.is_active(u)) CHECK(g.degree(u) == 0);
        for (NodeId v : g.neighbors(u)) {
            CHECK(g.has_edge(v, u));
        }
    }
}

TEST_CASE("snapshot export format") {
    OverlayGraph g(3);
    g.add_link(0, 1);
    g.fail_node(2);
    std::ostringstream out;
    g.write_snapshot(out, 7);
    CHECK(out.str() == "# nodes=3 active=2 round=7\n0 1\n");
}

TEST_SUITE_END();
