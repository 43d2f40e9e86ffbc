#pragma once

#include <algorithm>
#include <set>
#include <vector>

#include "overlaysim/graph.hpp"
#include "overlaysim/rng.hpp"

namespace overlaysim::testing {

// Independent oracles: straight-line recomputation from the adjacency
// structure, no shared code with the library paths they check.

inline std::size_t brute_triangles(const OverlayGraph& g, NodeId a, NodeId b) {
    std::size_t count = 0;
    for (NodeId w = 0; w < g.node_count(); ++w) {
        if (w == a || w == b) continue;
        if (g.has_edge(a, w) && g.has_edge(b, w)) ++count;
    }
    return count;
}

inline double brute_ecc(const OverlayGraph& g, NodeId a, NodeId b) {
    const std::size_t da = g.degree(a);
    const std::size_t db = g.degree(b);
    const std::size_t m = std::min(da, db);
    if (m <= 1) return 0.0;
    return static_cast<double>(brute_triangles(g, a, b)) / static_cast<double>(m - 1);
}

inline std::set<NodeId> bfs_two(const OverlayGraph& g, NodeId n) {
    std::set<NodeId> first(g.neighbors(n).begin(), g.neighbors(n).end());
    std::set<NodeId> second;
    for (NodeId m : first) {
        for (NodeId w : g.neighbors(m)) {
            if (w != n && first.count(w) == 0) second.insert(w);
        }
    }
    return second;
}

inline std::size_t brute_neighborhood_links(const OverlayGraph& g, NodeId n) {
    std::set<NodeId> closed(g.neighbors(n).begin(), g.neighbors(n).end());
    closed.insert(n);
    std::size_t count = 0;
    for (NodeId u = 0; u < g.node_count(); ++u) {
        for (NodeId v : g.neighbors(u)) {
            if (u < v && (closed.count(u) || closed.count(v))) ++count;
        }
    }
    return count;
}

inline bool brute_connected_over_active(const OverlayGraph& g) {
    const std::vector<NodeId> active = g.active_nodes();
    if (active.size() <= 1) return true;
    std::set<NodeId> seen{active.front()};
    std::vector<NodeId> stack{active.front()};
    while (!stack.empty()) {
        const NodeId u = stack.back();
        stack.pop_back();
        for (NodeId v : g.neighbors(u)) {
            if (seen.insert(v).second) stack.push_back(v);
        }
    }
    return seen.size() == active.size();
}

inline OverlayGraph random_graph(std::size_t n, double p, Rng& rng) {
    OverlayGraph g(n);
    for (NodeId i = 0; i < n; ++i) {
        for (NodeId j = i + 1; j < n; ++j) {
            if (rng.bernoulli(p)) g.add_link(i, j);
        }
    }
    return g;
}

// Random spanning tree plus extra edges: connected by construction.
inline OverlayGraph random_connected_graph(std::size_t n, double extra_p, Rng& rng) {
    OverlayGraph g(n);
    for (NodeId v = 1; v < n; ++v) {
        g.add_link(v, static_cast<NodeId>(rng.below(v)));
    }
    for (NodeId i = 0; i < n; ++i) {
        for (NodeId j = i + 1; j < n; ++j) {
            if (rng.bernoulli(extra_p)) g.add_link(i, j);
        }
    }
    return g;
}

inline OverlayGraph cycle_graph(std::size_t n) {
    OverlayGraph g(n);
    for (NodeId v = 0; v < n; ++v) {
        g.add_link(v, static_cast<NodeId>((v + 1) % n));
    }
    return g;
}

inline OverlayGraph complete_graph(std::size_t n) {
    OverlayGraph g(n);
    for (NodeId i = 0; i < n; ++i) {
        for (NodeId j = i + 1; j < n; ++j) g.add_link(i, j);
    }
    return g;
}

} // namespace overlaysim::testing
