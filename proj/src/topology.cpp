#include "overlaysim/topology.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace overlaysim {

std::string to_string(TopologyKind kind) {
    switch (kind) {
        case TopologyKind::Uniform: return "uniform";
        case TopologyKind::Clustered: return "clustered";
        case TopologyKind::ScaleFree: return "scale-free";
    }
    return "?";
}

std::optional<TopologyKind> topology_kind_from_string(const std::string& s) {
    if (s == "uniform") return TopologyKind::Uniform;
    if (s == "clustered") return TopologyKind::Clustered;
    if (s == "scale-free") return TopologyKind::ScaleFree;
    return std::nullopt;
}

void validate_topology_config(const TopologyConfig& cfg) {
    if (cfg.kind != TopologyKind::ScaleFree && cfg.n_nodes < 1) {
        throw std::invalid_argument("topology.nodes: must be >= 1");
    }
    switch (cfg.kind) {
        case TopologyKind::Uniform:
            if (cfg.uniform_degree < 1) {
                throw std::invalid_argument("topology.degree: must be >= 1");
            }
            if (cfg.uniform_degree >= cfg.n_nodes) {
                throw std::invalid_argument("topology.degree: must be < topology.nodes");
            }
            if ((static_cast<long long>(cfg.n_nodes) * cfg.uniform_degree) % 2 != 0) {
                throw std::invalid_argument(
                    "topology.degree: nodes * degree must be even (no valid degree sequence)");
            }
            break;
        case TopologyKind::Clustered:
            if (cfg.n_clusters < 1) {
                throw std::invalid_argument("topology.clusters: must be >= 1");
            }
            if (cfg.n_nodes % cfg.n_clusters != 0) {
                throw std::invalid_argument(
                    "topology.clusters: topology.nodes must be divisible by topology.clusters");
            }
            if (cfg.gamma < 0.0 || cfg.gamma > 1.0) {
                throw std::invalid_argument("topology.gamma: must be in [0, 1]");
            }
            if (cfg.omega < 0.0 || cfg.omega > 1.0) {
                throw std::invalid_argument("topology.omega: must be in [0, 1]");
            }
            break;
        case TopologyKind::ScaleFree:
            if (cfg.b <= 0.0) {
                throw std::invalid_argument("topology.b: must be > 0");
            }
            if (aiello_degree_plan(cfg.a, cfg.b).empty()) {
                throw std::invalid_argument("topology.a: degree plan has zero nodes");
            }
            if (cfg.sf_join_links < 0) {
                throw std::invalid_argument("topology.sf_join_links: must be >= 0");
            }
            break;
    }
}

std::vector<std::size_t> aiello_degree_plan(double a, double b) {
    std::vector<std::size_t> degrees;
    if (b <= 0.0) return degrees;
    const double max_d = std::floor(std::exp(a / b));
    if (max_d < 1.0) return degrees;
    for (std::size_t d = 1; d <= static_cast<std::size_t>(max_d); ++d) {
        const double count = std::floor(std::exp(a) / std::pow(static_cast<double>(d), b));
        for (std::size_t i = 0; i < static_cast<std::size_t>(count); ++i) {
            degrees.push_back(d);
        }
    }
    return degrees;
}

namespace {

// One matching attempt over the stub multiset. Random valid pairs first; when
// random probing stalls, falls back to an exhaustive scan of the remaining
// stubs and gives up only on a true dead end.
bool match_stubs_exact(OverlayGraph& g, std::vector<NodeId> stubs, Rng& rng) {
    auto remove_at = [&stubs](std::size_t i, std::size_t j) {
        if (i < j) std::swap(i, j);
        stubs[i] = stubs.back();
        stubs.pop_back();
        stubs[j] = stubs.back();
        stubs.pop_back();
    };
    while (stubs.size() >= 2) {
        bool paired = false;
        for (int probe = 0; probe < 50 && !paired; ++probe) {
            const std::size_t i = rng.below(stubs.size());
            std::size_t j = rng.below(stubs.size() - 1);
            if (j >= i) ++j;
            const NodeId u = stubs[i];
            const NodeId v = stubs[j];
            if (u != v && !g.has_edge(u, v)) {
                g.add_link(u, v);
                remove_at(i, j);
                paired = true;
            }
        }
        if (paired) continue;
        std::vector<std::pair<std::size_t, std::size_t>> valid;
        for (std::size_t i = 0; i < stubs.size(); ++i) {
            for (std::size_t j = i + 1; j < stubs.size(); ++j) {
                if (stubs[i] != stubs[j] && !g.has_edge(stubs[i], stubs[j])) {
                    valid.emplace_back(i, j);
                }
            }
        }
        if (valid.empty()) return false;
        const auto [i, j] = valid[rng.below(valid.size())];
        g.add_link(stubs[i], stubs[j]);
        remove_at(i, j);
    }
    return true;
}

std::vector<NodeId> active_in_cluster(const OverlayGraph& g, const std::vector<int>& cluster_of,
                                      int cluster, NodeId exclude) {
    std::vector<NodeId> out;
    for (NodeId n = 0; n < g.node_count(); ++n) {
        if (n != exclude && g.is_active(n) && cluster_of[n] == cluster) out.push_back(n);
    }
    return out;
}

} // namespace

OverlayGraph generate_uniform(const TopologyConfig& cfg, Rng& rng) {
    validate_topology_config(cfg);
    const std::size_t n = static_cast<std::size_t>(cfg.n_nodes);
    const std::size_t d = static_cast<std::size_t>(cfg.uniform_degree);
    for (int attempt = 0; attempt < 100; ++attempt) {
        OverlayGraph g(n);
        std::vector<NodeId> stubs;
        stubs.reserve(n * d);
        for (NodeId v = 0; v < n; ++v) {
            for (std::size_t k = 0; k < d; ++k) stubs.push_back(v);
        }
        if (match_stubs_exact(g, std::move(stubs), rng)) return g;
    }
    throw GraphError("uniform wiring failed after 100 attempts");
}

GeneratedTopology generate_clustered(const TopologyConfig& cfg, Rng& rng) {
    validate_topology_config(cfg);
    const NodeId n = static_cast<NodeId>(cfg.n_nodes);
    const int clusters = cfg.n_clusters;
    const NodeId size = n / static_cast<NodeId>(clusters);
    OverlayGraph g(n);
    std::vector<int> cluster_of(n);
    for (NodeId v = 0; v < n; ++v) cluster_of[v] = static_cast<int>(v / size);

    for (int c = 0; c < clusters; ++c) {
        const NodeId start = static_cast<NodeId>(c) * size;
        for (NodeId i = start; i < start + size; ++i) {
            for (NodeId j = i + 1; j < start + size; ++j) {
                if (rng.bernoulli(cfg.gamma)) g.add_link(i, j);
            }
        }
    }
    for (NodeId v = 0; v < n; ++v) {
        for (int c = 0; c < clusters; ++c) {
            if (c == cluster_of[v]) continue;
            if (rng.bernoulli(cfg.omega)) {
                const NodeId partner = static_cast<NodeId>(c) * size + static_cast<NodeId>(rng.below(size));
                g.add_link(v, partner);
            }
        }
    }
    return GeneratedTopology{std::move(g), std::move(cluster_of)};
}

OverlayGraph generate_scale_free(const TopologyConfig& cfg, Rng& rng) {
    validate_topology_config(cfg);
    const std::vector<std::size_t> plan = aiello_degree_plan(cfg.a, cfg.b);
    OverlayGraph g(plan.size());
    std::vector<NodeId> stubs;
    for (NodeId v = 0; v < plan.size(); ++v) {
        for (std::size_t k = 0; k < plan[v]; ++k) stubs.push_back(v);
    }
    rng.shuffle(stubs);
    for (std::size_t i = 0; i + 1 < stubs.size(); i += 2) {
        const NodeId u = stubs[i];
        const NodeId v = stubs[i + 1];
        if (u != v && !g.has_edge(u, v)) g.add_link(u, v);
    }
    return g;
}

GeneratedTopology generate_topology(const TopologyConfig& cfg, Rng& rng) {
    switch (cfg.kind) {
        case TopologyKind::Uniform: return GeneratedTopology{generate_uniform(cfg, rng), {}};
        case TopologyKind::Clustered: return generate_clustered(cfg, rng);
        case TopologyKind::ScaleFree: return GeneratedTopology{generate_scale_free(cfg, rng), {}};
    }
    throw std::logic_error("unreachable");
}

GeneratedTopology generate_topology(const TopologyConfig& cfg, std::uint64_t seed) {
    Rng rng(seed);
    return generate_topology(cfg, rng);
}

namespace {

void join_uniform(OverlayGraph& g, const TopologyConfig& cfg, NodeId node, Rng& rng) {
    std::vector<NodeId> candidates;
    for (NodeId v : g.active_nodes()) {
        if (v != node) candidates.push_back(v);
    }
    const std::size_t want = static_cast<std::size_t>(cfg.uniform_degree);
    if (candidates.size() <= want) {
        for (NodeId v : candidates) g.add_link(node, v);
        return;
    }
    for (std::size_t k = 0; k < want; ++k) {
        const std::size_t idx = k + rng.below(candidates.size() - k);
        std::swap(candidates[k], candidates[idx]);
        g.add_link(node, candidates[k]);
    }
}

void join_clustered(OverlayGraph& g, const TopologyConfig& cfg, const std::vector<int>& cluster_of,
                    NodeId node, Rng& rng) {
    const int own = cluster_of[node];
    for (NodeId m : active_in_cluster(g, cluster_of, own, node)) {
        if (rng.bernoulli(cfg.gamma)) g.add_link(node, m);
    }
    for (int c = 0; c < cfg.n_clusters; ++c) {
        if (c == own) continue;
        if (!rng.bernoulli(cfg.omega)) continue;
        const std::vector<NodeId> members = active_in_cluster(g, cluster_of, c, node);
        if (members.empty()) continue;
        g.add_link(node, members[rng.below(members.size())]);
    }
}

void join_scale_free(OverlayGraph& g, const TopologyConfig& cfg, NodeId node, Rng& rng) {
    std::vector<NodeId> candidates;
    std::size_t degree_sum = 0;
    for (NodeId v : g.active_nodes()) {
        if (v == node) continue;
        candidates.push_back(v);
        degree_sum += g.degree(v);
    }
    std::size_t want = static_cast<std::size_t>(cfg.sf_join_links);
    if (want == 0) {
        const double mean = candidates.empty()
                                ? 0.0
                                : static_cast<double>(degree_sum) / static_cast<double>(candidates.size());
        want = static_cast<std::size_t>(std::max(1L, std::lround(mean)));
    }
    want = std::min(want, candidates.size());
    for (std::size_t k = 0; k < want; ++k) {
        std::size_t total = 0;
        for (NodeId v : candidates) {
            if (!g.has_edge(node, v)) total += g.degree(v);
        }
        NodeId chosen = 0;
        bool found = false;
        if (total > 0) {
            std::size_t x = rng.below(total);
            for (NodeId v : candidates) {
                if (g.has_edge(node, v)) continue;
                const std::size_t w = g.degree(v);
                if (x < w) {
                    chosen = v;
                    found = true;
                    break;
                }
                x -= w;
            }
        } else {
            // All remaining candidates have degree 0: fall back to uniform.
            std::vector<NodeId> rest;
            for (NodeId v : candidates) {
                if (!g.has_edge(node, v)) rest.push_back(v);
            }
            if (!rest.empty()) {
                chosen = rest[rng.below(rest.size())];
                found = true;
            }
        }
        if (!found) break;
        g.add_link(node, chosen);
    }
}

} // namespace

void join_node(OverlayGraph& g, const TopologyConfig& cfg, const std::vector<int>& cluster_of,
               NodeId node, Rng& rng) {
    g.activate_node(node);
    if (g.active_count() == 1) return;
    switch (cfg.kind) {
        case TopologyKind::Uniform: join_uniform(g, cfg, node, rng); break;
        case TopologyKind::Clustered: join_clustered(g, cfg, cluster_of, node, rng); break;
        case TopologyKind::ScaleFree: join_scale_free(g, cfg, node, rng); break;
    }
}

} // namespace overlaysim
