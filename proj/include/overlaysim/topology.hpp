#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "overlaysim/graph.hpp"
#include "overlaysim/rng.hpp"

namespace overlaysim {

enum class TopologyKind { Uniform, Clustered, ScaleFree };

std::string to_string(TopologyKind kind);
std::optional<TopologyKind> topology_kind_from_string(const std::string& s);

struct TopologyConfig {
    TopologyKind kind = TopologyKind::Uniform;
    int n_nodes = 100;
    int uniform_degree = 4;  // uniform only
    int n_clusters = 4;      // clustered only
    double gamma = 0.1;      // intra-cluster link probability
    double omega = 0.02;     // per-external-cluster link probability
    double a = 6.0;          // scale-free: floor(e^a / d^b) nodes of degree d
    double b = 2.0;
    int sf_join_links = 0;   // 0 = auto: round(current mean degree)
};

// Throws std::invalid_argument naming the offending key.
void validate_topology_config(const TopologyConfig& cfg);

struct GeneratedTopology {
    OverlayGraph graph;
    std::vector<int> cluster_of; // empty unless clustered
};

// Planned degree per node for the power-law model: for d = 1..floor(e^{a/b}),
// floor(e^a / d^b) nodes of degree d.
std::vector<std::size_t> aiello_degree_plan(double a, double b);

// Every node gets exactly uniform_degree links (stub matching, restarts on
// dead ends). Requires an even stub total.
OverlayGraph generate_uniform(const TopologyConfig& cfg, Rng& rng);

// Equal-size clusters; intra-cluster pairs linked with probability gamma,
// and each node linked to one random member of each external cluster with
// probability omega.
GeneratedTopology generate_clustered(const TopologyConfig& cfg, Rng& rng);

// Power-law degree plan realized by random stub matching; self-loops and
// duplicate pairs are discarded (realized degrees may fall short).
OverlayGraph generate_scale_free(const TopologyConfig& cfg, Rng& rng);

GeneratedTopology generate_topology(const TopologyConfig& cfg, Rng& rng);
GeneratedTopology generate_topology(const TopologyConfig& cfg, std::uint64_t seed);

// Activates an inactive node and wires it by the topology's join rule:
// uniform -> fixed-size random neighbor set; clustered -> gamma/omega rule
// within its cluster; scale-free -> degree-proportional attachment.
void join_node(OverlayGraph& g, const TopologyConfig& cfg, const std::vector<int>& cluster_of,
               NodeId node, Rng& rng);

} // namespace overlaysim
