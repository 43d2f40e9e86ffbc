#pragma once

#include <cstdint>
#include <iosfwd>
#include <map>
#include <set>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace overlaysim {

using NodeId = std::uint32_t;
using Edge = std::pair<NodeId, NodeId>;

struct GraphError : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct SelfLoopError : GraphError {
    using GraphError::GraphError;
};
struct InactiveNodeError : GraphError {
    using GraphError::GraphError;
};
struct NoSuchNodeError : GraphError {
    using GraphError::GraphError;
};
struct NotAdjacentError : GraphError {
    using GraphError::GraphError;
};

// Triangle count and edge clustering coefficient of one edge.
struct EdgeEccRecord {
    NodeId a = 0;
    NodeId b = 0;
    std::size_t triangles = 0;
    double ecc = 0.0;
};

// ECC = T / min(deg_a - 1, deg_b - 1), 0 when the denominator is 0.
double ecc_value(std::size_t triangles, std::size_t deg_a, std::size_t deg_b);

// Undirected overlay over a fixed pool of node ids. Nodes toggle between
// active and inactive; an inactive node holds no links. Ids are reused when
// an inactive node rejoins.
class OverlayGraph {
public:
    explicit OverlayGraph(std::size_t n_nodes);

    std::size_t node_count() const { return adj_.size(); }
    std::size_t active_count() const { return active_count_; }
    std::size_t edge_count() const { return edge_count_; }

    bool is_active(NodeId n) const;
    const std::set<NodeId>& neighbors(NodeId n) const;
    std::size_t degree(NodeId n) const;
    bool has_edge(NodeId a, NodeId b) const;

    // Adds the symmetric edge. Idempotent. Throws SelfLoopError on a == b and
    // InactiveNodeError when either endpoint is inactive.
    void add_link(NodeId a, NodeId b);

    // Removes the symmetric edge if present; returns whether it existed.
    bool remove_link(NodeId a, NodeId b);

    // Deactivates f and strips all incident edges. Returns the removed edges
    // as (f, neighbor) pairs, neighbor ids ascending.
    std::vector<Edge> fail_node(NodeId f);

    // Reactivates an inactive node (no links yet).
    void activate_node(NodeId n);

    // ECC of the existing edge (n, m). Throws NotAdjacentError otherwise.
    EdgeEccRecord ecc(NodeId n, NodeId m) const;

    // L_n: number of distinct edges with at least one endpoint in the closed
    // neighborhood of n.
    std::size_t neighborhood_link_count(NodeId n) const;

    // Nodes at distance exactly 2 from n, by a fresh depth-2 scan.
    std::set<NodeId> second_neighborhood(NodeId n) const;

    // Connected component sizes over active nodes, descending.
    std::vector<std::size_t> component_sizes() const;

    // (mean |Pi_n|, mean |Pi2_n|) over active nodes; (0, 0) when none.
    std::pair<double, double> neighborhood_stats() const;

    // degree -> probability over active nodes; empty when none.
    std::map<std::size_t, double> degree_distribution() const;

    std::size_t isolated_count() const;
    std::vector<NodeId> active_nodes() const;
    std::vector<NodeId> inactive_nodes() const;

    // Edge-list snapshot: "# nodes=<N> active=<A> round=<r>" then "u v" lines.
    void write_snapshot(std::ostream& out, int round) const;

private:
    void check_node(NodeId n) const;

    std::vector<std::set<NodeId>> adj_;
    std::vector<bool> active_;
    std::size_t active_count_ = 0;
    std::size_t edge_count_ = 0;
};

} // namespace overlaysim
