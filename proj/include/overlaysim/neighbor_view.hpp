#pragma once

#include <map>
#include <set>
#include <vector>

#include "overlaysim/graph.hpp"

namespace overlaysim {

// A node's local knowledge: its 1st neighbors and, per neighbor m, the 2nd
// neighbors reachable through m (Pi_m minus Pi_owner, owner excluded).
struct NeighborView {
    NodeId owner = 0;
    std::set<NodeId> pi;
    std::map<NodeId, std::set<NodeId>> pi2_by;

    // Union of pi2_by minus pi minus owner: nodes at distance exactly 2.
    std::set<NodeId> second_neighborhood() const;
    bool is_second_neighbor(NodeId p) const;
    bool knows(NodeId p) const { return pi.count(p) > 0 || is_second_neighbor(p); }

    // Replaces the entry for neighbor m with its current list, re-filtered
    // against pi and owner. This is what a neighbor-list update carries.
    void apply_neighbor_list(NodeId m, const std::set<NodeId>& list);

    void rebuild(const OverlayGraph& g);
};

// One view per node, kept consistent with the graph. Edge and failure hooks
// refresh every view whose pi or pi2_by entries the change touches; each
// refreshed view stands for one delivered neighbor-list update.
class ViewTable {
public:
    ViewTable() = default;
    explicit ViewTable(const OverlayGraph& g);

    const NeighborView& view(NodeId n) const { return views_[n]; }
    NeighborView& view_mut(NodeId n) { return views_[n]; }
    void rebuild(const OverlayGraph& g, NodeId n);

    void on_edge_added(const OverlayGraph& g, NodeId u, NodeId v);
    void on_edge_removed(const OverlayGraph& g, NodeId u, NodeId v);
    void on_node_failed(const OverlayGraph& g, NodeId f, const std::vector<Edge>& removed);
    void on_node_joined(const OverlayGraph& g, NodeId n);

    std::size_t refresh_count() const { return refreshes_; }
    std::size_t size() const { return views_.size(); }

private:
    std::vector<NeighborView> views_;
    std::size_t refreshes_ = 0;
};

} // namespace overlaysim
