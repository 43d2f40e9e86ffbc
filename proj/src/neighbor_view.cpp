#include "overlaysim/neighbor_view.hpp"

namespace overlaysim {

std::set<NodeId> NeighborView::second_neighborhood() const {
    std::set<NodeId> out;
    for (const auto& [m, through_m] : pi2_by) {
        out.insert(through_m.begin(), through_m.end());
    }
    for (NodeId m : pi) out.erase(m);
    out.erase(owner);
    return out;
}

bool NeighborView::is_second_neighbor(NodeId p) const {
    if (p == owner || pi.count(p)) return false;
    for (const auto& [m, through_m] : pi2_by) {
        if (through_m.count(p)) return true;
    }
    return false;
}

void NeighborView::apply_neighbor_list(NodeId m, const std::set<NodeId>& list) {
    auto& entry = pi2_by[m];
    entry.clear();
    for (NodeId w : list) {
        if (w != owner && pi.count(w) == 0) entry.insert(w);
    }
}

void NeighborView::rebuild(const OverlayGraph& g) {
    pi = g.neighbors(owner);
    pi2_by.clear();
    for (NodeId m : pi) {
        apply_neighbor_list(m, g.neighbors(m));
    }
}

ViewTable::ViewTable(const OverlayGraph& g) : views_(g.node_count()) {
    for (NodeId n = 0; n < g.node_count(); ++n) {
        views_[n].owner = n;
        if (g.is_active(n)) views_[n].rebuild(g);
    }
}

void ViewTable::rebuild(const OverlayGraph& g, NodeId n) {
    views_[n].rebuild(g);
    ++refreshes_;
}

void ViewTable::on_edge_added(const OverlayGraph& g, NodeId u, NodeId v) {
    // pi changed at u and v; pi2_by[u] / pi2_by[v] changed at their neighbors.
    std::set<NodeId> affected{u, v};
    affected.insert(g.neighbors(u).begin(), g.neighbors(u).end());
    affected.insert(g.neighbors(v).begin(), g.neighbors(v).end());
    for (NodeId n : affected) rebuild(g, n);
}

void ViewTable::on_edge_removed(const OverlayGraph& g, NodeId u, NodeId v) {
    std::set<NodeId> affected{u, v};
    affected.insert(g.neighbors(u).begin(), g.neighbors(u).end());
    affected.insert(g.neighbors(v).begin(), g.neighbors(v).end());
    for (NodeId n : affected) rebuild(g, n);
}

void ViewTable::on_node_failed(const OverlayGraph& g, NodeId f, const std::vector<Edge>& removed) {
    std::set<NodeId> affected;
    for (const auto& [from, m] : removed) {
        affected.insert(m);
        affected.insert(g.neighbors(m).begin(), g.neighbors(m).end());
    }
    affected.erase(f);
    for (NodeId n : affected) rebuild(g, n);
    views_[f].pi.clear();
    views_[f].pi2_by.clear();
}

void ViewTable::on_node_joined(const OverlayGraph& g, NodeId n) {
    // Join wiring adds edges one by one through on_edge_added; this hook only
    // covers a join that created no links.
    rebuild(g, n);
}

} // namespace overlaysim
