#include "overlaysim/graph.hpp"

#include <algorithm>
#include <ostream>

namespace overlaysim {

double ecc_value(std::size_t triangles, std::size_t deg_a, std::size_t deg_b) {
    const std::size_t min_deg = std::min(deg_a, deg_b);
    if (min_deg <= 1) return 0.0;
    return static_cast<double>(triangles) / static_cast<double>(min_deg - 1);
}

OverlayGraph::OverlayGraph(std::size_t n_nodes)
    : adj_(n_nodes), active_(n_nodes, true), active_count_(n_nodes) {}

void OverlayGraph::check_node(NodeId n) const {
    if (n >= adj_.size()) {
        throw NoSuchNodeError("node " + std::to_string(n) + " out of range");
    }
}

bool OverlayGraph::is_active(NodeId n) const {
    check_node(n);
    return active_[n];
}

const std::set<NodeId>& OverlayGraph::neighbors(NodeId n) const {
    check_node(n);
    return adj_[n];
}

std::size_t OverlayGraph::degree(NodeId n) const {
    check_node(n);
    return adj_[n].size();
}

bool OverlayGraph::has_edge(NodeId a, NodeId b) const {
    check_node(a);
    check_node(b);
    return adj_[a].count(b) > 0;
}

void OverlayGraph::add_link(NodeId a, NodeId b) {
    check_node(a);
    check_node(b);
    if (a == b) {
        throw SelfLoopError("self-loop on node " + std::to_string(a));
    }
    if (!active_[a] || !active_[b]) {
        throw InactiveNodeError("link (" + std::to_string(a) + "," + std::to_string(b) +
                                ") touches an inactive node");
    }
    if (adj_[a].insert(b).second) {
        adj_[b].insert(a);
        ++edge_count_;
    }
}

bool OverlayGraph::remove_link(NodeId a, NodeId b) {
    check_node(a);
    check_node(b);
    if (adj_[a].erase(b) == 0) return false;
    adj_[b].erase(a);
    --edge_count_;
    return true;
}

std::vector<Edge> OverlayGraph::fail_node(NodeId f) {
    check_node(f);
    if (!active_[f]) {
        throw InactiveNodeError("node " + std::to_string(f) + " already inactive");
    }
    std::vector<Edge> removed;
    removed.reserve(adj_[f].size());
    for (NodeId m : adj_[f]) {
        adj_[m].erase(f);
        removed.emplace_back(f, m);
    }
    edge_count_ -= adj_[f].size();
    adj_[f].clear();
    active_[f] = false;
    --active_count_;
    return removed;
}

void OverlayGraph::activate_node(NodeId n) {
    check_node(n);
    if (active_[n]) {
        throw GraphError("node " + std::to_string(n) + " already active");
    }
    active_[n] = true;
    ++active_count_;
}

EdgeEccRecord OverlayGraph::ecc(NodeId n, NodeId m) const {
    if (!has_edge(n, m)) {
        throw NotAdjacentError("no edge (" + std::to_string(n) + "," + std::to_string(m) + ")");
    }
    const auto& smaller = adj_[n].size() <= adj_[m].size() ? adj_[n] : adj_[m];
    const auto& larger = adj_[n].size() <= adj_[m].size() ? adj_[m] : adj_[n];
    std::size_t tri = 0;
    for (NodeId w : smaller) {
        if (larger.count(w)) ++tri;
    }
    return EdgeEccRecord{n, m, tri, ecc_value(tri, adj_[n].size(), adj_[m].size())};
}

std::size_t OverlayGraph::neighborhood_link_count(NodeId n) const {
    check_node(n);
    if (!active_[n]) {
        throw InactiveNodeError("node " + std::to_string(n) + " inactive");
    }
    std::set<Edge> seen;
    auto visit = [&](NodeId u) {
        for (NodeId v : adj_[u]) {
            seen.insert({std::min(u, v), std::max(u, v)});
        }
    };
    visit(n);
    for (NodeId m : adj_[n]) visit(m);
    return seen.size();
}

std::set<NodeId> OverlayGraph::second_neighborhood(NodeId n) const {
    check_node(n);
    std::set<NodeId> second;
    for (NodeId m : adj_[n]) {
        for (NodeId w : adj_[m]) {
            if (w != n && adj_[n].count(w) == 0) second.insert(w);
        }
    }
    return second;
}

std::vector<std::size_t> OverlayGraph::component_sizes() const {
    std::vector<std::size_t> sizes;
    std::vector<bool> visited(adj_.size(), false);
    std::vector<NodeId> stack;
    for (NodeId start = 0; start < adj_.size(); ++start) {
        if (!active_[start] || visited[start]) continue;
        std::size_t size = 0;
        stack.push_back(start);
        visited[start] = true;
        while (!stack.empty()) {
            const NodeId u = stack.back();
            stack.pop_back();
            ++size;
            for (NodeId v : adj_[u]) {
                if (!visited[v]) {
                    visited[v] = true;
                    stack.push_back(v);
                }
            }
        }
        sizes.push_back(size);
    }
    std::sort(sizes.rbegin(), sizes.rend());
    return sizes;
}

std::pair<double, double> OverlayGraph::neighborhood_stats() const {
    if (active_count_ == 0) return {0.0, 0.0};
    std::size_t sum_n1 = 0;
    std::size_t sum_n2 = 0;
    // Timestamped marks avoid reallocating a set per node.
    std::vector<std::uint32_t> mark(adj_.size(), 0);
    std::uint32_t stamp = 0;
    for (NodeId n = 0; n < adj_.size(); ++n) {
        if (!active_[n]) continue;
        sum_n1 += adj_[n].size();
        ++stamp;
        mark[n] = stamp;
        for (NodeId m : adj_[n]) mark[m] = stamp;
        for (NodeId m : adj_[n]) {
            for (NodeId w : adj_[m]) {
                if (mark[w] != stamp) {
                    mark[w] = stamp;
                    ++sum_n2;
                }
            }
        }
    }
    const double denom = static_cast<double>(active_count_);
    return {static_cast<double>(sum_n1) / denom, static_cast<double>(sum_n2) / denom};
}

std::map<std::size_t, double> OverlayGraph::degree_distribution() const {
    std::map<std::size_t, double> dist;
    if (active_count_ == 0) return dist;
    for (NodeId n = 0; n < adj_.size(); ++n) {
        if (active_[n]) dist[adj_[n].size()] += 1.0;
    }
    for (auto& [deg, p] : dist) p /= static_cast<double>(active_count_);
    return dist;
}

std::size_t OverlayGraph::isolated_count() const {
    std::size_t count = 0;
    for (NodeId n = 0; n < adj_.size(); ++n) {
        if (active_[n] && adj_[n].empty()) ++count;
    }
    return count;
}

std::vector<NodeId> OverlayGraph::active_nodes() const {
    std::vector<NodeId> out;
    out.reserve(active_count_);
    for (NodeId n = 0; n < adj_.size(); ++n) {
        if (active_[n]) out.push_back(n);
    }
    return out;
}

std::vector<NodeId> OverlayGraph::inactive_nodes() const {
    std::vector<NodeId> out;
    out.reserve(adj_.size() - active_count_);
    for (NodeId n = 0; n < adj_.size(); ++n) {
        if (!active_[n]) out.push_back(n);
    }
    return out;
}

void OverlayGraph::write_snapshot(std::ostream& out, int round) const {
    out << "# nodes=" << adj_.size() << " active=" << active_count_ << " round=" << round << "\n";
    for (NodeId u = 0; u < adj_.size(); ++u) {
        for (NodeId v : adj_[u]) {
            if (u < v) out << u << " " << v << "\n";
        }
    }
}

} // namespace overlaysim
