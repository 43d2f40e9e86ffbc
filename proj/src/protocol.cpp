#include "overlaysim/protocol.hpp"

#include <algorithm>
#include <cmath>

namespace overlaysim {

std::string to_string(ProtocolKind kind) {
    switch (kind) {
        case ProtocolKind::None: return "none";
        case ProtocolKind::P2n: return "p2n";
        case ProtocolKind::Pecc: return "pecc";
    }
    return "?";
}

std::optional<ProtocolKind> protocol_from_string(const std::string& s) {
    if (s == "none") return ProtocolKind::None;
    if (s == "p2n") return ProtocolKind::P2n;
    if (s == "pecc") return ProtocolKind::Pecc;
    return std::nullopt;
}

std::set<NodeId> recovery_candidates(const NeighborView& view, const OverlayGraph& g,
                                     const std::vector<NodeId>& failed_neighbors) {
    std::set<NodeId> out;
    for (NodeId p : failed_neighbors) {
        if (p == view.owner || !g.is_active(p)) continue;
        if (view.pi.count(p) || view.is_second_neighbor(p)) continue;
        out.insert(p);
    }
    return out;
}

bool ecc_gate_passes(double cached_ecc, Rng& rng) {
    if (cached_ecc <= 0.0) return true;
    if (cached_ecc >= 1.0) return false;
    return rng.uniform01() > cached_ecc;
}

StepResult step_recovery(RecoverySession& session, const OverlayGraph& g,
                         const ProtocolParams& params, int now, Rng& rng,
                         ProtocolMessage& out) {
    if (session.pending || now < session.backoff_until) return StepResult::Waiting;
    if (session.candidates.empty()) return StepResult::Terminated;
    if (static_cast<int>(g.degree(session.owner)) > params.threshold_degree) {
        return StepResult::TerminatedByGuard;
    }
    auto it = session.candidates.begin();
    std::advance(it, static_cast<long>(rng.below(session.candidates.size())));
    const NodeId p = *it;
    session.candidates.erase(it);
    session.pending = p;
    session.backoff_until = now + static_cast<int>(rng.uniform_int(1, params.backoff_max));
    ++session.requests_sent;
    out = ProtocolMessage{MessageKind::LinkCreationRequest, session.owner, p, 0, 0, {}};
    return StepResult::Sent;
}

bool should_accept_request(const NeighborView& view, NodeId requester) {
    return !view.knows(requester);
}

NodeTargets update_targets(const std::vector<std::pair<int, int>>& degree_link_history,
                           const ProtocolParams& params) {
    const std::size_t window = static_cast<std::size_t>(std::max(params.target_window, 1));
    const std::size_t n = std::min(window, degree_link_history.size());
    if (n == 0) return NodeTargets{};
    double deg_sum = 0.0;
    double link_sum = 0.0;
    for (std::size_t i = degree_link_history.size() - n; i < degree_link_history.size(); ++i) {
        deg_sum += degree_link_history[i].first;
        link_sum += degree_link_history[i].second;
    }
    const double dn = static_cast<double>(n);
    return NodeTargets{static_cast<int>(std::lround(deg_sum / dn)),
                       static_cast<int>(std::lround(link_sum / dn))};
}

std::vector<Edge> periodic_prune(const OverlayGraph& g, NodeId node,
                                 const ProtocolParams& params, const NodeTargets& targets) {
    std::vector<Edge> out;
    const double degree = static_cast<double>(g.degree(node));
    if (degree <= params.growth_factor * targets.degree) return out;
    const double links = static_cast<double>(g.neighborhood_link_count(node));
    if (links <= params.growth_factor * targets.links) return out;

    std::vector<std::pair<double, NodeId>> scored;
    for (NodeId m : g.neighbors(node)) {
        const double e = g.ecc(node, m).ecc;
        if (e > params.t_ecc) scored.emplace_back(e, m);
    }
    std::sort(scored.begin(), scored.end(), [](const auto& a, const auto& b) {
        if (a.first != b.first) return a.first > b.first;
        return a.second < b.second;
    });
    const std::size_t limit = std::min(scored.size(), static_cast<std::size_t>(params.max_prune_links));
    for (std::size_t i = 0; i < limit; ++i) {
        out.emplace_back(node, scored[i].second);
    }
    return out;
}

} // namespace overlaysim
