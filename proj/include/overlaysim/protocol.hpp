#pragma once

#include <optional>
#include <set>
#include <string>
#include <vector>

#include "overlaysim/graph.hpp"
#include "overlaysim/neighbor_view.hpp"
#include "overlaysim/rng.hpp"

namespace overlaysim {

enum class ProtocolKind { None, P2n, Pecc };

std::string to_string(ProtocolKind kind);
std::optional<ProtocolKind> protocol_from_string(const std::string& s);

struct ProtocolParams {
    // 0 means auto: 3x the initial mean degree, resolved at simulation start.
    int threshold_degree = 0;
    double t_ecc = 0.5;
    int max_prune_links = 1; // r
    int target_check_period = 5;
    int target_window = 10;
    double growth_factor = 1.5;
    int backoff_max = 3;
    bool prune_enabled = true;
    // Testing hook: treat every cached ECC as 0 (recovery gate always passes).
    bool force_zero_ecc = false;
};

enum class MessageKind {
    LinkCreationRequest,
    LinkAccept,
    LinkRefuse,
    NovelLinkNotify,
    NeighborListUpdate,
};

struct ProtocolMessage {
    MessageKind kind;
    NodeId from = 0;
    NodeId to = 0;
    // NovelLinkNotify: the edge (link_a, link_b) where link_a is the sender.
    NodeId link_a = 0;
    NodeId link_b = 0;
    std::vector<NodeId> neighbor_list; // NeighborListUpdate payload
};

// In-flight repair state at one node after a neighbor failure.
struct RecoverySession {
    NodeId owner = 0;
    NodeId failed = 0;
    std::set<NodeId> candidates; // the set P
    std::optional<NodeId> pending;
    int backoff_until = 0;
    int requests_sent = 0;
    std::size_t initial_candidates = 0;
};

struct NodeTargets {
    int degree = 0;
    int links = 0;
};

// P = { p in pre-failure Pi_f : p active, p != owner, p not a 1st or 2nd
// neighbor of owner }. The view must already reflect the failure.
std::set<NodeId> recovery_candidates(const NeighborView& view, const OverlayGraph& g,
                                     const std::vector<NodeId>& failed_neighbors);

// Recovery gate: run the repair procedure when a uniform draw exceeds the
// cached ECC of the lost link. The 0 and 1 endpoints short-circuit without
// consuming a draw, so a forced-zero run draws exactly like plain repair.
bool ecc_gate_passes(double cached_ecc, Rng& rng);

enum class StepResult { Waiting, Sent, Terminated, TerminatedByGuard };

// One active-behavior step: backoff / pending gate, then extract a random
// candidate and emit a link creation request, or terminate the session.
StepResult step_recovery(RecoverySession& session, const OverlayGraph& g,
                         const ProtocolParams& params, int now, Rng& rng,
                         ProtocolMessage& out);

// Passive-side rule: accept only when the requester is not already a 1st or
// 2nd neighbor.
bool should_accept_request(const NeighborView& view, NodeId requester);

// Mean of the last target_window samples, rounded to nearest integer.
NodeTargets update_targets(const std::vector<std::pair<int, int>>& degree_link_history,
                           const ProtocolParams& params);

// Periodic link removal: when both degree and neighborhood link count exceed
// their targets by growth_factor, pick up to max_prune_links incident edges
// with ECC above t_ecc, highest ECC first, ties toward the smaller neighbor.
std::vector<Edge> periodic_prune(const OverlayGraph& g, NodeId node,
                                 const ProtocolParams& params, const NodeTargets& targets);

} // namespace overlaysim
