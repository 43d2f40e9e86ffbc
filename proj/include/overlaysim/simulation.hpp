#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "overlaysim/graph.hpp"
#include "overlaysim/neighbor_view.hpp"
#include "overlaysim/protocol.hpp"
#include "overlaysim/rng.hpp"
#include "overlaysim/topology.hpp"

namespace overlaysim {

enum class FailureMode { Evolution, TargetedAttack, FailuresOnly };

std::string to_string(FailureMode mode);
std::optional<FailureMode> failure_mode_from_string(const std::string& s);

struct MetricsRow {
    int round = 0;
    std::size_t main_component_size = 0;
    double main_component_fraction = 0.0;
    std::size_t isolated_count = 0;
    double avg_n1 = 0.0;
    double avg_n2 = 0.0;
    std::size_t active_count = 0;
    std::size_t links_total = 0;
    std::size_t messages_sent = 0;

    bool operator==(const MetricsRow&) const = default;
};

struct SimCounters {
    std::size_t messages_sent = 0;
    std::size_t dropped_messages = 0;
    std::size_t requests = 0;
    std::size_t accepts = 0;
    std::size_t refusals = 0;
    std::size_t novel_link_notifies = 0;
    std::size_t sessions_created = 0;
    std::size_t session_candidates = 0; // sum of initial candidate-set sizes
    std::size_t guard_terminations = 0;
    std::size_t links_created = 0; // protocol links (= accepts)
    std::size_t links_removed = 0; // failure-incident removals + prunes
    std::size_t join_links = 0;
    std::size_t prunes = 0;
    std::size_t failures = 0;
    std::size_t arrivals = 0;
};

struct SimConfig {
    TopologyConfig topology;
    FailureMode mode = FailureMode::Evolution;
    int events_per_round = 1;
    ProtocolKind protocol = ProtocolKind::None;
    ProtocolParams params;
    std::uint64_t seed = 1;
    std::size_t message_budget_factor = 50; // per-round budget = factor * active
};

// Failure targets for one round: uniform picks for evolution / failures-only,
// highest degree under attack (most inter-cluster links on clustered nets),
// ties toward the smaller id.
std::vector<NodeId> select_failure_targets(const OverlayGraph& g, FailureMode mode,
                                           TopologyKind topo_kind, const std::vector<int>& cluster_of,
                                           int count, Rng& churn_rng);

// One simulation run: seeded topology, round-based churn, and the per-node
// maintenance protocol driven to quiescence inside each round.
//
// Randomness is split into independent streams (topology, churn selection,
// join wiring, protocol) so that runs with the same seed but different
// protocols see the same initial graph and, for random failure modes, the
// same failure/arrival id sequences.
class SimEngine {
public:
    explicit SimEngine(const SimConfig& cfg);
    SimEngine(const SimConfig& cfg, OverlayGraph graph, std::vector<int> cluster_of);

    MetricsRow run_round();
    // Same round sequence with caller-chosen failure targets.
    MetricsRow run_round_with_failures(const std::vector<NodeId>& targets);
    // Evolution / targeted attack: exactly `rounds` rows. Failures-only runs
    // until no active nodes remain.
    std::vector<MetricsRow> run_to_completion(int rounds);

    MetricsRow metrics_snapshot() const; // current state, round = rounds run so far

    const OverlayGraph& graph() const { return graph_; }
    const ViewTable& views() const { return views_; }
    const SimCounters& counters() const { return counters_; }
    const ProtocolParams& params() const { return params_; }
    const std::vector<int>& cluster_of() const { return cluster_of_; }
    const std::vector<std::vector<NodeId>>& failure_log() const { return failure_log_; }
    int round() const { return round_; }
    bool divergent() const { return divergent_; }
    bool has_session(NodeId n) const { return sessions_.count(n) > 0; }

    // Message entry point, also used directly by tests.
    void deliver_message(const ProtocolMessage& msg, std::vector<ProtocolMessage>& outbox);

private:
    void init_protocol_state();
    void resolve_threshold();
    void fail_and_notify(const std::vector<NodeId>& targets);
    void process_arrivals(std::size_t count);
    void drain_messages();
    void run_prune_check();
    void append_histories();
    void send(std::vector<ProtocolMessage>& outbox, ProtocolMessage msg);
    std::pair<int, int> degree_and_links(NodeId n) const;

    SimConfig cfg_;
    ProtocolParams params_; // resolved copy
    OverlayGraph graph_;
    std::vector<int> cluster_of_;
    ViewTable views_;
    std::map<NodeId, RecoverySession> sessions_;
    std::vector<std::vector<std::pair<int, int>>> histories_; // per node (degree, L_n)
    std::vector<NodeTargets> targets_;
    std::vector<std::vector<NodeId>> failure_log_;
    Rng churn_rng_;
    Rng join_rng_;
    Rng proto_rng_;
    int round_ = 0;
    bool divergent_ = false;
    std::size_t round_messages_ = 0;
    SimCounters counters_;
};

} // namespace overlaysim
