#include "overlaysim/simulation.hpp"

#include <algorithm>
#include <cmath>

namespace overlaysim {

namespace {

constexpr std::uint64_t kTopologyStream = 0x746f706fULL;
constexpr std::uint64_t kChurnStream = 0x63687572ULL;
constexpr std::uint64_t kJoinStream = 0x6a6f696eULL;
constexpr std::uint64_t kProtoStream = 0x70726f74ULL;

double quantize6(double x) { return std::round(x * 1e6) / 1e6; }

} // namespace

std::string to_string(FailureMode mode) {
    switch (mode) {
        case FailureMode::Evolution: return "evolution";
        case FailureMode::TargetedAttack: return "targeted-attack";
        case FailureMode::FailuresOnly: return "failures-only";
    }
    return "?";
}

std::optional<FailureMode> failure_mode_from_string(const std::string& s) {
    if (s == "evolution") return FailureMode::Evolution;
    if (s == "targeted-attack") return FailureMode::TargetedAttack;
    if (s == "failures-only") return FailureMode::FailuresOnly;
    return std::nullopt;
}

std::vector<NodeId> select_failure_targets(const OverlayGraph& g, FailureMode mode,
                                           TopologyKind topo_kind, const std::vector<int>& cluster_of,
                                           int count, Rng& churn_rng) {
    std::vector<NodeId> active = g.active_nodes();
    if (active.empty() || count <= 0) return {};
    const std::size_t k = std::min(static_cast<std::size_t>(count), active.size());

    if (mode != FailureMode::TargetedAttack) {
        for (std::size_t i = 0; i < k; ++i) {
            const std::size_t idx = i + churn_rng.below(active.size() - i);
            std::swap(active[i], active[idx]);
        }
        active.resize(k);
        return active;
    }

    auto severity = [&](NodeId n) -> std::size_t {
        if (topo_kind == TopologyKind::Clustered) {
            std::size_t inter = 0;
            for (NodeId m : g.neighbors(n)) {
                if (cluster_of[m] != cluster_of[n]) ++inter;
            }
            return inter;
        }
        return g.degree(n);
    };
    std::vector<std::pair<std::size_t, NodeId>> ranked;
    ranked.reserve(active.size());
    for (NodeId n : active) ranked.emplace_back(severity(n), n);
    std::sort(ranked.begin(), ranked.end(), [](const auto& a, const auto& b) {
        if (a.first != b.first) return a.first > b.first;
        return a.second < b.second;
    });
    std::vector<NodeId> out;
    out.reserve(k);
    for (std::size_t i = 0; i < k; ++i) out.push_back(ranked[i].second);
    return out;
}

SimEngine::SimEngine(const SimConfig& cfg)
    : cfg_(cfg),
      params_(cfg.params),
      graph_(0),
      churn_rng_(derive_seed(cfg.seed, kChurnStream)),
      join_rng_(derive_seed(cfg.seed, kJoinStream)),
      proto_rng_(derive_seed(cfg.seed, kProtoStream)) {
    Rng topo_rng(derive_seed(cfg.seed, kTopologyStream));
    GeneratedTopology topo = generate_topology(cfg.topology, topo_rng);
    graph_ = std::move(topo.graph);
    cluster_of_ = std::move(topo.cluster_of);
    init_protocol_state();
}

SimEngine::SimEngine(const SimConfig& cfg, OverlayGraph graph, std::vector<int> cluster_of)
    : cfg_(cfg),
      params_(cfg.params),
      graph_(std::move(graph)),
      cluster_of_(std::move(cluster_of)),
      churn_rng_(derive_seed(cfg.seed, kChurnStream)),
      join_rng_(derive_seed(cfg.seed, kJoinStream)),
      proto_rng_(derive_seed(cfg.seed, kProtoStream)) {
    init_protocol_state();
}

void SimEngine::resolve_threshold() {
    if (params_.threshold_degree > 0) return;
    const std::size_t active = graph_.active_count();
    const double mean_degree =
        active == 0 ? 0.0 : 2.0 * static_cast<double>(graph_.edge_count()) / static_cast<double>(active);
    params_.threshold_degree = std::max(1, static_cast<int>(std::lround(3.0 * mean_degree)));
}

void SimEngine::init_protocol_state() {
    resolve_threshold();
    if (cfg_.protocol == ProtocolKind::None) return;
    views_ = ViewTable(graph_);
    if (cfg_.protocol == ProtocolKind::Pecc) {
        histories_.resize(graph_.node_count());
        targets_.resize(graph_.node_count());
        for (NodeId n = 0; n < graph_.node_count(); ++n) {
            if (!graph_.is_active(n)) continue;
            histories_[n].push_back(degree_and_links(n));
            targets_[n] = update_targets(histories_[n], params_);
        }
    }
}

std::pair<int, int> SimEngine::degree_and_links(NodeId n) const {
    return {static_cast<int>(graph_.degree(n)),
            static_cast<int>(graph_.neighborhood_link_count(n))};
}

void SimEngine::send(std::vector<ProtocolMessage>& outbox, ProtocolMessage msg) {
    ++counters_.messages_sent;
    ++round_messages_;
    switch (msg.kind) {
        case MessageKind::LinkCreationRequest: ++counters_.requests; break;
        case MessageKind::LinkAccept: ++counters_.accepts; break;
        case MessageKind::LinkRefuse: ++counters_.refusals; break;
        case MessageKind::NovelLinkNotify: ++counters_.novel_link_notifies; break;
        case MessageKind::NeighborListUpdate: break;
    }
    outbox.push_back(std::move(msg));
}

void SimEngine::deliver_message(const ProtocolMessage& msg, std::vector<ProtocolMessage>& outbox) {
    if (!graph_.is_active(msg.to) || !graph_.is_active(msg.from)) {
        ++counters_.dropped_messages;
        return;
    }
    const NodeId n = msg.to;
    auto session_it = sessions_.find(n);
    RecoverySession* session = session_it == sessions_.end() ? nullptr : &session_it->second;

    auto broadcast_novel_link = [&](NodeId creator, NodeId partner) {
        for (NodeId q : graph_.neighbors(creator)) {
            if (q == partner) continue;
            send(outbox, ProtocolMessage{MessageKind::NovelLinkNotify, creator, q, creator, partner, {}});
        }
    };

    switch (msg.kind) {
        case MessageKind::LinkCreationRequest: {
            if (should_accept_request(views_.view(n), msg.from)) {
                graph_.add_link(n, msg.from);
                ++counters_.links_created;
                views_.on_edge_added(graph_, n, msg.from);
                broadcast_novel_link(n, msg.from);
                send(outbox, ProtocolMessage{MessageKind::LinkAccept, n, msg.from, 0, 0, {}});
            } else {
                send(outbox, ProtocolMessage{MessageKind::LinkRefuse, n, msg.from, 0, 0, {}});
            }
            break;
        }
        case MessageKind::LinkAccept: {
            // The acceptor already created the edge; announce it here too.
            if (session && session->pending == msg.from) session->pending.reset();
            broadcast_novel_link(n, msg.from);
            break;
        }
        case MessageKind::LinkRefuse: {
            if (session && session->pending == msg.from) session->pending.reset();
            break;
        }
        case MessageKind::NovelLinkNotify: {
            if (session) {
                session->candidates.erase(msg.link_b);
                if (session->pending == msg.link_b) session->pending.reset();
            }
            break;
        }
        case MessageKind::NeighborListUpdate: {
            views_.view_mut(n).apply_neighbor_list(
                msg.from, std::set<NodeId>(msg.neighbor_list.begin(), msg.neighbor_list.end()));
            break;
        }
    }
}

void SimEngine::fail_and_notify(const std::vector<NodeId>& targets) {
    struct FailureEvent {
        NodeId failed;
        std::vector<NodeId> pre_neighbors;
        std::map<NodeId, double> cached_ecc;
    };
    std::vector<FailureEvent> events;
    events.reserve(targets.size());

    for (NodeId f : targets) {
        FailureEvent ev;
        ev.failed = f;
        if (cfg_.protocol == ProtocolKind::Pecc) {
            // Snapshot each surviving neighbor's view of the lost link before
            // the edges disappear: this is the value the recovery gate uses.
            for (NodeId m : graph_.neighbors(f)) {
                ev.cached_ecc[m] =
                    params_.force_zero_ecc ? 0.0 : graph_.ecc(m, f).ecc;
            }
        }
        std::vector<Edge> removed = graph_.fail_node(f);
        counters_.links_removed += removed.size();
        ++counters_.failures;
        for (const auto& [from, m] : removed) ev.pre_neighbors.push_back(m);
        if (cfg_.protocol != ProtocolKind::None) {
            views_.on_node_failed(graph_, f, removed);
        }
        if (cfg_.protocol == ProtocolKind::Pecc) {
            histories_[f].clear();
            targets_[f] = NodeTargets{};
        }
        events.push_back(std::move(ev));
    }
    failure_log_.push_back(targets);
    if (cfg_.protocol == ProtocolKind::None) return;

    // Notification order across simultaneous failures is randomized.
    std::vector<std::pair<NodeId, const FailureEvent*>> notifications;
    for (const FailureEvent& ev : events) {
        for (NodeId m : ev.pre_neighbors) {
            if (graph_.is_active(m)) notifications.emplace_back(m, &ev);
        }
    }
    proto_rng_.shuffle(notifications);

    for (const auto& [node, ev] : notifications) {
        std::set<NodeId> candidates = recovery_candidates(views_.view(node), graph_, ev->pre_neighbors);
        if (candidates.empty()) continue;
        if (cfg_.protocol == ProtocolKind::Pecc) {
            const auto it = ev->cached_ecc.find(node);
            const double cached = it == ev->cached_ecc.end() ? 0.0 : it->second;
            if (!ecc_gate_passes(cached, proto_rng_)) continue;
        }
        auto [sit, inserted] = sessions_.try_emplace(node);
        RecoverySession& session = sit->second;
        if (inserted) {
            session.owner = node;
            session.failed = ev->failed;
            session.candidates = std::move(candidates);
            session.initial_candidates = session.candidates.size();
            session.backoff_until = static_cast<int>(proto_rng_.uniform_int(1, params_.backoff_max));
            ++counters_.sessions_created;
            counters_.session_candidates += session.initial_candidates;
        } else {
            // A second neighbor failed in the same round: fold the new lost
            // nodes into the running session.
            for (NodeId p : candidates) {
                if (session.candidates.insert(p).second) {
                    ++session.initial_candidates;
                    ++counters_.session_candidates;
                }
            }
        }
    }
}

void SimEngine::process_arrivals(std::size_t count) {
    for (std::size_t i = 0; i < count; ++i) {
        const std::vector<NodeId> pool = graph_.inactive_nodes();
        if (pool.empty()) return;
        const NodeId node = pool[churn_rng_.below(pool.size())];
        join_node(graph_, cfg_.topology, cluster_of_, node, join_rng_);
        counters_.join_links += graph_.degree(node);
        ++counters_.arrivals;
        if (cfg_.protocol != ProtocolKind::None) {
            views_.on_node_joined(graph_, node);
        }
        if (cfg_.protocol == ProtocolKind::Pecc) {
            histories_[node].clear();
            histories_[node].push_back(degree_and_links(node));
            targets_[node] = update_targets(histories_[node], params_);
        }
    }
}

void SimEngine::drain_messages() {
    const std::size_t budget =
        cfg_.message_budget_factor * std::max<std::size_t>(graph_.active_count(), 1);
    std::vector<ProtocolMessage> inbox;
    std::vector<ProtocolMessage> outbox;
    int tick = 0;
    while (!inbox.empty() || !sessions_.empty()) {
        ++tick;
        proto_rng_.shuffle(inbox);
        for (const ProtocolMessage& msg : inbox) {
            deliver_message(msg, outbox);
        }
        inbox.clear();

        std::vector<NodeId> owners;
        owners.reserve(sessions_.size());
        for (const auto& [node, session] : sessions_) owners.push_back(node);
        proto_rng_.shuffle(owners);
        for (NodeId node : owners) {
            auto it = sessions_.find(node);
            if (it == sessions_.end()) continue;
            ProtocolMessage msg;
            switch (step_recovery(it->second, graph_, params_, tick, proto_rng_, msg)) {
                case StepResult::Waiting: break;
                case StepResult::Sent: send(outbox, std::move(msg)); break;
                case StepResult::Terminated: sessions_.erase(it); break;
                case StepResult::TerminatedByGuard:
                    ++counters_.guard_terminations;
                    sessions_.erase(it);
                    break;
            }
        }
        inbox = std::move(outbox);
        outbox.clear();
        if (round_messages_ > budget) {
            divergent_ = true;
            sessions_.clear();
            inbox.clear();
            break;
        }
    }
}

void SimEngine::run_prune_check() {
    if (cfg_.protocol != ProtocolKind::Pecc || !params_.prune_enabled) return;
    if (params_.target_check_period <= 0 || round_ % params_.target_check_period != 0) return;
    for (NodeId n : graph_.active_nodes()) {
        for (const auto& [from, to] : periodic_prune(graph_, n, params_, targets_[n])) {
            if (graph_.remove_link(from, to)) {
                ++counters_.links_removed;
                ++counters_.prunes;
                views_.on_edge_removed(graph_, from, to);
            }
        }
    }
    for (NodeId n : graph_.active_nodes()) {
        targets_[n] = update_targets(histories_[n], params_);
    }
}

void SimEngine::append_histories() {
    if (cfg_.protocol != ProtocolKind::Pecc) return;
    const std::size_t keep = static_cast<std::size_t>(std::max(params_.target_window, 1));
    for (NodeId n : graph_.active_nodes()) {
        auto& h = histories_[n];
        h.push_back(degree_and_links(n));
        if (h.size() > keep) h.erase(h.begin(), h.begin() + static_cast<long>(h.size() - keep));
    }
}

MetricsRow SimEngine::run_round() {
    return run_round_with_failures(select_failure_targets(
        graph_, cfg_.mode, cfg_.topology.kind, cluster_of_, cfg_.events_per_round, churn_rng_));
}

MetricsRow SimEngine::run_round_with_failures(const std::vector<NodeId>& targets) {
    ++round_;
    round_messages_ = 0;

    fail_and_notify(targets);
    if (cfg_.mode != FailureMode::FailuresOnly) {
        process_arrivals(targets.size());
    }
    drain_messages();
    run_prune_check();
    append_histories();
    return metrics_snapshot();
}

MetricsRow SimEngine::metrics_snapshot() const {
    MetricsRow row;
    row.round = round_;
    const std::vector<std::size_t> sizes = graph_.component_sizes();
    row.main_component_size = sizes.empty() ? 0 : sizes.front();
    row.active_count = graph_.active_count();
    row.main_component_fraction =
        row.active_count == 0
            ? 0.0
            : quantize6(static_cast<double>(row.main_component_size) / static_cast<double>(row.active_count));
    row.isolated_count = graph_.isolated_count();
    const auto [n1, n2] = graph_.neighborhood_stats();
    row.avg_n1 = quantize6(n1);
    row.avg_n2 = quantize6(n2);
    row.links_total = graph_.edge_count();
    row.messages_sent = round_messages_;
    return row;
}

std::vector<MetricsRow> SimEngine::run_to_completion(int rounds) {
    std::vector<MetricsRow> rows;
    if (cfg_.mode == FailureMode::FailuresOnly) {
        while (graph_.active_count() > 0) rows.push_back(run_round());
    } else {
        for (int r = 0; r < rounds; ++r) rows.push_back(run_round());
    }
    return rows;
}

} // namespace overlaysim
