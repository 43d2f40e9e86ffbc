#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <vector>

#include "overlaysim/protocol.hpp"
#include "overlaysim/simulation.hpp"
#include "overlaysim/topology.hpp"

namespace overlaysim {

struct ExperimentConfig {
    TopologyConfig topology;
    FailureMode mode = FailureMode::Evolution;
    int events_per_round = 1;
    std::vector<ProtocolKind> protocols{ProtocolKind::None, ProtocolKind::P2n, ProtocolKind::Pecc};
    ProtocolParams params;
    int replicates = 20;
    int rounds = 100;
    int transient_rounds = -1; // -1 = auto: 10% of rounds, 0 for failures-only
    std::uint64_t base_seed = 1;
    int snapshot_round = -1; // -1 = no degree snapshot; 0 = initial graph
    int threads = 0;         // 0 = hardware concurrency
};

int resolve_transient_rounds(const ExperimentConfig& cfg);

struct LogLogFit {
    double slope = 0.0;
    double r2 = 0.0;
    int points = 0;
};

// Least-squares fit of log(prob) on log(degree) over nonzero entries.
// Throws std::domain_error with fewer than 3 distinct degrees.
LogLogFit loglog_fit(const std::map<std::size_t, double>& dist);

struct RunResult {
    ProtocolKind protocol = ProtocolKind::None;
    std::uint64_t seed = 0;
    int replicate = 0;
    bool divergent = false;
    std::vector<MetricsRow> rows;
    MetricsRow initial; // round-0 state
    std::map<std::size_t, double> initial_degree_dist;
    std::map<std::size_t, double> snapshot_degree_dist; // at snapshot_round, if set
    std::vector<std::vector<NodeId>> failures_by_round;
    SimCounters counters;
};

struct AggregateRow {
    int round = 0;
    int samples = 0;
    int divergent_runs = 0;
    double main_component_size_mean = 0, main_component_size_std = 0;
    double main_component_fraction_mean = 0, main_component_fraction_std = 0;
    double isolated_count_mean = 0, isolated_count_std = 0;
    double avg_n1_mean = 0, avg_n1_std = 0;
    double avg_n2_mean = 0, avg_n2_std = 0;
    double active_count_mean = 0, active_count_std = 0;
    double links_total_mean = 0, links_total_std = 0;
    double messages_sent_mean = 0, messages_sent_std = 0;
};

struct ProtocolAggregate {
    ProtocolKind protocol = ProtocolKind::None;
    std::vector<AggregateRow> rows;
    int divergent_runs = 0;
    std::map<std::size_t, double> mean_snapshot_degree_dist;
    std::map<std::size_t, double> mean_initial_degree_dist;
};

struct AggregateReport {
    std::vector<ProtocolAggregate> per_protocol;
    std::vector<RunResult> runs;
};

// One full run (drives a SimEngine to completion, capturing snapshots).
RunResult execute_run(const ExperimentConfig& cfg, ProtocolKind protocol, int replicate);

// Per-round mean/std over a set of runs; permutation-invariant.
ProtocolAggregate aggregate_runs(ProtocolKind protocol,
                                 const std::vector<const RunResult*>& runs);

// replicates x protocols runs with seeds base_seed + i; the same seed yields
// the same topology and churn for every protocol (paired comparison).
AggregateReport run_experiment(const ExperimentConfig& cfg);

// Mean of one metric over post-transient rounds of a single run.
double post_transient_mean(const std::vector<MetricsRow>& rows, int transient_rounds,
                           double (*metric)(const MetricsRow&));

} // namespace overlaysim
