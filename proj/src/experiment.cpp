#include "overlaysim/experiment.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <stdexcept>
#include <thread>

namespace overlaysim {

int resolve_transient_rounds(const ExperimentConfig& cfg) {
    if (cfg.transient_rounds >= 0) return cfg.transient_rounds;
    if (cfg.mode == FailureMode::FailuresOnly) return 0;
    return cfg.rounds / 10;
}

LogLogFit loglog_fit(const std::map<std::size_t, double>& dist) {
    std::vector<std::pair<double, double>> points;
    for (const auto& [degree, prob] : dist) {
        if (degree == 0 || prob <= 0.0) continue;
        points.emplace_back(std::log(static_cast<double>(degree)), std::log(prob));
    }
    if (points.size() < 3) {
        throw std::domain_error("loglog_fit: need at least 3 distinct nonzero degrees, have " +
                                std::to_string(points.size()));
    }
    double sx = 0, sy = 0;
    for (const auto& [x, y] : points) {
        sx += x;
        sy += y;
    }
    const double n = static_cast<double>(points.size());
    const double mx = sx / n;
    const double my = sy / n;
    double sxx = 0, sxy = 0;
    for (const auto& [x, y] : points) {
        sxx += (x - mx) * (x - mx);
        sxy += (x - mx) * (y - my);
    }
    const double slope = sxy / sxx;
    const double intercept = my - slope * mx;
    double ss_res = 0, ss_tot = 0;
    for (const auto& [x, y] : points) {
        const double fitted = intercept + slope * x;
        ss_res += (y - fitted) * (y - fitted);
        ss_tot += (y - my) * (y - my);
    }
    const double r2 = ss_tot <= 0.0 ? 1.0 : 1.0 - ss_res / ss_tot;
    return LogLogFit{slope, r2, static_cast<int>(points.size())};
}

RunResult execute_run(const ExperimentConfig& cfg, ProtocolKind protocol, int replicate) {
    SimConfig sim_cfg;
    sim_cfg.topology = cfg.topology;
    sim_cfg.mode = cfg.mode;
    sim_cfg.events_per_round = cfg.events_per_round;
    sim_cfg.protocol = protocol;
    sim_cfg.params = cfg.params;
    sim_cfg.seed = cfg.base_seed + static_cast<std::uint64_t>(replicate);

    SimEngine engine(sim_cfg);
    RunResult result;
    result.protocol = protocol;
    result.seed = sim_cfg.seed;
    result.replicate = replicate;
    result.initial = engine.metrics_snapshot();
    if (cfg.snapshot_round >= 0) {
        result.initial_degree_dist = engine.graph().degree_distribution();
        if (cfg.snapshot_round == 0) {
            result.snapshot_degree_dist = result.initial_degree_dist;
        }
    }

    if (cfg.mode == FailureMode::FailuresOnly) {
        while (engine.graph().active_count() > 0) {
            result.rows.push_back(engine.run_round());
            if (cfg.snapshot_round == engine.round()) {
                result.snapshot_degree_dist = engine.graph().degree_distribution();
            }
        }
    } else {
        for (int r = 0; r < cfg.rounds; ++r) {
            result.rows.push_back(engine.run_round());
            if (cfg.snapshot_round == engine.round()) {
                result.snapshot_degree_dist = engine.graph().degree_distribution();
            }
        }
    }
    result.divergent = engine.divergent();
    result.failures_by_round = engine.failure_log();
    result.counters = engine.counters();
    return result;
}

namespace {

struct Accumulator {
    double sum = 0;
    double sum_sq = 0;
    int n = 0;
    void add(double x) {
        sum += x;
        sum_sq += x * x;
        ++n;
    }
    double mean() const { return n == 0 ? 0.0 : sum / n; }
    double stddev() const {
        if (n == 0) return 0.0;
        const double m = mean();
        const double var = std::max(0.0, sum_sq / n - m * m);
        return std::sqrt(var);
    }
};

std::map<std::size_t, double> mean_distribution(
    const std::vector<const std::map<std::size_t, double>*>& dists) {
    std::map<std::size_t, double> out;
    if (dists.empty()) return out;
    for (const auto* d : dists) {
        for (const auto& [degree, p] : *d) out[degree] += p;
    }
    for (auto& [degree, p] : out) p /= static_cast<double>(dists.size());
    return out;
}

} // namespace

ProtocolAggregate aggregate_runs(ProtocolKind protocol,
                                 const std::vector<const RunResult*>& runs) {
    ProtocolAggregate agg;
    agg.protocol = protocol;
    std::size_t max_rounds = 0;
    for (const RunResult* run : runs) {
        max_rounds = std::max(max_rounds, run->rows.size());
        if (run->divergent) ++agg.divergent_runs;
    }
    agg.rows.reserve(max_rounds);
    for (std::size_t r = 0; r < max_rounds; ++r) {
        AggregateRow row;
        row.round = static_cast<int>(r + 1);
        Accumulator acc[8];
        for (const RunResult* run : runs) {
            if (r >= run->rows.size()) continue;
            const MetricsRow& m = run->rows[r];
            acc[0].add(static_cast<double>(m.main_component_size));
            acc[1].add(m.main_component_fraction);
            acc[2].add(static_cast<double>(m.isolated_count));
            acc[3].add(m.avg_n1);
            acc[4].add(m.avg_n2);
            acc[5].add(static_cast<double>(m.active_count));
            acc[6].add(static_cast<double>(m.links_total));
            acc[7].add(static_cast<double>(m.messages_sent));
            if (run->divergent) ++row.divergent_runs;
        }
        row.samples = acc[0].n;
        row.main_component_size_mean = acc[0].mean();
        row.main_component_size_std = acc[0].stddev();
        row.main_component_fraction_mean = acc[1].mean();
        row.main_component_fraction_std = acc[1].stddev();
        row.isolated_count_mean = acc[2].mean();
        row.isolated_count_std = acc[2].stddev();
        row.avg_n1_mean = acc[3].mean();
        row.avg_n1_std = acc[3].stddev();
        row.avg_n2_mean = acc[4].mean();
        row.avg_n2_std = acc[4].stddev();
        row.active_count_mean = acc[5].mean();
        row.active_count_std = acc[5].stddev();
        row.links_total_mean = acc[6].mean();
        row.links_total_std = acc[6].stddev();
        row.messages_sent_mean = acc[7].mean();
        row.messages_sent_std = acc[7].stddev();
        agg.rows.push_back(row);
    }
    std::vector<const std::map<std::size_t, double>*> snapshots;
    std::vector<const std::map<std::size_t, double>*> initials;
    for (const RunResult* run : runs) {
        if (!run->snapshot_degree_dist.empty()) snapshots.push_back(&run->snapshot_degree_dist);
        if (!run->initial_degree_dist.empty()) initials.push_back(&run->initial_degree_dist);
    }
    agg.mean_snapshot_degree_dist = mean_distribution(snapshots);
    agg.mean_initial_degree_dist = mean_distribution(initials);
    return agg;
}

AggregateReport run_experiment(const ExperimentConfig& cfg) {
    struct Job {
        ProtocolKind protocol;
        int replicate;
    };
    std::vector<Job> jobs;
    for (ProtocolKind protocol : cfg.protocols) {
        for (int i = 0; i < cfg.replicates; ++i) jobs.push_back({protocol, i});
    }

    AggregateReport report;
    report.runs.resize(jobs.size());

    unsigned int threads = cfg.threads > 0 ? static_cast<unsigned int>(cfg.threads)
                                           : std::thread::hardware_concurrency();
    threads = std::max(1u, std::min<unsigned int>(threads, jobs.size()));

    std::atomic<std::size_t> next{0};
    auto worker = [&]() {
        for (;;) {
            const std::size_t i = next.fetch_add(1);
            if (i >= jobs.size()) return;
            report.runs[i] = execute_run(cfg, jobs[i].protocol, jobs[i].replicate);
        }
    };
    if (threads <= 1) {
        worker();
    } else {
        std::vector<std::thread> pool;
        pool.reserve(threads);
        for (unsigned int t = 0; t < threads; ++t) pool.emplace_back(worker);
        for (auto& t : pool) t.join();
    }

    for (ProtocolKind protocol : cfg.protocols) {
        std::vector<const RunResult*> runs;
        for (const RunResult& run : report.runs) {
            if (run.protocol == protocol) runs.push_back(&run);
        }
        report.per_protocol.push_back(aggregate_runs(protocol, runs));
    }
    return report;
}

double post_transient_mean(const std::vector<MetricsRow>& rows, int transient_rounds,
                           double (*metric)(const MetricsRow&)) {
    double sum = 0;
    int n = 0;
    for (const MetricsRow& row : rows) {
        if (row.round <= transient_rounds) continue;
        sum += metric(row);
        ++n;
    }
    return n == 0 ? 0.0 : sum / n;
}

} // namespace overlaysim
