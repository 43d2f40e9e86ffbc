#include "overlaysim/scenarios.hpp"

namespace overlaysim {

namespace {

ExperimentConfig base_config() {
    ExperimentConfig cfg;
    cfg.protocols = {ProtocolKind::None, ProtocolKind::P2n, ProtocolKind::Pecc};
    cfg.replicates = 20;
    cfg.base_seed = 1000;
    return cfg;
}

TopologyConfig uniform_topo(int nodes, int degree) {
    TopologyConfig t;
    t.kind = TopologyKind::Uniform;
    t.n_nodes = nodes;
    t.uniform_degree = degree;
    return t;
}

TopologyConfig clustered_topo(int nodes, int clusters, double gamma, double omega) {
    TopologyConfig t;
    t.kind = TopologyKind::Clustered;
    t.n_nodes = nodes;
    t.n_clusters = clusters;
    t.gamma = gamma;
    t.omega = omega;
    return t;
}

TopologyConfig scale_free_topo() {
    TopologyConfig t;
    t.kind = TopologyKind::ScaleFree;
    t.a = 6.0;
    t.b = 2.0;
    return t;
}

std::vector<ScenarioDef> build_registry() {
    std::vector<ScenarioDef> defs;

    {
        ScenarioDef s;
        s.name = "uniform-evolution";
        s.description = "uniform net, paired random failures and arrivals";
        s.config = base_config();
        s.config.topology = uniform_topo(400, 4);
        s.config.mode = FailureMode::Evolution;
        s.config.events_per_round = 2;
        s.config.rounds = 150;
        defs.push_back(s);
    }
    {
        ScenarioDef s;
        s.name = "uniform-attack";
        s.description = "uniform net, highest-degree nodes fail, paired arrivals";
        s.config = base_config();
        s.config.topology = uniform_topo(400, 4);
        s.config.mode = FailureMode::TargetedAttack;
        s.config.events_per_round = 2;
        s.config.rounds = 150;
        defs.push_back(s);
    }
    {
        ScenarioDef s;
        s.name = "uniform-failures";
        s.description = "uniform net, random failures until empty";
        s.config = base_config();
        s.config.topology = uniform_topo(300, 6);
        s.config.mode = FailureMode::FailuresOnly;
        s.config.events_per_round = 1;
        defs.push_back(s);
    }
    {
        ScenarioDef s;
        s.name = "clustered-evolution";
        s.description = "connected multi-cluster net, paired random churn";
        s.config = base_config();
        s.config.topology = clustered_topo(300, 6, 0.15, 0.03);
        s.config.mode = FailureMode::Evolution;
        s.config.events_per_round = 2;
        s.config.rounds = 150;
        defs.push_back(s);
    }
    {
        ScenarioDef s;
        s.name = "clustered-attack";
        s.description = "connected multi-cluster net, inter-cluster hubs fail";
        s.config = base_config();
        s.config.topology = clustered_topo(300, 4, 0.15, 0.04);
        s.config.mode = FailureMode::TargetedAttack;
        s.config.events_per_round = 2;
        s.config.rounds = 150;
        defs.push_back(s);
    }
    {
        ScenarioDef s;
        s.name = "clustered-failures";
        s.description = "sparsely bridged clusters (fragmented start), failures until empty";
        s.config = base_config();
        s.config.topology = clustered_topo(400, 10, 0.2, 0.001);
        s.config.mode = FailureMode::FailuresOnly;
        s.config.events_per_round = 1;
        defs.push_back(s);
    }
    {
        ScenarioDef s;
        s.name = "sf-evolution";
        s.description = "power-law net (a=6, b=2), paired random churn";
        s.config = base_config();
        s.config.topology = scale_free_topo();
        s.config.mode = FailureMode::Evolution;
        s.config.events_per_round = 2;
        s.config.rounds = 150;
        defs.push_back(s);
    }
    {
        ScenarioDef s;
        s.name = "sf-attack";
        s.description = "power-law net, hubs fail, paired arrivals";
        s.config = base_config();
        s.config.topology = scale_free_topo();
        s.config.mode = FailureMode::TargetedAttack;
        s.config.events_per_round = 1;
        s.config.rounds = 60;
        s.config.snapshot_round = 50;
        defs.push_back(s);
    }
    {
        ScenarioDef s;
        s.name = "sf-failures";
        s.description = "power-law net, random failures until empty";
        s.config = base_config();
        s.config.topology = scale_free_topo();
        s.config.mode = FailureMode::FailuresOnly;
        s.config.events_per_round = 1;
        defs.push_back(s);
    }
    {
        ScenarioDef s;
        s.name = "sf-degree-dist";
        s.description = "degree distributions under attack: original vs the three protocols";
        s.config = base_config();
        s.config.topology = scale_free_topo();
        s.config.mode = FailureMode::TargetedAttack;
        s.config.events_per_round = 1;
        s.config.rounds = 60;
        s.config.snapshot_round = 50;
        s.emit_original_degree_dist = true;
        defs.push_back(s);
    }
    return defs;
}

} // namespace

const std::vector<ScenarioDef>& scenario_registry() {
    static const std::vector<ScenarioDef> registry = build_registry();
    return registry;
}

const ScenarioDef* find_scenario(const std::string& name) {
    for (const ScenarioDef& def : scenario_registry()) {
        if (def.name == name) return &def;
    }
    return nullptr;
}

std::vector<std::string> scenario_names() {
    std::vector<std::string> names;
    for (const ScenarioDef& def : scenario_registry()) names.push_back(def.name);
    return names;
}

} // namespace overlaysim
