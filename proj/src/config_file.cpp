#include "overlaysim/config_file.hpp"

#include <cstdio>
#include <fstream>
#include <functional>
#include <map>
#include <sstream>

namespace overlaysim {

namespace {

std::string trim(const std::string& s) {
    const auto begin = s.find_first_not_of(" \t\r\n");
    if (begin == std::string::npos) return "";
    const auto end = s.find_last_not_of(" \t\r\n");
    return s.substr(begin, end - begin + 1);
}

long long parse_int(const std::string& key, const std::string& value) {
    try {
        std::size_t pos = 0;
        const long long v = std::stoll(value, &pos);
        if (pos != value.size()) throw std::invalid_argument("");
        return v;
    } catch (const std::exception&) {
        throw ConfigError(key, "expected an integer, got '" + value + "'");
    }
}

double parse_real(const std::string& key, const std::string& value) {
    try {
        std::size_t pos = 0;
        const double v = std::stod(value, &pos);
        if (pos != value.size()) throw std::invalid_argument("");
        return v;
    } catch (const std::exception&) {
        throw ConfigError(key, "expected a number, got '" + value + "'");
    }
}

bool parse_bool(const std::string& key, const std::string& value) {
    if (value == "true" || value == "1" || value == "yes") return true;
    if (value == "false" || value == "0" || value == "no") return false;
    throw ConfigError(key, "expected true/false, got '" + value + "'");
}

std::string format_real(double v) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%g", v);
    return buf;
}

using Setter = std::function<void(ExperimentConfig&, const std::string& key, const std::string& value)>;
using Getter = std::function<std::string(const ExperimentConfig&)>;

struct KeySpec {
    const char* key;
    Setter set;
    Getter get;
};

const std::vector<KeySpec>& key_table() {
    static const std::vector<KeySpec> table = {
        {"topology.kind",
         [](ExperimentConfig& c, const std::string& k, const std::string& v) {
             const auto kind = topology_kind_from_string(v);
             if (!kind) throw ConfigError(k, "expected uniform|clustered|scale-free, got '" + v + "'");
             c.topology.kind = *kind;
         },
         [](const ExperimentConfig& c) { return to_string(c.topology.kind); }},
        {"topology.nodes",
         [](ExperimentConfig& c, const std::string& k, const std::string& v) {
             c.topology.n_nodes = static_cast<int>(parse_int(k, v));
         },
         [](const ExperimentConfig& c) { return std::to_string(c.topology.n_nodes); }},
        {"topology.degree",
         [](ExperimentConfig& c, const std::string& k, const std::string& v) {
             c.topology.uniform_degree = static_cast<int>(parse_int(k, v));
         },
         [](const ExperimentConfig& c) { return std::to_string(c.topology.uniform_degree); }},
        {"topology.clusters",
         [](ExperimentConfig& c, const std::string& k, const std::string& v) {
             c.topology.n_clusters = static_cast<int>(parse_int(k, v));
         },
         [](const ExperimentConfig& c) { return std::to_string(c.topology.n_clusters); }},
        {"topology.gamma",
         [](ExperimentConfig& c, const std::string& k, const std::string& v) {
             c.topology.gamma = parse_real(k, v);
         },
         [](const ExperimentConfig& c) { return format_real(c.topology.gamma); }},
        {"topology.omega",
         [](ExperimentConfig& c, const std::string& k, const std::string& v) {
             c.topology.omega = parse_real(k, v);
         },
         [](const ExperimentConfig& c) { return format_real(c.topology.omega); }},
        {"topology.a",
         [](ExperimentConfig& c, const std::string& k, const std::string& v) {
             c.topology.a = parse_real(k, v);
         },
         [](const ExperimentConfig& c) { return format_real(c.topology.a); }},
        {"topology.b",
         [](ExperimentConfig& c, const std::string& k, const std::string& v) {
             c.topology.b = parse_real(k, v);
         },
         [](const ExperimentConfig& c) { return format_real(c.topology.b); }},
        {"topology.sf_join_links",
         [](ExperimentConfig& c, const std::string& k, const std::string& v) {
             c.topology.sf_join_links = static_cast<int>(parse_int(k, v));
         },
         [](const ExperimentConfig& c) { return std::to_string(c.topology.sf_join_links); }},
        {"mode",
         [](ExperimentConfig& c, const std::string& k, const std::string& v) {
             const auto mode = failure_mode_from_string(v);
             if (!mode) {
                 throw ConfigError(k, "expected evolution|targeted-attack|failures-only, got '" + v + "'");
             }
             c.mode = *mode;
         },
         [](const ExperimentConfig& c) { return to_string(c.mode); }},
        {"events_per_round",
         [](ExperimentConfig& c, const std::string& k, const std::string& v) {
             c.events_per_round = static_cast<int>(parse_int(k, v));
         },
         [](const ExperimentConfig& c) { return std::to_string(c.events_per_round); }},
        {"protocols",
         [](ExperimentConfig& c, const std::string& k, const std::string& v) {
             std::vector<ProtocolKind> protocols;
             std::stringstream ss(v);
             std::string item;
             while (std::getline(ss, item, ',')) {
                 item = trim(item);
                 if (item.empty()) continue;
                 const auto p = protocol_from_string(item);
                 if (!p) throw ConfigError(k, "unknown protocol '" + item + "'");
                 protocols.push_back(*p);
             }
             if (protocols.empty()) throw ConfigError(k, "needs at least one protocol");
             c.protocols = std::move(protocols);
         },
         [](const ExperimentConfig& c) {
             std::string out;
             for (std::size_t i = 0; i < c.protocols.size(); ++i) {
                 if (i) out += ",";
                 out += to_string(c.protocols[i]);
             }
             return out;
         }},
        {"rounds",
         [](ExperimentConfig& c, const std::string& k, const std::string& v) {
             c.rounds = static_cast<int>(parse_int(k, v));
         },
         [](const ExperimentConfig& c) { return std::to_string(c.rounds); }},
        {"replicates",
         [](ExperimentConfig& c, const std::string& k, const std::string& v) {
             c.replicates = static_cast<int>(parse_int(k, v));
         },
         [](const ExperimentConfig& c) { return std::to_string(c.replicates); }},
        {"transient_rounds",
         [](ExperimentConfig& c, const std::string& k, const std::string& v) {
             c.transient_rounds = static_cast<int>(parse_int(k, v));
         },
         [](const ExperimentConfig& c) { return std::to_string(c.transient_rounds); }},
        {"base_seed",
         [](ExperimentConfig& c, const std::string& k, const std::string& v) {
             c.base_seed = static_cast<std::uint64_t>(parse_int(k, v));
         },
         [](const ExperimentConfig& c) { return std::to_string(c.base_seed); }},
        {"snapshot_round",
         [](ExperimentConfig& c, const std::string& k, const std::string& v) {
             c.snapshot_round = static_cast<int>(parse_int(k, v));
         },
         [](const ExperimentConfig& c) { return std::to_string(c.snapshot_round); }},
        {"threads",
         [](ExperimentConfig& c, const std::string& k, const std::string& v) {
             c.threads = static_cast<int>(parse_int(k, v));
         },
         [](const ExperimentConfig& c) { return std::to_string(c.threads); }},
        {"params.threshold_degree",
         [](ExperimentConfig& c, const std::string& k, const std::string& v) {
             c.params.threshold_degree = static_cast<int>(parse_int(k, v));
         },
         [](const ExperimentConfig& c) { return std::to_string(c.params.threshold_degree); }},
        {"params.t_ecc",
         [](ExperimentConfig& c, const std::string& k, const std::string& v) {
             c.params.t_ecc = parse_real(k, v);
         },
         [](const ExperimentConfig& c) { return format_real(c.params.t_ecc); }},
        {"params.r",
         [](ExperimentConfig& c, const std::string& k, const std::string& v) {
             c.params.max_prune_links = static_cast<int>(parse_int(k, v));
         },
         [](const ExperimentConfig& c) { return std::to_string(c.params.max_prune_links); }},
        {"params.target_check_period",
         [](ExperimentConfig& c, const std::string& k, const std::string& v) {
             c.params.target_check_period = static_cast<int>(parse_int(k, v));
         },
         [](const ExperimentConfig& c) { return std::to_string(c.params.target_check_period); }},
        {"params.target_window",
         [](ExperimentConfig& c, const std::string& k, const std::string& v) {
             c.params.target_window = static_cast<int>(parse_int(k, v));
         },
         [](const ExperimentConfig& c) { return std::to_string(c.params.target_window); }},
        {"params.growth_factor",
         [](ExperimentConfig& c, const std::string& k, const std::string& v) {
             c.params.growth_factor = parse_real(k, v);
         },
         [](const ExperimentConfig& c) { return format_real(c.params.growth_factor); }},
        {"params.backoff_max",
         [](ExperimentConfig& c, const std::string& k, const std::string& v) {
             c.params.backoff_max = static_cast<int>(parse_int(k, v));
         },
         [](const ExperimentConfig& c) { return std::to_string(c.params.backoff_max); }},
        {"params.prune_enabled",
         [](ExperimentConfig& c, const std::string& k, const std::string& v) {
             c.params.prune_enabled = parse_bool(k, v);
         },
         [](const ExperimentConfig& c) { return std::string(c.params.prune_enabled ? "true" : "false"); }},
        {"params.force_zero_ecc",
         [](ExperimentConfig& c, const std::string& k, const std::string& v) {
             c.params.force_zero_ecc = parse_bool(k, v);
         },
         [](const ExperimentConfig& c) { return std::string(c.params.force_zero_ecc ? "true" : "false"); }},
    };
    return table;
}

const KeySpec* find_key(const std::string& key) {
    for (const KeySpec& spec : key_table()) {
        if (key == spec.key) return &spec;
    }
    return nullptr;
}

} // namespace

ExperimentConfig default_experiment_config() { return ExperimentConfig{}; }

void apply_override(ExperimentConfig& cfg, const std::string& key, const std::string& value) {
    const KeySpec* spec = find_key(key);
    if (!spec) throw ConfigError(key, "unknown configuration key");
    spec->set(cfg, key, trim(value));
}

ExperimentConfig parse_config_text(const std::string& text) {
    ExperimentConfig cfg = default_experiment_config();
    std::stringstream ss(text);
    std::string line;
    int line_no = 0;
    while (std::getline(ss, line)) {
        ++line_no;
        const auto hash = line.find('#');
        if (hash != std::string::npos) line = line.substr(0, hash);
        line = trim(line);
        if (line.empty()) continue;
        const auto eq = line.find('=');
        if (eq == std::string::npos) {
            throw ConfigError("", "line " + std::to_string(line_no) + ": expected 'key = value'");
        }
        apply_override(cfg, trim(line.substr(0, eq)), trim(line.substr(eq + 1)));
    }
    return cfg;
}

ExperimentConfig parse_config_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot read config file '" + path + "'");
    std::stringstream buffer;
    buffer << in.rdbuf();
    return parse_config_text(buffer.str());
}

void resolve_experiment_config(ExperimentConfig& cfg) {
    try {
        validate_topology_config(cfg.topology);
    } catch (const std::invalid_argument& e) {
        const std::string msg = e.what();
        const auto colon = msg.find(':');
        const std::string key = colon == std::string::npos ? "" : msg.substr(0, colon);
        throw ConfigError(key, colon == std::string::npos ? msg : trim(msg.substr(colon + 1)));
    }
    if (cfg.topology.kind == TopologyKind::ScaleFree) {
        cfg.topology.n_nodes = static_cast<int>(aiello_degree_plan(cfg.topology.a, cfg.topology.b).size());
    }
    if (cfg.events_per_round < 1) throw ConfigError("events_per_round", "must be >= 1");
    if (cfg.replicates < 1) throw ConfigError("replicates", "must be >= 1");
    if (cfg.mode != FailureMode::FailuresOnly && cfg.rounds < 1) {
        throw ConfigError("rounds", "must be >= 1");
    }
    cfg.transient_rounds = resolve_transient_rounds(cfg);
    if (cfg.mode != FailureMode::FailuresOnly && cfg.transient_rounds >= cfg.rounds) {
        throw ConfigError("transient_rounds", "must be < rounds");
    }
    if (cfg.params.threshold_degree < 0) throw ConfigError("params.threshold_degree", "must be >= 0");
    if (cfg.params.t_ecc < 0.0 || cfg.params.t_ecc > 1.0) {
        throw ConfigError("params.t_ecc", "must be in [0, 1]");
    }
    if (cfg.params.max_prune_links < 1) throw ConfigError("params.r", "must be >= 1");
    if (cfg.params.target_window < 1) throw ConfigError("params.target_window", "must be >= 1");
    if (cfg.params.target_check_period < 1) {
        throw ConfigError("params.target_check_period", "must be >= 1");
    }
    if (cfg.params.growth_factor <= 1.0) throw ConfigError("params.growth_factor", "must be > 1");
    if (cfg.params.backoff_max < 1) throw ConfigError("params.backoff_max", "must be >= 1");
    if (cfg.threads < 0) throw ConfigError("threads", "must be >= 0");
}

std::string render_config(const ExperimentConfig& cfg) {
    std::string out;
    for (const KeySpec& spec : key_table()) {
        out += spec.key;
        out += " = ";
        out += spec.get(cfg);
        out += "\n";
    }
    return out;
}

} // namespace overlaysim
