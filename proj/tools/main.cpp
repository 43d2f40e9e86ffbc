#include <cstdlib>
#include <filesystem>
#include <iostream>
#include <string>
#include <vector>

#include "CLI11.hpp"

#include "overlaysim/config_file.hpp"
#include "overlaysim/csv.hpp"
#include "overlaysim/scenarios.hpp"

namespace fs = std::filesystem;
using namespace overlaysim;

namespace {

std::string default_out_dir() {
    const char* env = std::getenv("OVERLAYSIM_OUT");
    return env && *env ? env : "out";
}

void write_outputs(const std::string& out_dir, const ExperimentConfig& cfg,
                   const AggregateReport& report, bool emit_original_degree_dist) {
    std::error_code ec;
    fs::create_directories(out_dir, ec);
    if (ec) throw IoError("cannot create output directory '" + out_dir + "': " + ec.message());

    const fs::path base(out_dir);
    write_text_file((base / "resolved_config").string(), render_config(cfg));

    for (const RunResult& run : report.runs) {
        const std::string name =
            "run_" + to_string(run.protocol) + "_" + std::to_string(run.seed) + ".csv";
        write_run_csv((base / name).string(), run.rows);
    }
    for (const ProtocolAggregate& agg : report.per_protocol) {
        write_aggregate_csv((base / ("aggregate_" + to_string(agg.protocol) + ".csv")).string(), agg);
        if (cfg.snapshot_round >= 0 && !agg.mean_snapshot_degree_dist.empty()) {
            write_degree_dist_csv(
                (base / ("degree_dist_" + to_string(agg.protocol) + ".csv")).string(),
                agg.mean_snapshot_degree_dist);
        }
    }
    if (emit_original_degree_dist && !report.per_protocol.empty()) {
        write_degree_dist_csv((base / "degree_dist_original.csv").string(),
                              report.per_protocol.front().mean_initial_degree_dist);
    }

    std::size_t divergent = 0;
    for (const RunResult& run : report.runs) {
        if (run.divergent) ++divergent;
    }
    if (divergent > 0) {
        std::cerr << "warning: " << divergent << " run(s) hit the message budget "
                  << "(flagged in aggregate CSVs)\n";
    }
}

int run_and_write(ExperimentConfig cfg, const std::string& out_dir, bool emit_original) {
    resolve_experiment_config(cfg);
    const AggregateReport report = run_experiment(cfg);
    write_outputs(out_dir, cfg, report, emit_original);
    std::cout << "wrote " << report.runs.size() << " run(s) to " << out_dir << "\n";
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Self-healing P2P overlay simulator"};
    app.require_subcommand(1);

    std::string config_path;
    std::string out_dir = default_out_dir();
    std::vector<std::string> overrides;
    std::string protocol_override;
    long long seed_override = -1;
    int replicates_override = -1;

    CLI::App* run_cmd = app.add_subcommand("run", "Run an experiment from a config file");
    run_cmd->add_option("--config", config_path, "Config file (key = value lines)")->required();
    run_cmd->add_option("--out", out_dir, "Output directory (default $OVERLAYSIM_OUT or ./out)");
    run_cmd->add_option("--seed", seed_override, "Override base_seed");
    run_cmd->add_option("--replicates", replicates_override, "Override replicates");
    run_cmd->add_option("--protocol", protocol_override, "Run a single protocol (none|p2n|pecc)");
    run_cmd->add_option("--set", overrides, "Override any config key, e.g. --set topology.gamma=0.2");

    std::string scenario_name;
    CLI::App* scenario_cmd = app.add_subcommand("scenario", "Run a preconfigured scenario");
    scenario_cmd->add_option("name", scenario_name, "Scenario name")->required();
    scenario_cmd->add_option("--out", out_dir, "Output directory (default $OVERLAYSIM_OUT or ./out)");

    CLI::App* list_cmd = app.add_subcommand("list-scenarios", "List available scenarios");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 1;
    }

    try {
        if (list_cmd->parsed()) {
            for (const ScenarioDef& def : scenario_registry()) {
                std::cout << def.name << "\t" << def.description << "\n";
            }
            return 0;
        }
        if (run_cmd->parsed()) {
            ExperimentConfig cfg = parse_config_file(config_path);
            for (const std::string& kv : overrides) {
                const auto eq = kv.find('=');
                if (eq == std::string::npos) {
                    throw ConfigError(kv, "override must look like key=value");
                }
                apply_override(cfg, kv.substr(0, eq), kv.substr(eq + 1));
            }
            if (seed_override >= 0) cfg.base_seed = static_cast<std::uint64_t>(seed_override);
            if (replicates_override >= 0) cfg.replicates = replicates_override;
            if (!protocol_override.empty()) {
                const auto p = protocol_from_string(protocol_override);
                if (!p) throw ConfigError("protocol", "unknown protocol '" + protocol_override + "'");
                cfg.protocols = {*p};
            }
            return run_and_write(cfg, out_dir, false);
        }
        if (scenario_cmd->parsed()) {
            const ScenarioDef* def = find_scenario(scenario_name);
            if (!def) {
                std::cerr << "unknown scenario '" << scenario_name << "'. Valid names:\n";
                for (const std::string& name : scenario_names()) std::cerr << "  " << name << "\n";
                return 1;
            }
            return run_and_write(def->config, out_dir, def->emit_original_degree_dist);
        }
    } catch (const ConfigError& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return 1;
    } catch (const IoError& e) {
        std::cerr << "io error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}
