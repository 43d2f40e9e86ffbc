#pragma once

#include <string>

#include "overlaysim/experiment.hpp"

namespace overlaysim {

// Config or override rejected; `key` names the offending entry.
struct ConfigError : std::runtime_error {
    explicit ConfigError(std::string key_, const std::string& reason)
        : std::runtime_error(key_.empty() ? reason : key_ + ": " + reason), key(std::move(key_)) {}
    std::string key;
};

struct IoError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

ExperimentConfig default_experiment_config();

// "key = value" lines, '#' comments. Unknown keys are rejected; missing keys
// keep their defaults.
ExperimentConfig parse_config_text(const std::string& text);
ExperimentConfig parse_config_file(const std::string& path);

// Applies one "key=value" override on top of a parsed config.
void apply_override(ExperimentConfig& cfg, const std::string& key, const std::string& value);

// Validates cross-field constraints and fills derived values (scale-free node
// count, transient rounds). Throws ConfigError.
void resolve_experiment_config(ExperimentConfig& cfg);

// Full key set with resolved values, parseable by parse_config_text.
std::string render_config(const ExperimentConfig& cfg);

} // namespace overlaysim
