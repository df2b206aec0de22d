#pragma once

// Run configuration for the command-line front end: a single JSON document,
// optionally seeded from an embedded preset and patched by dotted-path
// overrides.

#include <nlohmann/json.hpp>

#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "nanoeit/model.hpp"
#include "nanoeit/response.hpp"

namespace nanoeit::cli {

enum class ExitCode : int {
    ok = 0,
    usage = 1,
    config = 2,
    numeric = 3,
    validation_failed = 4,
};

/// Malformed or inconsistent configuration (maps to ExitCode::config).
class ConfigError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

struct ResonatorConfig {
    double omega = 1.0;
    double gamma = 0.0;
    double coupling = 0.0;

    friend bool operator==(const ResonatorConfig&, const ResonatorConfig&) = default;
};

struct RunConfig {
    std::string mode = "single";  // "single" | "double"
    double spin_omega = 1.0;
    double spin_gamma = 0.0;
    std::vector<ResonatorConfig> resonators;
    int n_spins = 1;
    double volume_nm3 = 0.0;
    double g_factor = kDefaultGFactor;
    double omega_scale_rad_s = kDefaultOmegaScale;
    double g_p = 1.0;
    double omega_min = 0.5;
    double omega_max = 2.0;
    int points = 3001;

    friend bool operator==(const RunConfig&, const RunConfig&) = default;
};

/// Volume of the default ensemble, a sphere of radius 10 nm.
double default_volume_nm3();

/// Strict parse: unknown keys, wrong types and violated invariants throw
/// ConfigError. Optional fields take the RunConfig defaults.
RunConfig config_from_json(const nlohmann::json& doc);
RunConfig parse_config(std::string_view text);

/// Canonical form: fixed key order, every field present.
nlohmann::ordered_json to_json(const RunConfig& config);

/// Apply "a.b.c=value". Array elements are addressed by index. The value is
/// read as JSON when it parses, otherwise as a string.
void apply_override(nlohmann::json& doc, std::string_view assignment);

/// 64-bit FNV-1a of the canonical JSON, as 16 lowercase hex digits.
std::string digest(const RunConfig& config);

SystemParams system_params(const RunConfig& config,
                           StabilityPolicy policy = StabilityPolicy::reject_unstable);
MaterialParams material_params(const RunConfig& config);
FrequencyGrid frequency_grid(const RunConfig& config);

std::vector<std::string> preset_names();

/// Embedded configuration document; throws ConfigError for unknown names.
nlohmann::json preset(std::string_view name);

}  // namespace nanoeit::cli
