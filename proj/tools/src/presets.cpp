#include <array>
#include <utility>

#include "nanoeit/cli/config.hpp"

namespace nanoeit::cli {

namespace {

using nlohmann::json;

json base(std::string mode, json resonators) {
    return {
        {"mode", std::move(mode)},
        {"spin", {{"omega", 1.0}, {"gamma", 5e-2}}},
        {"resonators", std::move(resonators)},
        {"ensemble",
         {{"n_spins", 20},
          {"volume_nm3", default_volume_nm3()},
          {"g_factor", kDefaultGFactor},
          {"omega_scale_rad_s", kDefaultOmegaScale}}},
        {"drive", {{"g_p", 1.0}}},
        {"scan", {{"omega_min", 0.5}, {"omega_max", 2.0}, {"points", 3001}}},
    };
}

json resonator(double omega, double coupling) {
    return {{"omega", omega}, {"gamma", 1e-7}, {"coupling", coupling}};
}

json single(double coupling) { return base("single", json::array({resonator(1.0, coupling)})); }

json dual(double omega2, double g1, double g2) {
    return base("double", json::array({resonator(1.0, g1), resonator(omega2, g2)}));
}

json window_scan(double lo, double hi) {
    json doc = dual(1.5, 0.03, 0.05);
    doc["scan"] = {{"omega_min", lo}, {"omega_max", hi}, {"points", 3001}};
    return doc;
}

const std::array<std::pair<const char*, json (*)()>, 9> kPresets{{
    {"fig4a", [] { return single(0.0); }},
    {"fig4b", [] { return single(0.05); }},
    {"fig5a", [] { return dual(1.5, 0.0, 0.0); }},
    {"fig5b", [] { return dual(1.5, 0.03, 0.05); }},
    {"fig5c", [] { return dual(1.5, 0.05, 0.05); }},
    {"fig5d", [] { return dual(1.5, 0.07, 0.05); }},
    {"fig6", [] { return dual(1.0, 0.03, 0.05); }},
    // Sub-ranges between adjacent absorption peaks of fig5b.
    {"fig7a", [] { return window_scan(0.915, 1.051); }},
    {"fig7b", [] { return window_scan(1.052, 1.519); }},
}};

}  // namespace

std::vector<std::string> preset_names() {
    std::vector<std::string> names;
    for (const auto& [name, make] : kPresets) names.emplace_back(name);
    return names;
}

json preset(std::string_view name) {
    for (const auto& [key, make] : kPresets) {
        if (name == key) return make();
    }
    throw ConfigError("unknown preset '" + std::string(name) + "'");
}

}  // namespace nanoeit::cli
