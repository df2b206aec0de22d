#include "nanoeit/cli/config.hpp"

#include <charconv>
#include <cmath>
#include <cstdint>
#include <numbers>
#include <set>

namespace nanoeit::cli {

namespace {

using nlohmann::json;

void require_keys(const json& obj, std::string_view where, std::set<std::string> allowed) {
    if (!obj.is_object()) throw ConfigError(std::string(where) + " must be an object");
    for (const auto& item : obj.items()) {
        if (!allowed.contains(item.key())) {
            throw ConfigError("unknown key " + std::string(where) + "." + item.key());
        }
    }
}

double number(const json& obj, const char* key, std::string_view where, double fallback,
              bool required = false) {
    if (!obj.contains(key)) {
        if (required) throw ConfigError("missing " + std::string(where) + "." + key);
        return fallback;
    }
    const json& v = obj.at(key);
    if (!v.is_number()) throw ConfigError(std::string(where) + "." + key + " must be a number");
    const double x = v.get<double>();
    if (!std::isfinite(x)) throw ConfigError(std::string(where) + "." + key + " must be finite");
    return x;
}

int integer(const json& obj, const char* key, std::string_view where, int fallback,
            bool required = false) {
    if (!obj.contains(key)) {
        if (required) throw ConfigError("missing " + std::string(where) + "." + key);
        return fallback;
    }
    const json& v = obj.at(key);
    if (!v.is_number_integer()) {
        throw ConfigError(std::string(where) + "." + key + " must be an integer");
    }
    const auto x = v.get<std::int64_t>();
    if (x < 0 || x > 1'000'000'000) throw ConfigError(std::string(where) + "." + key + " out of range");
    return static_cast<int>(x);
}

const json& section(const json& doc, const char* key) {
    static const json empty = json::object();
    return doc.contains(key) ? doc.at(key) : empty;
}

void validate(const RunConfig& c) {
    if (c.mode != "single" && c.mode != "double") {
        throw ConfigError("mode must be \"single\" or \"double\"");
    }
    const std::size_t expected = c.mode == "single" ? 1 : 2;
    if (c.resonators.size() != expected) {
        throw ConfigError("mode " + c.mode + " needs " + std::to_string(expected) + " resonator(s)");
    }
    if (c.spin_omega != 1.0) throw ConfigError("spin.omega is the frequency unit and must be 1");
    if (c.spin_gamma < 0.0) throw ConfigError("spin.gamma must be >= 0");
    for (const auto& r : c.resonators) {
        if (!(r.omega > 0.0)) throw ConfigError("resonator omega must be > 0");
        if (r.gamma < 0.0) throw ConfigError("resonator gamma must be >= 0");
    }
    if (c.n_spins < 1) throw ConfigError("ensemble.n_spins must be >= 1");
    if (!(c.volume_nm3 > 0.0)) throw ConfigError("ensemble.volume_nm3 must be > 0");
    if (!(c.g_factor > 0.0)) throw ConfigError("ensemble.g_factor must be > 0");
    if (!(c.omega_scale_rad_s > 0.0)) throw ConfigError("ensemble.omega_scale_rad_s must be > 0");
    if (!(c.g_p > 0.0)) throw ConfigError("drive.g_p must be > 0");
    if (!(c.omega_min < c.omega_max)) throw ConfigError("scan.omega_min must be < scan.omega_max");
    if (!(c.omega_min > 0.0)) throw ConfigError("scan.omega_min must be > 0");
    if (c.points < 3) throw ConfigError("scan.points must be >= 3");
}

}  // namespace

double default_volume_nm3() { return 4.0 / 3.0 * std::numbers::pi * 1e3; }

RunConfig config_from_json(const json& doc) {
    require_keys(doc, "config", {"mode", "spin", "resonators", "ensemble", "drive", "scan"});
    RunConfig c;
    if (!doc.contains("mode") || !doc.at("mode").is_string()) {
        throw ConfigError("mode must be a string");
    }
    c.mode = doc.at("mode").get<std::string>();

    const json& spin = section(doc, "spin");
    require_keys(spin, "spin", {"omega", "gamma"});
    c.spin_omega = number(spin, "omega", "spin", 1.0);
    c.spin_gamma = number(spin, "gamma", "spin", 0.0, true);

    if (!doc.contains("resonators") || !doc.at("resonators").is_array()) {
        throw ConfigError("resonators must be an array");
    }
    for (const json& r : doc.at("resonators")) {
        require_keys(r, "resonators[]", {"omega", "gamma", "coupling"});
        c.resonators.push_back({number(r, "omega", "resonators[]", 0.0, true),
                                number(r, "gamma", "resonators[]", 0.0, true),
                                number(r, "coupling", "resonators[]", 0.0, true)});
    }

    const json& ens = section(doc, "ensemble");
    require_keys(ens, "ensemble", {"n_spins", "volume_nm3", "g_factor", "omega_scale_rad_s"});
    c.n_spins = integer(ens, "n_spins", "ensemble", 0, true);
    c.volume_nm3 = number(ens, "volume_nm3", "ensemble", default_volume_nm3());
    c.g_factor = number(ens, "g_factor", "ensemble", kDefaultGFactor);
    c.omega_scale_rad_s = number(ens, "omega_scale_rad_s", "ensemble", kDefaultOmegaScale);

    const json& drive = section(doc, "drive");
    require_keys(drive, "drive", {"g_p"});
    c.g_p = number(drive, "g_p", "drive", 1.0);

    const json& scan = section(doc, "scan");
    require_keys(scan, "scan", {"omega_min", "omega_max", "points"});
    c.omega_min = number(scan, "omega_min", "scan", c.omega_min);
    c.omega_max = number(scan, "omega_max", "scan", c.omega_max);
    c.points = integer(scan, "points", "scan", c.points);

    validate(c);
    return c;
}

RunConfig parse_config(std::string_view text) {
    json doc;
    try {
        doc = json::parse(text);
    } catch (const json::parse_error& e) {
        throw ConfigError(std::string("invalid JSON: ") + e.what());
    }
    return config_from_json(doc);
}

nlohmann::ordered_json to_json(const RunConfig& c) {
    nlohmann::ordered_json out;
    out["mode"] = c.mode;
    out["spin"] = {{"omega", c.spin_omega}, {"gamma", c.spin_gamma}};
    out["resonators"] = nlohmann::ordered_json::array();
    for (const auto& r : c.resonators) {
        out["resonators"].push_back({{"omega", r.omega}, {"gamma", r.gamma}, {"coupling", r.coupling}});
    }
    out["ensemble"] = {{"n_spins", c.n_spins},
                       {"volume_nm3", c.volume_nm3},
                       {"g_factor", c.g_factor},
                       {"omega_scale_rad_s", c.omega_scale_rad_s}};
    out["drive"] = {{"g_p", c.g_p}};
    out["scan"] = {{"omega_min", c.omega_min}, {"omega_max", c.omega_max}, {"points", c.points}};
    return out;
}

void apply_override(json& doc, std::string_view assignment) {
    const auto eq = assignment.find('=');
    if (eq == std::string_view::npos || eq == 0) {
        throw ConfigError("override must look like path=value: " + std::string(assignment));
    }
    const std::string_view path = assignment.substr(0, eq);
    const std::string raw(assignment.substr(eq + 1));

    json value;
    try {
        value = json::parse(raw);
    } catch (const json::parse_error&) {
        value = raw;
    }

    json* node = &doc;
    std::size_t start = 0;
    while (true) {
        const std::size_t dot = path.find('.', start);
        const std::string key(path.substr(start, dot == std::string_view::npos ? dot : dot - start));
        if (key.empty()) throw ConfigError("empty segment in override path " + std::string(path));
        json* child = nullptr;
        if (node->is_array()) {
            std::size_t index = 0;
            const auto [ptr, ec] = std::from_chars(key.data(), key.data() + key.size(), index);
            if (ec != std::errc{} || ptr != key.data() + key.size() || index >= node->size()) {
                throw ConfigError("bad array index '" + key + "' in " + std::string(path));
            }
            child = &(*node)[index];
        } else if (node->is_object()) {
            child = &(*node)[key];
        } else {
            throw ConfigError("override path descends into a scalar: " + std::string(path));
        }
        if (dot == std::string_view::npos) {
            *child = std::move(value);
            return;
        }
        if (child->is_null()) *child = json::object();
        node = child;
        start = dot + 1;
    }
}

std::string digest(const RunConfig& config) {
    std::uint64_t h = 0xcbf29ce484222325ULL;
    for (const unsigned char ch : to_json(config).dump()) {
        h ^= ch;
        h *= 0x100000001b3ULL;
    }
    char buf[17];
    constexpr char hex[] = "0123456789abcdef";
    for (int i = 15; i >= 0; --i) {
        buf[i] = hex[h & 0xF];
        h >>= 4;
    }
    buf[16] = '\0';
    return buf;
}

SystemParams system_params(const RunConfig& c, StabilityPolicy policy) {
    std::vector<OscillatorParams> res;
    std::vector<double> couplings;
    for (const auto& r : c.resonators) {
        res.push_back({r.omega, r.gamma});
        couplings.push_back(r.coupling);
    }
    return SystemParams({c.spin_omega, c.spin_gamma}, std::move(res), std::move(couplings),
                        c.n_spins, c.g_p, policy);
}

MaterialParams material_params(const RunConfig& c) {
    MaterialParams m;
    m.volume = c.volume_nm3 * 1e-27;
    m.omega_scale = c.omega_scale_rad_s;
    m.g_factor = c.g_factor;
    return m;
}

FrequencyGrid frequency_grid(const RunConfig& c) { return {c.omega_min, c.omega_max, c.points}; }

}  // namespace nanoeit::cli
