#pragma once

// Scenario files: UTF-8 text, one `key = value` per line, `#` starts a
// comment, vectors are comma-separated triples.
//
//   mode     single-open-loop | single-extremal | coupled-open-loop
//            | coupled-extremal | preset
//   preset   decoupled-parallel | rigid-perpendicular | zero-field-precession
//   mu, mu1, mu2, lambda, lambda1, lambda2
//   s1, s2, p1, p2      (single modes also accept s, p)
//   b, kappa            open-loop controls
//   dt, horizon         required
//   projection          on | off (default on)
//   record_stride       default 1

#include <cmath>
#include <cstdlib>
#include <istream>
#include <map>
#include <optional>
#include <set>
#include <string>

#include "spinctl/dynamics.hpp"
#include "spinctl/errors.hpp"
#include "spinctl/integrate.hpp"
#include "spinctl/presets.hpp"
#include "spinctl/vector3.hpp"

namespace spinctl {

enum class Mode { SingleOpenLoop, SingleExtremal, CoupledOpenLoop, CoupledExtremal, Preset };

struct ScenarioConfig {
    Mode mode = Mode::CoupledExtremal;
    std::optional<Preset> preset;
    SpinParams params;
    Vector3 s1;
    Vector3 s2;
    Vector3 p1;
    Vector3 p2;
    Controls controls;
    IntegratorConfig integrator;
};

/// Raw key/value pairs; later duplicates are an error.
using KeyValues = std::map<std::string, std::string>;

inline std::string trim(const std::string& s) {
    const auto b = s.find_first_not_of(" \t\r\n");
    if (b == std::string::npos) return {};
    const auto e = s.find_last_not_of(" \t\r\n");
    return s.substr(b, e - b + 1);
}

inline KeyValues parse_key_values(std::istream& is) {
    KeyValues kv;
    std::string line;
    int lineno = 0;
    while (std::getline(is, line)) {
        ++lineno;
        if (const auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
        line = trim(line);
        if (line.empty()) continue;
        const auto eq = line.find('=');
        if (eq == std::string::npos) {
            throw ConfigError("line " + std::to_string(lineno), "line " + std::to_string(lineno) + ": expected key = value");
        }
        const std::string key = trim(line.substr(0, eq));
        const std::string value = trim(line.substr(eq + 1));
        if (key.empty()) throw ConfigError("line " + std::to_string(lineno), "line " + std::to_string(lineno) + ": empty key");
        if (!kv.emplace(key, value).second) throw ConfigError(key, "duplicate key '" + key + "'");
    }
    return kv;
}

inline double parse_scalar(const std::string& key, const std::string& text) {
    char* end = nullptr;
    const double v = std::strtod(text.c_str(), &end);
    if (text.empty() || *end != '\0' || !std::isfinite(v)) {
        throw ConfigError(key, "field '" + key + "': expected a finite number, got '" + text + "'");
    }
    return v;
}

inline Vector3 parse_vector(const std::string& key, const std::string& text) {
    Vector3 v;
    std::size_t start = 0;
    for (int i = 0; i < 3; ++i) {
        const auto comma = text.find(',', start);
        const bool last = i == 2;
        if (last != (comma == std::string::npos)) {
            throw ConfigError(key, "field '" + key + "': expected three comma-separated numbers, got '" + text + "'");
        }
        v[i] = parse_scalar(key, trim(text.substr(start, last ? std::string::npos : comma - start)));
        start = comma + 1;
    }
    return v;
}

inline Mode parse_mode(const std::string& text) {
    if (text == "single-open-loop") return Mode::SingleOpenLoop;
    if (text == "single-extremal") return Mode::SingleExtremal;
    if (text == "coupled-open-loop") return Mode::CoupledOpenLoop;
    if (text == "coupled-extremal") return Mode::CoupledExtremal;
    if (text == "preset") return Mode::Preset;
    throw ConfigError("mode", "field 'mode': unknown mode '" + text + "'");
}

inline ScenarioConfig scenario_from_key_values(const KeyValues& kv) {
    static const std::set<std::string> known{"mode", "preset", "mu", "mu1", "mu2", "lambda", "lambda1",
                                             "lambda2", "s", "p", "s1", "s2", "p1", "p2", "b", "kappa",
                                             "dt", "horizon", "projection", "record_stride"};
    for (const auto& [k, v] : kv) {
        if (!known.contains(k)) throw ConfigError(k, "unknown field '" + k + "'");
    }
    const auto get = [&](const std::string& k) -> std::optional<std::string> {
        if (auto it = kv.find(k); it != kv.end()) return it->second;
        return std::nullopt;
    };
    const auto require = [&](const std::string& k) {
        auto v = get(k);
        if (!v) throw ConfigError(k, "missing required field '" + k + "'");
        return *v;
    };
    const auto vec = [&](const std::string& k) { return parse_vector(k, require(k)); };
    const auto vec_or = [&](const std::string& primary, const std::string& alias) {
        if (get(primary) && get(alias)) throw ConfigError(primary, "give either '" + primary + "' or '" + alias + "'");
        return get(alias) ? vec(alias) : vec(primary);
    };
    const auto scalar_or = [&](const std::string& k, double fallback) {
        auto v = get(k);
        return v ? parse_scalar(k, *v) : fallback;
    };

    ScenarioConfig cfg;
    cfg.mode = parse_mode(require("mode"));

    cfg.integrator.dt = parse_scalar("dt", require("dt"));
    cfg.integrator.horizon = parse_scalar("horizon", require("horizon"));
    if (!(cfg.integrator.dt > 0.0)) throw ConfigError("dt", "field 'dt' must be positive");
    if (cfg.integrator.horizon < 0.0) throw ConfigError("horizon", "field 'horizon' must be non-negative");
    if (auto proj = get("projection")) {
        if (*proj == "on" || *proj == "true" || *proj == "1") {
            cfg.integrator.projection = true;
        } else if (*proj == "off" || *proj == "false" || *proj == "0") {
            cfg.integrator.projection = false;
        } else {
            throw ConfigError("projection", "field 'projection': expected on or off");
        }
    }
    if (auto stride = get("record_stride")) {
        const double v = parse_scalar("record_stride", *stride);
        if (v < 1.0 || v != std::floor(v)) throw ConfigError("record_stride", "field 'record_stride' must be an integer >= 1");
        cfg.integrator.record_stride = static_cast<std::size_t>(v);
    }

    const double mu = scalar_or("mu", 1.0);
    const double lambda = scalar_or("lambda", 1.0);
    cfg.params.mu1 = scalar_or("mu1", mu);
    cfg.params.mu2 = scalar_or("mu2", mu);
    cfg.params.lambda1 = scalar_or("lambda1", lambda);
    cfg.params.lambda2 = scalar_or("lambda2", lambda);
    if (!(cfg.params.lambda1 > 0.0)) throw ConfigError("lambda1", "field 'lambda1' must be positive");
    if (!(cfg.params.lambda2 > 0.0)) throw ConfigError("lambda2", "field 'lambda2' must be positive");

    switch (cfg.mode) {
        case Mode::SingleOpenLoop:
            cfg.s1 = vec_or("s1", "s");
            cfg.controls.b = vec("b");
            break;
        case Mode::SingleExtremal:
            cfg.s1 = vec_or("s1", "s");
            cfg.p1 = vec_or("p1", "p");
            break;
        case Mode::CoupledOpenLoop:
            cfg.s1 = vec("s1");
            cfg.s2 = vec("s2");
            cfg.controls.b = vec("b");
            cfg.controls.kappa = parse_scalar("kappa", require("kappa"));
            break;
        case Mode::CoupledExtremal:
            cfg.s1 = vec("s1");
            cfg.s2 = vec("s2");
            cfg.p1 = vec("p1");
            cfg.p2 = vec("p2");
            break;
        case Mode::Preset: {
            cfg.preset = parse_preset(require("preset"));
            const CoupledExtremalPoint pt = preset_point(*cfg.preset, mu);
            cfg.params = pt.params;
            cfg.s1 = pt.s1;
            cfg.s2 = pt.s2;
            cfg.p1 = pt.p1;
            cfg.p2 = pt.p2;
            break;
        }
    }
    return cfg;
}

inline ScenarioConfig parse_scenario(std::istream& is) { return scenario_from_key_values(parse_key_values(is)); }

}  // namespace spinctl
