#include "gravdec/config.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>

#include <json.hpp>

namespace gravdec {

namespace {

using nlohmann::json;

[[noreturn]] void fail(const std::string& origin, const std::string& what) {
    throw ConfigError(origin + ": " + what);
}

void check_keys(const json& j, const std::string& origin,
                const std::string& ctx,
                std::initializer_list<const char*> allowed) {
    if (!j.is_object()) fail(origin, ctx + " must be an object");
    for (const auto& [key, _] : j.items()) {
        bool known = false;
        for (const char* a : allowed)
            if (key == a) { known = true; break; }
        if (!known) fail(origin, "unknown key '" + key + "' in " + ctx);
    }
}

double require_number(const json& j, const std::string& origin,
                      const std::string& ctx, const char* key) {
    if (!j.contains(key))
        fail(origin, "missing required field '" + ctx + "." + key + "'");
    if (!j[key].is_number())
        fail(origin, "field '" + ctx + "." + key + "' must be a number");
    return j[key].get<double>();
}

int require_int(const json& j, const std::string& origin,
                const std::string& ctx, const char* key) {
    if (!j.contains(key))
        fail(origin, "missing required field '" + ctx + "." + key + "'");
    if (!j[key].is_number_integer())
        fail(origin, "field '" + ctx + "." + key + "' must be an integer");
    return j[key].get<int>();
}

FrequencyDistribution parse_frequency(const json& j, const std::string& origin,
                                      const std::string& ctx) {
    check_keys(j, origin, ctx, {"kind", "lo", "hi", "values", "value"});
    if (!j.contains("kind"))
        fail(origin, "missing required field '" + ctx + ".kind'");
    const std::string kind = j["kind"].get<std::string>();
    try {
        if (kind == "uniform")
            return FrequencyDistribution::uniform(
                require_number(j, origin, ctx, "lo"),
                require_number(j, origin, ctx, "hi"));
        if (kind == "discrete") {
            if (!j.contains("values") || !j["values"].is_array())
                fail(origin, "field '" + ctx + ".values' must be an array");
            return FrequencyDistribution::discrete(
                j["values"].get<std::vector<double>>());
        }
        if (kind == "single")
            return FrequencyDistribution::single(
                require_number(j, origin, ctx, "value"));
    } catch (const std::invalid_argument& e) {
        fail(origin, ctx + ": " + e.what());
    }
    fail(origin, "field '" + ctx + ".kind' must be uniform, discrete or single");
}

StateTemplate parse_state(const json& j, const std::string& origin) {
    check_keys(j, origin, "environment.state",
               {"alpha", "nbar", "temperature"});
    StateTemplate s;
    if (j.contains("alpha")) {
        const auto& a = j["alpha"];
        if (a.is_number()) {
            s.alpha = {a.get<double>(), 0.0};
        } else if (a.is_array() && a.size() == 2 && a[0].is_number() &&
                   a[1].is_number()) {
            s.alpha = {a[0].get<double>(), a[1].get<double>()};
        } else {
            fail(origin,
                 "environment.state.alpha must be a number or [re, im]");
        }
    }
    if (j.contains("nbar")) {
        const double nb = j["nbar"].get<double>();
        if (nb < 0.0) fail(origin, "environment.state.nbar must be >= 0");
        s.nbar = nb;
    }
    if (j.contains("temperature")) {
        const double T = j["temperature"].get<double>();
        if (T < 0.0)
            fail(origin, "environment.state.temperature must be >= 0");
        s.temperature = T;
    }
    if (s.nbar && s.temperature)
        std::fprintf(stderr,
                     "warning: %s: both nbar and temperature given, nbar "
                     "takes precedence\n",
                     origin.c_str());
    return s;
}

json frequency_json(const FrequencyDistribution& d) {
    switch (d.kind) {
        case FrequencyDistribution::Kind::Uniform:
            return {{"kind", "uniform"}, {"lo", d.lo}, {"hi", d.hi}};
        case FrequencyDistribution::Kind::Discrete:
            return {{"kind", "discrete"}, {"values", d.values}};
        case FrequencyDistribution::Kind::Single:
            return {{"kind", "single"}, {"value", d.value}};
    }
    return {};
}

constexpr const char* fig1a_json = R"({
  "name": "fig1a",
  "scenario": {"delta_x": 1e-6},
  "environment": {
    "frequency_unobserved": {"kind": "discrete", "values": [3.6e11]},
    "frequency_observed": {"kind": "discrete", "values": [4.9e11]},
    "n_unobserved": 1,
    "n_fractions": 1,
    "n_mac": 1,
    "state": {"alpha": 1.0, "temperature": 10.0}
  },
  "time_grid": {"kind": "linear", "points": 2000},
  "seed": 20260824
})";

constexpr const char* fig1b_json = R"({
  "name": "fig1b",
  "scenario": {"delta_x": 1e-6},
  "environment": {
    "frequency": {"kind": "uniform", "lo": 1e11, "hi": 5e11},
    "n_unobserved": 1000,
    "n_fractions": 1,
    "n_mac": 1000,
    "state": {"alpha": 1.0, "temperature": 10.0}
  },
  "time_grid": {"kind": "linear", "points": 2000},
  "seed": 20260824
})";

}  // namespace

void RunConfig::validate() const {
    scenario.constants.validate();
    if (!std::isfinite(scenario.delta_x))
        throw ConfigError("config: scenario.delta_x must be finite");
    freq_unobserved.validate();
    freq_observed.validate();
    if (n_unobserved < 1 || n_mac < 1 || n_fractions < 1)
        throw ConfigError("config: environment counts must be >= 1");
    if (grid.points < 2) throw ConfigError("config: time_grid.points must be >= 2");
    if (grid.t_min < 0.0) throw ConfigError("config: time_grid.t_min must be >= 0");
    if (!auto_t_max && !(grid.t_max > grid.t_min))
        throw ConfigError("config: time_grid.t_max must exceed t_min");
}

RunConfig parse_config(const std::string& text, const std::string& origin) {
    if (text.find_first_not_of(" \t\r\n") == std::string::npos)
        fail(origin, "missing required field 'scenario'");
    json j;
    try {
        j = json::parse(text);
    } catch (const json::parse_error& e) {
        fail(origin, std::string("parse error: ") + e.what());
    }
    check_keys(j, origin, "config",
               {"name", "scenario", "environment", "time_grid", "seed",
                "reference_time"});

    RunConfig cfg;
    if (j.contains("name")) cfg.name = j["name"].get<std::string>();

    if (!j.contains("scenario"))
        fail(origin, "missing required field 'scenario'");
    const json& sc = j["scenario"];
    check_keys(sc, origin, "scenario", {"delta_x", "constants"});
    cfg.scenario.delta_x = require_number(sc, origin, "scenario", "delta_x");
    if (sc.contains("constants")) {
        const json& kc = sc["constants"];
        check_keys(kc, origin, "scenario.constants", {"g", "c", "hbar", "kB"});
        auto& k = cfg.scenario.constants;
        if (kc.contains("g")) k.g = kc["g"].get<double>();
        if (kc.contains("c")) k.c = kc["c"].get<double>();
        if (kc.contains("hbar")) k.hbar = kc["hbar"].get<double>();
        if (kc.contains("kB")) k.kB = kc["kB"].get<double>();
        try {
            k.validate();
        } catch (const std::invalid_argument& e) {
            fail(origin, e.what());
        }
    }

    if (!j.contains("environment"))
        fail(origin, "missing required field 'environment'");
    const json& env = j["environment"];
    check_keys(env, origin, "environment",
               {"frequency", "frequency_unobserved", "frequency_observed",
                "n_unobserved", "n_fractions", "n_mac", "state"});
    if (env.contains("frequency")) {
        if (env.contains("frequency_unobserved") ||
            env.contains("frequency_observed"))
            fail(origin,
                 "environment: give either 'frequency' or the per-fraction "
                 "pair, not both");
        cfg.freq_unobserved =
            parse_frequency(env["frequency"], origin, "environment.frequency");
        cfg.freq_observed = cfg.freq_unobserved;
    } else if (env.contains("frequency_unobserved") &&
               env.contains("frequency_observed")) {
        cfg.freq_unobserved =
            parse_frequency(env["frequency_unobserved"], origin,
                            "environment.frequency_unobserved");
        cfg.freq_observed = parse_frequency(env["frequency_observed"], origin,
                                            "environment.frequency_observed");
    } else {
        fail(origin, "missing required field 'environment.frequency'");
    }
    cfg.n_unobserved = require_int(env, origin, "environment", "n_unobserved");
    cfg.n_fractions = require_int(env, origin, "environment", "n_fractions");
    cfg.n_mac = require_int(env, origin, "environment", "n_mac");
    if (!env.contains("state"))
        fail(origin, "missing required field 'environment.state'");
    cfg.state = parse_state(env["state"], origin);

    if (j.contains("time_grid")) {
        const json& tg = j["time_grid"];
        check_keys(tg, origin, "time_grid",
                   {"kind", "t_min", "t_max", "points"});
        if (tg.contains("kind")) {
            const std::string kind = tg["kind"].get<std::string>();
            if (kind == "linear")
                cfg.grid.kind = TimeGrid::Kind::Linear;
            else if (kind == "log")
                cfg.grid.kind = TimeGrid::Kind::Log;
            else
                fail(origin, "time_grid.kind must be linear or log");
        }
        if (tg.contains("t_min")) cfg.grid.t_min = tg["t_min"].get<double>();
        if (tg.contains("t_max")) {
            cfg.grid.t_max = tg["t_max"].get<double>();
            cfg.auto_t_max = false;
        }
        if (tg.contains("points")) cfg.grid.points = tg["points"].get<int>();
    }
    if (j.contains("seed")) cfg.seed = j["seed"].get<std::uint64_t>();
    if (j.contains("reference_time"))
        cfg.reference_time = j["reference_time"].get<double>();

    try {
        cfg.validate();
    } catch (const std::invalid_argument& e) {
        fail(origin, e.what());
    }
    return cfg;
}

RunConfig load_config(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in)
        throw ConfigError("config: cannot open '" + path.string() + "'");
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_config(buf.str(), path.string());
}

std::string preset_text(const std::string& name) {
    if (name == "fig1a") return fig1a_json;
    if (name == "fig1b") return fig1b_json;
    throw ConfigError("unknown preset '" + name + "' (have: fig1a, fig1b)");
}

RunConfig preset(const std::string& name) {
    return parse_config(preset_text(name), "preset:" + name);
}

std::string canonical_json(const RunConfig& cfg) {
    // nlohmann objects are key-sorted, so dump() is canonical
    json j;
    j["name"] = cfg.name;
    j["scenario"] = {{"delta_x", cfg.scenario.delta_x},
                     {"constants",
                      {{"g", cfg.scenario.constants.g},
                       {"c", cfg.scenario.constants.c},
                       {"hbar", cfg.scenario.constants.hbar},
                       {"kB", cfg.scenario.constants.kB}}}};
    json env;
    env["frequency_unobserved"] = frequency_json(cfg.freq_unobserved);
    env["frequency_observed"] = frequency_json(cfg.freq_observed);
    env["n_unobserved"] = cfg.n_unobserved;
    env["n_fractions"] = cfg.n_fractions;
    env["n_mac"] = cfg.n_mac;
    json state;
    state["alpha"] = {cfg.state.alpha.real(), cfg.state.alpha.imag()};
    if (cfg.state.nbar) state["nbar"] = *cfg.state.nbar;
    if (cfg.state.temperature) state["temperature"] = *cfg.state.temperature;
    env["state"] = state;
    j["environment"] = env;
    j["time_grid"] = {
        {"kind", cfg.grid.kind == TimeGrid::Kind::Log ? "log" : "linear"},
        {"t_min", cfg.grid.t_min},
        {"t_max", cfg.auto_t_max ? json() : json(cfg.grid.t_max)},
        {"points", cfg.grid.points}};
    return j.dump();
}

std::uint64_t config_hash(const RunConfig& cfg) {
    const std::string s = canonical_json(cfg);
    std::uint64_t h = 0xCBF29CE484222325ULL;
    for (unsigned char c : s) {
        h ^= c;
        h *= 0x100000001B3ULL;
    }
    return h;
}

}  // namespace gravdec
