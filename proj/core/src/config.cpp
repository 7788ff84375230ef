#include "wiggly/config.hpp"

#include <nlohmann/json.hpp>

#include <fstream>
#include <sstream>

namespace wiggly {

using json = nlohmann::ordered_json;

std::vector<double> GridSpec::points() const {
    if (n < 1) throw ConfigError("grid: need at least one point");
    std::vector<double> pts(n);
    if (n == 1) {
        pts[0] = lo;
        return pts;
    }
    for (int i = 0; i < n; ++i) pts[i] = lo + (hi - lo) * i / (n - 1);
    return pts;
}

DissipationPotential ExperimentConfig::build_potential() const {
    if (potential.kind == "quadratic")
        return DissipationPotential::quadratic(potential.nu);
    if (potential.kind == "power-law")
        return DissipationPotential::power_law(potential.r, potential.p);
    if (potential.kind == "tabulated-dual")
        return DissipationPotential::linear_stretch_dual();
    throw ConfigError("potential.kind: unknown kind '" + potential.kind + "'");
}

WigglyProfile ExperimentConfig::build_profile() const {
    if (profile.kind == "sinusoidal")
        return WigglyProfile::sinusoidal(profile.amplitude);
    if (profile.kind == "tent") return WigglyProfile::tent(profile.amplitude);
    if (profile.kind == "two-valued")
        return WigglyProfile::two_valued(profile.amplitude);
    if (profile.kind == "discrete")
        return WigglyProfile::discrete(profile.values, profile.weights);
    if (profile.kind == "tabulated")
        return WigglyProfile::tabulated(profile.samples);
    if (profile.kind == "zero") return WigglyProfile::zero();
    throw ConfigError("profile.kind: unknown kind '" + profile.kind + "'");
}

Polynomial ExperimentConfig::build_phi() const { return Polynomial{phi}; }

LoadTable ExperimentConfig::build_load() const {
    if (load_t.size() != load_v.size() || load_t.empty())
        throw ConfigError("landscape.load: mismatched t/value tables");
    return LoadTable{load_t, load_v};
}

EnergyLandscape ExperimentConfig::build_landscape(double eps) const {
    return EnergyLandscape(build_phi(), build_load(), build_profile(), eps);
}

FlowControls ExperimentConfig::build_controls() const {
    FlowControls c;
    c.rel_tol = rel_tol;
    c.abs_tol = abs_tol;
    return c;
}

SweepConfig ExperimentConfig::build_sweep_config() const {
    SweepConfig s;
    s.pot = build_potential();
    s.prof = build_profile();
    s.phi = build_phi();
    s.load = build_load();
    s.u0 = u0;
    s.T = T;
    s.eps_list = sweep_eps;
    s.controls = build_controls();
    return s;
}

namespace {

template <class T>
T get_or(const json& j, const std::string& key, const T& fallback) {
    if (!j.contains(key)) return fallback;
    try {
        return j.at(key).get<T>();
    } catch (const json::exception& e) {
        throw ConfigError("config key '" + key + "': " + e.what());
    }
}

GridSpec parse_grid(const json& j, const std::string& name, GridSpec dflt) {
    if (!j.contains(name)) return dflt;
    const json& g = j.at(name);
    GridSpec out = dflt;
    out.lo = get_or(g, "lo", dflt.lo);
    out.hi = get_or(g, "hi", dflt.hi);
    out.n = get_or(g, "n", dflt.n);
    if (out.n < 1) throw ConfigError(name + ".n: must be >= 1");
    return out;
}

json grid_json(const GridSpec& g) {
    return json{{"lo", g.lo}, {"hi", g.hi}, {"n", g.n}};
}

}  // namespace

ExperimentConfig ExperimentConfig::from_json_text(const std::string& text) {
    json j;
    try {
        j = json::parse(text);
    } catch (const json::parse_error& e) {
        throw ConfigError(std::string("config parse error: ") + e.what());
    }
    ExperimentConfig cfg;
    if (j.contains("potential")) {
        const json& p = j.at("potential");
        cfg.potential.kind = get_or<std::string>(p, "kind", "quadratic");
        cfg.potential.nu = get_or(p, "nu", 1.0);
        cfg.potential.r = get_or(p, "r", 1.0);
        cfg.potential.p = get_or(p, "p", 2.0);
    }
    if (j.contains("profile")) {
        const json& p = j.at("profile");
        cfg.profile.kind = get_or<std::string>(p, "kind", "sinusoidal");
        cfg.profile.amplitude = get_or(p, "amplitude", 1.0);
        cfg.profile.values = get_or(p, "values", std::vector<double>{});
        cfg.profile.weights = get_or(p, "weights", std::vector<double>{});
        cfg.profile.samples = get_or(p, "samples", std::vector<double>{});
    }
    if (j.contains("landscape")) {
        const json& l = j.at("landscape");
        cfg.phi = get_or(l, "phi", cfg.phi);
        if (l.contains("load")) {
            cfg.load_t = get_or(l.at("load"), "t", cfg.load_t);
            cfg.load_v = get_or(l.at("load"), "value", cfg.load_v);
        }
        cfg.epsilon = get_or(l, "epsilon", cfg.epsilon);
        if (!(cfg.epsilon >= 0.0)) throw ConfigError("landscape.epsilon < 0");
    }
    if (j.contains("kinetic")) {
        cfg.kinetic_xi = parse_grid(j.at("kinetic"), "xi", cfg.kinetic_xi);
        cfg.kinetic_v = parse_grid(j.at("kinetic"), "v", cfg.kinetic_v);
    }
    if (j.contains("contact")) {
        const json& c = j.at("contact");
        cfg.contact_v = parse_grid(c, "v", cfg.contact_v);
        cfg.contact_xi = parse_grid(c, "xi", cfg.contact_xi);
        cfg.density_nodes = get_or(c, "density_nodes", cfg.density_nodes);
        cfg.cell_nodes = get_or(c, "cell_nodes", cfg.cell_nodes);
        if (c.contains("parametrized")) {
            cfg.has_parametrized = true;
            cfg.param_xi = parse_grid(c.at("parametrized"), "xi", cfg.param_xi);
            cfg.param_h = parse_grid(c.at("parametrized"), "h", cfg.param_h);
        }
    }
    if (j.contains("flow")) {
        const json& f = j.at("flow");
        cfg.u0 = get_or(f, "u0", cfg.u0);
        cfg.T = get_or(f, "T", cfg.T);
        cfg.rel_tol = get_or(f, "rel_tol", cfg.rel_tol);
        cfg.abs_tol = get_or(f, "abs_tol", cfg.abs_tol);
        if (!(cfg.T > 0.0)) throw ConfigError("flow.T must be positive");
    }
    if (j.contains("sweep")) {
        cfg.sweep_eps = get_or(j.at("sweep"), "eps", cfg.sweep_eps);
        if (cfg.sweep_eps.empty()) throw ConfigError("sweep.eps: empty list");
        for (size_t i = 0; i + 1 < cfg.sweep_eps.size(); ++i)
            if (!(cfg.sweep_eps[i] > cfg.sweep_eps[i + 1]))
                throw ConfigError("sweep.eps must be strictly decreasing");
    }
    if (j.contains("tolerances")) {
        const json& t = j.at("tolerances");
        cfg.tol_edb = get_or(t, "edb", cfg.tol_edb);
        cfg.tol_invariant = get_or(t, "invariant", cfg.tol_invariant);
    }
    // validate buildability now so errors surface before running
    try {
        cfg.build_potential();
        cfg.build_profile();
        cfg.build_load();
    } catch (const ConfigError&) {
        throw;
    } catch (const std::exception& e) {
        throw ConfigError(std::string("config: ") + e.what());
    }
    return cfg;
}

ExperimentConfig ExperimentConfig::from_json_file(const std::string& path) {
    std::ifstream f(path);
    if (!f) throw ConfigError("cannot open config file: " + path);
    std::stringstream ss;
    ss << f.rdbuf();
    return from_json_text(ss.str());
}

std::string ExperimentConfig::to_canonical_json() const {
    json j;
    json p{{"kind", potential.kind}};
    if (potential.kind == "quadratic") p["nu"] = potential.nu;
    if (potential.kind == "power-law") {
        p["r"] = potential.r;
        p["p"] = potential.p;
    }
    j["potential"] = p;
    json pr{{"kind", profile.kind}};
    if (profile.kind == "sinusoidal" || profile.kind == "tent" ||
        profile.kind == "two-valued")
        pr["amplitude"] = profile.amplitude;
    if (profile.kind == "discrete") {
        pr["values"] = profile.values;
        pr["weights"] = profile.weights;
    }
    if (profile.kind == "tabulated") pr["samples"] = profile.samples;
    j["profile"] = pr;
    j["landscape"] = json{{"phi", phi},
                          {"load", json{{"t", load_t}, {"value", load_v}}},
                          {"epsilon", epsilon}};
    j["kinetic"] =
        json{{"xi", grid_json(kinetic_xi)}, {"v", grid_json(kinetic_v)}};
    json c{{"v", grid_json(contact_v)},
           {"xi", grid_json(contact_xi)},
           {"density_nodes", density_nodes},
           {"cell_nodes", cell_nodes}};
    if (has_parametrized)
        c["parametrized"] =
            json{{"xi", grid_json(param_xi)}, {"h", grid_json(param_h)}};
    j["contact"] = c;
    j["flow"] = json{{"u0", u0},
                     {"T", T},
                     {"rel_tol", rel_tol},
                     {"abs_tol", abs_tol}};
    j["sweep"] = json{{"eps", sweep_eps}};
    j["tolerances"] = json{{"edb", tol_edb}, {"invariant", tol_invariant}};
    return j.dump(2) + "\n";
}

}  // namespace wiggly
