#pragma once

#include "wiggly/landscape.hpp"
#include "wiggly/potentials.hpp"
#include "wiggly/profiles.hpp"
#include "wiggly/sweep.hpp"

#include <stdexcept>
#include <string>
#include <vector>

namespace wiggly {

// invalid or unresolvable configuration document (CLI exit code 2)
class ConfigError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

struct PotentialSpec {
    std::string kind = "quadratic";  // quadratic | power-law | tabulated-dual
    double nu = 1.0;
    double r = 1.0;
    double p = 2.0;
};

struct ProfileSpec {
    std::string kind = "sinusoidal";
    // sinusoidal | tent | two-valued | discrete | tabulated | zero
    double amplitude = 1.0;
    std::vector<double> values, weights, samples;
};

struct GridSpec {
    double lo = 0.0, hi = 1.0;
    int n = 2;

    std::vector<double> points() const;
};

struct ExperimentConfig {
    PotentialSpec potential;
    ProfileSpec profile;
    std::vector<double> phi{0.0, 0.0, 0.5};
    std::vector<double> load_t{0.0, 1.0};
    std::vector<double> load_v{0.0, 2.0};
    double epsilon = 0.05;

    GridSpec kinetic_xi{1.05, 10.0, 200};
    GridSpec kinetic_v{0.05, 5.0, 100};
    GridSpec contact_v{0.25, 3.0, 10};
    GridSpec contact_xi{0.0, 3.0, 10};
    bool has_parametrized = false;  // (xi, h) surface export
    GridSpec param_xi{1.05, 3.0, 40};
    GridSpec param_h{-4.0, -0.01, 40};
    int density_nodes = 512;
    int cell_nodes = 256;

    double u0 = 0.0;
    double T = 1.0;
    double rel_tol = 1e-10;
    double abs_tol = 1e-12;
    std::vector<double> sweep_eps{0.2, 0.1, 0.05, 0.025, 0.0125};

    double tol_edb = 1e-6;
    double tol_invariant = 1e-9;
    double tol_scale = 1.0;

    DissipationPotential build_potential() const;
    WigglyProfile build_profile() const;
    Polynomial build_phi() const;
    LoadTable build_load() const;
    EnergyLandscape build_landscape(double eps) const;
    FlowControls build_controls() const;
    SweepConfig build_sweep_config() const;

    static ExperimentConfig from_json_text(const std::string& text);
    static ExperimentConfig from_json_file(const std::string& path);
    std::string to_canonical_json() const;
};

}  // namespace wiggly
