#pragma once

#include "wiggly/flow.hpp"
#include "wiggly/recovery.hpp"

#include <vector>

namespace wiggly {

struct SweepConfig {
    DissipationPotential pot = DissipationPotential::quadratic(1.0);
    WigglyProfile prof = WigglyProfile::sinusoidal(1.0);
    Polynomial phi{{0.0, 0.0, 0.5}};
    LoadTable load = LoadTable::ramp(2.0, 1.0);
    double u0 = 0.0;
    double T = 1.0;
    std::vector<double> eps_list{0.2, 0.1, 0.05, 0.025, 0.0125};
    FlowControls controls{};
    int compare_samples = 2001;
};

struct SweepRow {
    double eps = 0.0;
    double sup_u_err = 0.0;       // sup_t |u_eps - u_0|
    double sup_E_err = 0.0;       // sup_t |E_eps(t,u_eps) - E_0(t,u_0)|
    double D_gap = 0.0;           // |D_eps(u_eps) - D_0(u_0)|
    double D = 0.0, D_prim = 0.0, D_dual = 0.0;
    double edb_rel = 0.0;
    double init_energy_gap = 0.0;  // E_eps(0,u0) - E_0(0,u0), O(eps)
};

struct SweepReport {
    std::vector<SweepRow> rows;
    double D0 = 0.0;        // effective dissipation, R_eff + R_eff* route
    double D0_via_M = 0.0;  // same quantity through the contact potential
    double rate_u = 0.0;    // least-squares log-log slope of sup_u_err
    bool tail_monotone = false;  // last three sup errors nonincreasing
    Trajectory effective;
    std::vector<Trajectory> eps_runs;
};

SweepReport eps_sweep(const SweepConfig& cfg);

struct SplitRow {
    double eps = 0.0;
    double D = 0.0, D_prim = 0.0, D_dual = 0.0;
};

struct SplitReport {
    std::vector<SplitRow> rows;
    double half_D0 = 0.0;
    double int_R_eff = 0.0;  // integral of R_eff(u0') along the limit flow
    double margin = 0.0;     // int_R_eff - half_D0, > 0 when moving
    bool moving = false;
};

SplitReport primal_dual_split(const SweepConfig& cfg,
                              const SweepReport& report);

}  // namespace wiggly
