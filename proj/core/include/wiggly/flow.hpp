#pragma once

#include "wiggly/kinetics.hpp"
#include "wiggly/landscape.hpp"

#include <functional>
#include <vector>

namespace wiggly {

struct Trajectory {
    std::vector<double> t;        // accepted step nodes
    std::vector<double> u;
    std::vector<double> du;       // rates at the nodes
    std::vector<double> energy;   // E(t_i, u(t_i))
    std::vector<double> D_cum;    // cumulative R + R* dissipation
    std::vector<double> D_prim_cum;
    std::vector<double> D_dual_cum;
    double external_work = 0.0;   // integral of dE/dt = -l'(t) u
    double edb_residual = 0.0;    // E(T) + D - E(0) - external_work
    double edb_relative = 0.0;

    double total_D() const { return D_cum.empty() ? 0.0 : D_cum.back(); }
    double total_primal() const {
        return D_prim_cum.empty() ? 0.0 : D_prim_cum.back();
    }
    double total_dual() const {
        return D_dual_cum.empty() ? 0.0 : D_dual_cum.back();
    }
    double sample(double time) const;       // linear interpolation of u
    double sample_rate(double time) const;  // linear interpolation of du
};

struct FlowControls {
    double rel_tol = 1e-10;
    double abs_tol = 1e-12;
    double max_step = 0.0;       // 0: T/64
    double wiggle_steps = 20.0;  // steps per wiggle period while moving
    double init_step = 1e-6;
};

// resolved form of the gradient-flow equation: u' = dR*(-dE/du)
double rhs_wiggly(const EnergyLandscape& land, const DissipationPotential& pot,
                  double t, double u);

Trajectory integrate_wiggly(const EnergyLandscape& land,
                            const DissipationPotential& pot, double u0,
                            double T, const FlowControls& ctrl = {});

// effective flow u' = K(-Phi'(u) + l(t)), with automatic sticking
Trajectory integrate_effective(const KineticRelation& rel,
                               const Polynomial& phi, const LoadTable& load,
                               double u0, double T,
                               const FlowControls& ctrl = {});

struct DissipationSplit {
    double total = 0.0;
    double primal = 0.0;
    double dual = 0.0;
};

// trapezoid recomputation from the stored samples
DissipationSplit dissipation_functionals(const Trajectory& traj,
                                         const DissipationPotential& pot,
                                         const EnergyLandscape& land);
DissipationSplit dissipation_functionals(const Trajectory& traj,
                                         const KineticRelation& rel,
                                         const Polynomial& phi,
                                         const LoadTable& load);

// parametrized dissipation functional: integral of
// R(u') + R*(xi(t) - p(u/eps)) along the trajectory
double j_functional(const Trajectory& traj, const DissipationPotential& pot,
                    const WigglyProfile& prof, double eps,
                    const std::function<double(double)>& xi);

}  // namespace wiggly
