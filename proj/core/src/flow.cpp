#include "wiggly/flow.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

namespace wiggly {

namespace {

// Dormand-Prince 5(4) coefficients
const double A21 = 1.0 / 5;
const double A31 = 3.0 / 40, A32 = 9.0 / 40;
const double A41 = 44.0 / 45, A42 = -56.0 / 15, A43 = 32.0 / 9;
const double A51 = 19372.0 / 6561, A52 = -25360.0 / 2187,
             A53 = 64448.0 / 6561, A54 = -212.0 / 729;
const double A61 = 9017.0 / 3168, A62 = -355.0 / 33, A63 = 46732.0 / 5247,
             A64 = 49.0 / 176, A65 = -5103.0 / 18656;
const double B1 = 35.0 / 384, B3 = 500.0 / 1113, B4 = 125.0 / 192,
             B5 = -2187.0 / 6784, B6 = 11.0 / 84;
const double E1 = 35.0 / 384 - 5179.0 / 57600, E3 = 500.0 / 1113 - 7571.0 / 16695,
             E4 = 125.0 / 192 - 393.0 / 640,
             E5 = -2187.0 / 6784 + 92097.0 / 339200,
             E6 = 11.0 / 84 - 187.0 / 2100, E7 = -1.0 / 40;

struct StepIntegrands {
    // primal and dual dissipation densities and the external power, given
    // (t, u, u') at a point
    std::function<double(double, double, double)> primal;
    std::function<double(double, double, double)> dual;
    std::function<double(double, double)> power;
};

Trajectory integrate_generic(
    const std::function<double(double, double)>& rhs,
    const std::function<double(double, double)>& energy_of, double u0,
    double T, const FlowControls& ctrl, double wiggle_eps,
    const StepIntegrands& in) {
    Trajectory traj;
    double t = 0.0, u = u0;
    double f = rhs(t, u);
    double max_step = ctrl.max_step > 0.0 ? ctrl.max_step : T / 64.0;
    double dt = std::min(ctrl.init_step, max_step);
    traj.t.push_back(t);
    traj.u.push_back(u);
    traj.du.push_back(f);
    traj.energy.push_back(energy_of(t, u));
    traj.D_cum.push_back(0.0);
    traj.D_prim_cum.push_back(0.0);
    traj.D_dual_cum.push_back(0.0);
    double work = 0.0;

    auto cap_step = [&](double step, double speed) {
        step = std::min(step, max_step);
        if (wiggle_eps > 0.0)
            step = std::min(step, wiggle_eps / (ctrl.wiggle_steps *
                                                (std::fabs(speed) + wiggle_eps)));
        return step;
    };
    dt = cap_step(dt, f);

    int rejected_in_row = 0;
    while (t < T) {
        dt = std::min(dt, T - t);
        if (dt < 1e-14 * (1.0 + std::fabs(t)))
            throw std::runtime_error(
                "integrate: step underflow at t = " + std::to_string(t));
        double k1 = f;
        double k2 = rhs(t + dt / 5.0, u + dt * A21 * k1);
        double k3 = rhs(t + 3.0 * dt / 10.0, u + dt * (A31 * k1 + A32 * k2));
        double k4 =
            rhs(t + 4.0 * dt / 5.0, u + dt * (A41 * k1 + A42 * k2 + A43 * k3));
        double k5 = rhs(t + 8.0 * dt / 9.0,
                        u + dt * (A51 * k1 + A52 * k2 + A53 * k3 + A54 * k4));
        double k6 = rhs(t + dt, u + dt * (A61 * k1 + A62 * k2 + A63 * k3 +
                                          A64 * k4 + A65 * k5));
        double u_new =
            u + dt * (B1 * k1 + B3 * k3 + B4 * k4 + B5 * k5 + B6 * k6);
        double k7 = rhs(t + dt, u_new);
        double err = dt * (E1 * k1 + E3 * k3 + E4 * k4 + E5 * k5 + E6 * k6 +
                           E7 * k7);
        double scale =
            ctrl.abs_tol + ctrl.rel_tol * std::max(std::fabs(u), std::fabs(u_new));
        double err_norm = std::fabs(err) / scale;
        if (err_norm <= 1.0) {
            // accept; Simpson accumulation with a cubic-Hermite midpoint
            double tm = t + 0.5 * dt;
            double um = 0.5 * (u + u_new) + 0.125 * dt * (k1 - k7);
            double fm = rhs(tm, um);
            auto simpson = [&](const std::function<double(double, double,
                                                          double)>& g) {
                return dt / 6.0 *
                       (g(t, u, k1) + 4.0 * g(tm, um, fm) +
                        g(t + dt, u_new, k7));
            };
            double dp = simpson(in.primal);
            double dd = simpson(in.dual);
            work += dt / 6.0 *
                    (in.power(t, u) + 4.0 * in.power(tm, um) +
                     in.power(t + dt, u_new));
            t += dt;
            u = u_new;
            f = k7;
            traj.t.push_back(t);
            traj.u.push_back(u);
            traj.du.push_back(f);
            traj.energy.push_back(energy_of(t, u));
            traj.D_prim_cum.push_back(traj.D_prim_cum.back() + dp);
            traj.D_dual_cum.push_back(traj.D_dual_cum.back() + dd);
            traj.D_cum.push_back(traj.D_cum.back() + dp + dd);
            rejected_in_row = 0;
            double grow = 0.9 * std::pow(std::max(err_norm, 1e-10), -0.2);
            dt = cap_step(dt * std::clamp(grow, 0.2, 5.0), f);
        } else {
            if (++rejected_in_row > 60)
                throw std::runtime_error(
                    "integrate: repeated rejections at t = " + std::to_string(t));
            double shrink = 0.9 * std::pow(err_norm, -0.2);
            dt *= std::clamp(shrink, 0.1, 0.9);
        }
    }
    traj.external_work = work;
    double D = traj.total_D();
    traj.edb_residual =
        traj.energy.back() + D - traj.energy.front() - work;
    traj.edb_relative = std::fabs(traj.edb_residual) /
                        (1.0 + std::fabs(traj.energy.front()) + std::fabs(D));
    return traj;
}

size_t locate(const std::vector<double>& xs, double x) {
    size_t i = std::upper_bound(xs.begin(), xs.end(), x) - xs.begin();
    if (i == 0) return 0;
    if (i >= xs.size()) return xs.size() - 2;
    return i - 1;
}

}  // namespace

double Trajectory::sample(double time) const {
    if (t.empty()) return 0.0;
    if (time <= t.front()) return u.front();
    if (time >= t.back()) return u.back();
    size_t i = locate(t, time);
    double w = (time - t[i]) / (t[i + 1] - t[i]);
    return u[i] + w * (u[i + 1] - u[i]);
}

double Trajectory::sample_rate(double time) const {
    if (t.empty()) return 0.0;
    if (time <= t.front()) return du.front();
    if (time >= t.back()) return du.back();
    size_t i = locate(t, time);
    double w = (time - t[i]) / (t[i + 1] - t[i]);
    return du[i] + w * (du[i + 1] - du[i]);
}

double rhs_wiggly(const EnergyLandscape& land, const DissipationPotential& pot,
                  double t, double u) {
    return pot.dR_star(-land.dE_du(t, u));
}

Trajectory integrate_wiggly(const EnergyLandscape& land,
                            const DissipationPotential& pot, double u0,
                            double T, const FlowControls& ctrl) {
    auto rhs = [&](double t, double u) { return rhs_wiggly(land, pot, t, u); };
    auto energy = [&](double t, double u) { return land.energy(t, u); };
    StepIntegrands in;
    in.primal = [&](double, double, double v) { return pot.R(v); };
    in.dual = [&](double t, double u, double) {
        return pot.R_star(-land.dE_du(t, u));
    };
    in.power = [&](double t, double u) { return land.dE_dt(t, u); };
    double weps = land.has_wiggle() ? land.eps() : 0.0;
    return integrate_generic(rhs, energy, u0, T, ctrl, weps, in);
}

Trajectory integrate_effective(const KineticRelation& rel,
                               const Polynomial& phi, const LoadTable& load,
                               double u0, double T, const FlowControls& ctrl) {
    auto force = [&](double t, double u) { return -phi.deriv(u) + load(t); };
    auto rhs = [&](double t, double u) { return rel.K(force(t, u)); };
    auto energy = [&](double t, double u) { return phi(u) - load(t) * u; };
    StepIntegrands in;
    // along the effective flow (v, xi) sits on the contact set, so the
    // dissipation density R_eff(v) + R_eff*(xi) equals v xi exactly; the
    // split into its two parts is refilled from the stored nodes below
    in.primal = [&](double t, double u, double v) {
        return v * force(t, u);
    };
    in.dual = [&](double, double, double) { return 0.0; };
    in.power = [&](double t, double u) { return -load.rate(t) * u; };
    FlowControls c = ctrl;
    if (c.max_step == 0.0) c.max_step = T / 64.0;
    Trajectory tr = integrate_generic(rhs, energy, u0, T, c, 0.0, in);
    // split columns: dual density R_eff*(xi(t)) by trapezoid on the nodes,
    // primal as the contact-identity complement
    double dual_prev = rel.R_eff_star(force(tr.t[0], tr.u[0]));
    tr.D_dual_cum[0] = 0.0;
    for (size_t i = 1; i < tr.t.size(); ++i) {
        double dual_here = rel.R_eff_star(force(tr.t[i], tr.u[i]));
        double dt = tr.t[i] - tr.t[i - 1];
        tr.D_dual_cum[i] =
            tr.D_dual_cum[i - 1] + 0.5 * dt * (dual_prev + dual_here);
        dual_prev = dual_here;
        tr.D_prim_cum[i] = tr.D_cum[i] - tr.D_dual_cum[i];
    }
    return tr;
}

namespace {

DissipationSplit trapezoid_split(
    const Trajectory& traj,
    const std::function<double(double, double, double)>& primal,
    const std::function<double(double, double, double)>& dual) {
    DissipationSplit s;
    for (size_t i = 0; i + 1 < traj.t.size(); ++i) {
        double dt = traj.t[i + 1] - traj.t[i];
        double p0 = primal(traj.t[i], traj.u[i], traj.du[i]);
        double p1 = primal(traj.t[i + 1], traj.u[i + 1], traj.du[i + 1]);
        double d0 = dual(traj.t[i], traj.u[i], traj.du[i]);
        double d1 = dual(traj.t[i + 1], traj.u[i + 1], traj.du[i + 1]);
        s.primal += 0.5 * dt * (p0 + p1);
        s.dual += 0.5 * dt * (d0 + d1);
    }
    s.total = s.primal + s.dual;
    return s;
}

}  // namespace

DissipationSplit dissipation_functionals(const Trajectory& traj,
                                         const DissipationPotential& pot,
                                         const EnergyLandscape& land) {
    return trapezoid_split(
        traj, [&](double, double, double v) { return pot.R(v); },
        [&](double t, double u, double) {
            return pot.R_star(-land.dE_du(t, u));
        });
}

DissipationSplit dissipation_functionals(const Trajectory& traj,
                                         const KineticRelation& rel,
                                         const Polynomial& phi,
                                         const LoadTable& load) {
    return trapezoid_split(
        traj, [&](double, double, double v) { return rel.R_eff(v); },
        [&](double t, double u, double) {
            return rel.R_eff_star(-phi.deriv(u) + load(t));
        });
}

double j_functional(const Trajectory& traj, const DissipationPotential& pot,
                    const WigglyProfile& prof, double eps,
                    const std::function<double(double)>& xi) {
    double J = 0.0;
    for (size_t i = 0; i + 1 < traj.t.size(); ++i) {
        double dt = traj.t[i + 1] - traj.t[i];
        auto g = [&](double tt, double uu, double vv) {
            double omega = eps > 0.0 ? prof(uu / eps) : 0.0;
            return pot.R(vv) + pot.R_star(xi(tt) - omega);
        };
        double g0 = g(traj.t[i], traj.u[i], traj.du[i]);
        double g1 = g(traj.t[i + 1], traj.u[i + 1], traj.du[i + 1]);
        // cubic Hermite midpoint keeps the quadrature at the stored
        // resolution even where u oscillates within a step
        double um = 0.5 * (traj.u[i] + traj.u[i + 1]) +
                    0.125 * dt * (traj.du[i] - traj.du[i + 1]);
        double vm = 1.5 * (traj.u[i + 1] - traj.u[i]) / dt -
                    0.25 * (traj.du[i] + traj.du[i + 1]);
        double gm = g(traj.t[i] + 0.5 * dt, um, vm);
        J += dt / 6.0 * (g0 + 4.0 * gm + g1);
    }
    return J;
}

}  // namespace wiggly
