#include "wiggly/sweep.hpp"

#include "wiggly/contact.hpp"

#include <algorithm>
#include <cmath>

namespace wiggly {

SweepReport eps_sweep(const SweepConfig& cfg) {
    SweepReport rep;
    KineticRelation rel(cfg.pot, cfg.prof);
    rep.effective =
        integrate_effective(rel, cfg.phi, cfg.load, cfg.u0, cfg.T, cfg.controls);

    // D_0 two ways: R_eff + R_eff* on the contact set, and through M
    DissipationSplit eff_split =
        dissipation_functionals(rep.effective, rel, cfg.phi, cfg.load);
    rep.D0 = eff_split.total;
    {
        const Trajectory& tr = rep.effective;
        double acc = 0.0;
        for (size_t i = 0; i + 1 < tr.t.size(); ++i) {
            double dt = tr.t[i + 1] - tr.t[i];
            auto g = [&](size_t k) {
                double xi = -cfg.phi.deriv(tr.u[k]) + cfg.load(tr.t[k]);
                return m_lagrange(cfg.pot, cfg.prof, tr.du[k], xi).M;
            };
            acc += 0.5 * dt * (g(i) + g(i + 1));
        }
        rep.D0_via_M = acc;
    }

    for (double eps : cfg.eps_list) {
        EnergyLandscape land(cfg.phi, cfg.load, cfg.prof, eps);
        Trajectory tr = integrate_wiggly(land, cfg.pot, cfg.u0, cfg.T,
                                         cfg.controls);
        SweepRow row;
        row.eps = eps;
        for (int i = 0; i <= cfg.compare_samples; ++i) {
            double tt = cfg.T * i / cfg.compare_samples;
            double ue = tr.sample(tt), u0 = rep.effective.sample(tt);
            row.sup_u_err = std::max(row.sup_u_err, std::fabs(ue - u0));
            double Ee = land.energy(tt, ue);
            double E0 = land.limit_energy(tt, u0);
            row.sup_E_err = std::max(row.sup_E_err, std::fabs(Ee - E0));
        }
        row.D = tr.total_D();
        row.D_prim = tr.total_primal();
        row.D_dual = tr.total_dual();
        row.D_gap = std::fabs(row.D - rep.D0);
        row.edb_rel = tr.edb_relative;
        row.init_energy_gap =
            land.energy(0.0, cfg.u0) - land.limit_energy(0.0, cfg.u0);
        rep.rows.push_back(row);
        rep.eps_runs.push_back(std::move(tr));
    }

    // least-squares slope of log(err) against log(eps)
    size_t n = rep.rows.size();
    if (n >= 2) {
        double sx = 0, sy = 0, sxx = 0, sxy = 0;
        for (const auto& r : rep.rows) {
            double x = std::log(r.eps), y = std::log(std::max(r.sup_u_err, 1e-300));
            sx += x;
            sy += y;
            sxx += x * x;
            sxy += x * y;
        }
        rep.rate_u = (n * sxy - sx * sy) / (n * sxx - sx * sx);
    }
    if (n >= 3) {
        rep.tail_monotone = rep.rows[n - 2].sup_u_err <=
                                rep.rows[n - 3].sup_u_err + 1e-12 &&
                            rep.rows[n - 1].sup_u_err <=
                                rep.rows[n - 2].sup_u_err + 1e-12;
    }
    return rep;
}

SplitReport primal_dual_split(const SweepConfig& cfg,
                              const SweepReport& report) {
    SplitReport out;
    for (const auto& r : report.rows) {
        SplitRow row;
        row.eps = r.eps;
        row.D = r.D;
        row.D_prim = r.D_prim;
        row.D_dual = r.D_dual;
        out.rows.push_back(row);
    }
    out.half_D0 = 0.5 * report.D0;
    KineticRelation rel(cfg.pot, cfg.prof);
    const Trajectory& tr = report.effective;
    double acc = 0.0;
    double max_speed = 0.0;
    for (size_t i = 0; i + 1 < tr.t.size(); ++i) {
        double dt = tr.t[i + 1] - tr.t[i];
        acc += 0.5 * dt * (rel.R_eff(tr.du[i]) + rel.R_eff(tr.du[i + 1]));
        max_speed = std::max(max_speed, std::fabs(tr.du[i]));
    }
    out.int_R_eff = acc;
    out.margin = out.int_R_eff - out.half_D0;
    out.moving = max_speed > 1e-8;
    return out;
}

}  // namespace wiggly
