#include "wiggly/recovery.hpp"

#include "wiggly/quad.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace wiggly {

double PiecewiseAffine::operator()(double time) const {
    if (t.empty()) return 0.0;
    if (time <= t.front()) return value.front();
    if (time >= t.back()) return value.back();
    size_t i = std::upper_bound(t.begin(), t.end(), time) - t.begin();
    double w = (time - t[i - 1]) / (t[i] - t[i - 1]);
    return value[i - 1] + w * (value[i] - value[i - 1]);
}

double PiecewiseAffine::slope(size_t interval) const {
    return (value[interval + 1] - value[interval]) /
           (t[interval + 1] - t[interval]);
}

ShapeFunction::ShapeFunction(const DissipationPotential& pot,
                             const WigglyProfile& prof, double V, double Xi) {
    double av = std::fabs(V);
    if (!(av > 0.0)) throw std::invalid_argument("shape function: V == 0");
    if (prof.trivial()) {
        affine_ = true;
        cell_value_ = pot.R(av) + pot.R_star(Xi);
        return;
    }
    WFunction wf(pot, prof);
    MultiplierSolution sol = solve_H(wf, av, Xi);
    h_ = sol.h;
    PsiTransform psi(pot);
    auto density = [&](double y) {
        return av * psi.dpsi_star(h_ - wf.G(Xi, y));
    };
    // cumulative integral of the density on a kink- and hot-point-aware grid
    std::vector<double> ys = force_breakpoints(pot, prof, Xi, 1e-9);
    const int base = 1024;
    for (int i = 0; i <= base; ++i) ys.push_back(static_cast<double>(i) / base);
    std::sort(ys.begin(), ys.end());
    ys.erase(std::unique(ys.begin(), ys.end()), ys.end());
    while (!ys.empty() && ys.front() < 0.0) ys.erase(ys.begin());
    while (!ys.empty() && ys.back() > 1.0) ys.pop_back();
    QuadOptions opt{1e-12, 0.0, 10};
    z_grid_ = ys;
    s_grid_.resize(ys.size());
    s_grid_[0] = 0.0;
    for (size_t i = 0; i + 1 < ys.size(); ++i)
        s_grid_[i + 1] =
            s_grid_[i] + integrate(density, ys[i], ys[i + 1], opt).value;
    double total = s_grid_.back();  // = av * W_h = 1 up to the root residual
    for (double& s : s_grid_) s /= total;
    // achieved one-period cost, computed on the density representation
    auto cost = [&](double y) {
        double a = density(y) / total;
        return a * (pot.R(av / a) + wf.G(Xi, y));
    };
    cell_value_ =
        integrate_split(cost, 0.0, 1.0,
                        force_breakpoints(pot, prof, Xi, 1e-9), opt)
            .value;
}

double ShapeFunction::z(double s) const {
    if (affine_) return s;
    if (s <= 0.0) return 0.0;
    if (s >= 1.0) return 1.0;
    size_t i = std::upper_bound(s_grid_.begin(), s_grid_.end(), s) -
               s_grid_.begin();
    if (i == 0) i = 1;
    if (i >= s_grid_.size()) i = s_grid_.size() - 1;
    double w = (s - s_grid_[i - 1]) / (s_grid_[i] - s_grid_[i - 1]);
    return z_grid_[i - 1] + w * (z_grid_[i] - z_grid_[i - 1]);
}

double ShapeFunction::s_of(double y) const {
    if (affine_) return y;
    if (y <= 0.0) return 0.0;
    if (y >= 1.0) return 1.0;
    size_t i = std::upper_bound(z_grid_.begin(), z_grid_.end(), y) -
               z_grid_.begin();
    if (i == 0) i = 1;
    if (i >= z_grid_.size()) i = z_grid_.size() - 1;
    double w = (y - z_grid_[i - 1]) / (z_grid_[i] - z_grid_[i - 1]);
    return s_grid_[i - 1] + w * (s_grid_[i] - s_grid_[i - 1]);
}

double ShapeFunction::z_ext(double s) const {
    double k = std::floor(s);
    return k + z(s - k);
}

RecoveryPath build_recovery_sequence(const DissipationPotential& pot,
                                     const WigglyProfile& prof,
                                     const PiecewiseAffine& u_hat,
                                     const std::vector<double>& xi_hat,
                                     double eps) {
    if (u_hat.t.size() < 2 || u_hat.intervals() != xi_hat.size())
        throw std::invalid_argument("recovery: mismatched u_hat / xi_hat");
    if (!(eps > 0.0)) throw std::invalid_argument("recovery: eps <= 0");
    RecoveryPath path(pot, prof);
    path.eps = eps;
    for (size_t j = 0; j < u_hat.intervals(); ++j) {
        double V = u_hat.slope(j);
        if (V == 0.0)
            throw std::invalid_argument("recovery: zero slope on a block");
        path.shapes.emplace_back(pot, prof, V, xi_hat[j]);
    }
    for (size_t j = 0; j < u_hat.intervals(); ++j) {
        double a = u_hat.t[j], b = u_hat.t[j + 1];
        double V = u_hat.slope(j), Xi = xi_hat[j];
        double u_a = u_hat.value[j];
        double period = eps / std::fabs(V);
        double span = b - a;
        // all but one-to-two periods wind optimally; the remainder is a
        // bridge of slope exactly V, so the path rejoins the target at b
        long wind = std::max(0L, static_cast<long>(std::floor(span / period)) - 1);
        double t_bridge_start = a + wind * period;
        if (wind > 0) {
            RecoveryPiece osc;
            osc.t0 = a;
            osc.t1 = t_bridge_start;
            osc.oscillatory = true;
            osc.u0 = u_a;
            osc.V = V;
            osc.Xi = Xi;
            osc.periods = wind;
            osc.shape_index = j;
            double phase = u_a / eps - std::floor(u_a / eps);
            osc.s0 = path.shapes[j].s_of(phase);
            path.pieces.push_back(osc);
        }
        RecoveryPiece br;
        br.t0 = t_bridge_start;
        br.t1 = b;
        br.u0 = u_a + (V > 0 ? 1.0 : -1.0) * wind * eps;
        br.V = V;
        br.Xi = Xi;
        br.shape_index = j;
        br.slope = V;
        path.pieces.push_back(br);
    }
    return path;
}

double RecoveryPath::eval(double time) const {
    if (pieces.empty()) return 0.0;
    if (time <= pieces.front().t0) return pieces.front().u0;
    const RecoveryPiece* pc = &pieces.back();
    for (const auto& p : pieces) {
        if (time < p.t1) {
            pc = &p;
            break;
        }
    }
    double tau = std::min(time, pc->t1) - pc->t0;
    if (!pc->oscillatory) return pc->u0 + pc->slope * tau;
    const ShapeFunction& sf = shapes[pc->shape_index];
    double arc = std::fabs(pc->V) * tau / eps;  // elapsed windings
    if (pc->V > 0.0)
        return pc->u0 + eps * (sf.z_ext(pc->s0 + arc) - sf.z_ext(pc->s0));
    // downward traversal retraces the orbit in reversed local time
    return pc->u0 - eps * (sf.z_ext(pc->s0) - sf.z_ext(pc->s0 - arc));
}

double RecoveryPath::sup_distance(const PiecewiseAffine& target,
                                  int samples) const {
    double t0 = pieces.front().t0, t1 = pieces.back().t1;
    double worst = 0.0;
    for (int i = 0; i <= samples; ++i) {
        double tt = t0 + (t1 - t0) * i / samples;
        worst = std::max(worst, std::fabs(eval(tt) - target(tt)));
    }
    return worst;
}

long RecoveryPath::total_periods() const {
    long n = 0;
    for (const auto& p : pieces)
        if (p.oscillatory) n += p.periods;
    return n;
}

double RecoveryPath::J_eps() const {
    double J = 0.0;
    QuadOptions opt{1e-10, 0.0, 10};
    for (const auto& p : pieces) {
        if (p.oscillatory) {
            double period = eps / std::fabs(p.V);
            J += p.periods * period * shapes[p.shape_index].cell_value();
            continue;
        }
        double R_slope = pot.R(p.slope);
        auto f = [&](double tau) {
            double u = p.u0 + p.slope * tau;
            return R_slope + pot.R_star(p.Xi - prof(u / eps));
        };
        double len = p.t1 - p.t0;
        // breakpoints at the wiggle periods crossed by the bridge
        std::vector<double> pts;
        if (p.slope != 0.0) {
            double per = eps / std::fabs(p.slope);
            for (double x = per; x < len; x += per) pts.push_back(x);
        }
        J += integrate_split(f, 0.0, len, pts, opt).value;
    }
    return J;
}

double lazy_path_J(const DissipationPotential& pot, const WigglyProfile& prof,
                   const PiecewiseAffine& u_hat,
                   const std::vector<double>& xi_hat, double eps) {
    double J = 0.0;
    QuadOptions opt{1e-11, 0.0, 10};
    for (size_t j = 0; j < u_hat.intervals(); ++j) {
        double len = u_hat.t[j + 1] - u_hat.t[j];
        double V = u_hat.slope(j), Xi = xi_hat[j];
        J += len * pot.R(V);
        if (prof.trivial()) {
            J += len * pot.R_star(Xi);
            continue;
        }
        if (V == 0.0) {
            J += len * pot.R_star(Xi - prof(u_hat.value[j] / eps));
            continue;
        }
        // substitute y = u(t)/eps: dt = eps/|V| dy over (len |V| / eps) periods
        double y0 = u_hat.value[j] / eps;
        double span = len * std::fabs(V) / eps;
        long full = static_cast<long>(std::floor(span));
        auto g = [&](double y) { return pot.R_star(Xi - prof(y)); };
        double period_avg =
            integrate_split(g, 0.0, 1.0, prof.kinks(), opt).value;
        double rest = integrate_split(
                          [&](double y) { return g(y0 + (V > 0 ? 1 : -1) * y); },
                          full, span, {}, opt)
                          .value;
        J += (eps / std::fabs(V)) * (full * period_avg + rest);
    }
    return J;
}

double limit_J(const DissipationPotential& pot, const WigglyProfile& prof,
               const PiecewiseAffine& u_hat,
               const std::vector<double>& xi_hat) {
    double J = 0.0;
    for (size_t j = 0; j < u_hat.intervals(); ++j) {
        double len = u_hat.t[j + 1] - u_hat.t[j];
        J += len * m_lagrange(pot, prof, u_hat.slope(j), xi_hat[j]).M;
    }
    return J;
}

GammaGapTable gamma_gap(const DissipationPotential& pot,
                        const WigglyProfile& prof,
                        const PiecewiseAffine& u_hat,
                        const std::vector<double>& xi_hat,
                        const std::vector<double>& eps_list) {
    GammaGapTable table;
    table.J0 = limit_J(pot, prof, u_hat, xi_hat);
    for (double eps : eps_list) {
        GammaGapRow row;
        row.eps = eps;
        RecoveryPath path =
            build_recovery_sequence(pot, prof, u_hat, xi_hat, eps);
        row.J_recovery = path.J_eps();
        row.J_lazy = lazy_path_J(pot, prof, u_hat, xi_hat, eps);
        row.gap_recovery = row.J_recovery - table.J0;
        row.gap_lazy = row.J_lazy - table.J0;
        row.sup_distance = path.sup_distance(u_hat);
        table.rows.push_back(row);
    }
    return table;
}

}  // namespace wiggly
