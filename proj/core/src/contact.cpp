#include "wiggly/contact.hpp"

#include "wiggly/quad.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace wiggly {

namespace {

const QuadOptions kWQuad{1e-11, 0.0, 12};

// L-BFGS with Armijo backtracking; fg fills the gradient and returns the value
double lbfgs_minimize(
    const std::function<double(const std::vector<double>&,
                               std::vector<double>&)>& fg,
    std::vector<double>& x, int max_iter, double gtol) {
    const int m = 10;
    const size_t n = x.size();
    std::vector<std::vector<double>> S, Y;
    std::vector<double> g(n), gn(n), xn(n), d(n);
    double f = fg(x, g);
    for (int it = 0; it < max_iter; ++it) {
        double gmax = 0.0;
        for (double gi : g) gmax = std::max(gmax, std::fabs(gi));
        if (gmax < gtol) break;
        // two-loop recursion
        d = g;
        std::vector<double> alpha(S.size());
        for (size_t i = S.size(); i-- > 0;) {
            double sy = 0.0, sd = 0.0;
            for (size_t k = 0; k < n; ++k) sy += S[i][k] * Y[i][k];
            for (size_t k = 0; k < n; ++k) sd += S[i][k] * d[k];
            alpha[i] = sd / sy;
            for (size_t k = 0; k < n; ++k) d[k] -= alpha[i] * Y[i][k];
        }
        if (!S.empty()) {
            double sy = 0.0, yy = 0.0;
            for (size_t k = 0; k < n; ++k) {
                sy += S.back()[k] * Y.back()[k];
                yy += Y.back()[k] * Y.back()[k];
            }
            double gamma = sy / yy;
            for (size_t k = 0; k < n; ++k) d[k] *= gamma;
        }
        for (size_t i = 0; i < S.size(); ++i) {
            double yd = 0.0, sy = 0.0;
            for (size_t k = 0; k < n; ++k) yd += Y[i][k] * d[k];
            for (size_t k = 0; k < n; ++k) sy += S[i][k] * Y[i][k];
            double beta = yd / sy;
            for (size_t k = 0; k < n; ++k) d[k] += (alpha[i] - beta) * S[i][k];
        }
        double gd = 0.0;
        for (size_t k = 0; k < n; ++k) gd += g[k] * d[k];
        if (!(gd > 0.0)) {  // not a descent direction: restart from gradient
            d = g;
            gd = 0.0;
            for (size_t k = 0; k < n; ++k) gd += g[k] * g[k];
            S.clear();
            Y.clear();
        }
        double t = 1.0;
        double fn = f;
        bool accepted = false;
        for (int ls = 0; ls < 50; ++ls) {
            for (size_t k = 0; k < n; ++k) xn[k] = x[k] - t * d[k];
            fn = fg(xn, gn);
            if (fn <= f - 1e-4 * t * gd) {
                accepted = true;
                break;
            }
            t *= 0.5;
        }
        if (!accepted) break;
        std::vector<double> s(n), yv(n);
        double sy = 0.0, ss = 0.0, yy = 0.0;
        for (size_t k = 0; k < n; ++k) {
            s[k] = xn[k] - x[k];
            yv[k] = gn[k] - g[k];
            sy += s[k] * yv[k];
            ss += s[k] * s[k];
            yy += yv[k] * yv[k];
        }
        if (sy > 1e-12 * std::sqrt(ss * yy)) {
            S.push_back(std::move(s));
            Y.push_back(std::move(yv));
            if (static_cast<int>(S.size()) > m) {
                S.erase(S.begin());
                Y.erase(Y.begin());
            }
        }
        x = xn;
        g = gn;
        double df = f - fn;
        f = fn;
        if (df < 1e-16 * (1.0 + std::fabs(f)) && it > 5) break;
    }
    return f;
}

}  // namespace

double m_zero(const DissipationPotential& pot, const WigglyProfile& prof,
              double xi) {
    if (xi > prof.p_max()) return pot.R_star(xi - prof.p_max());
    if (xi < prof.p_min()) return pot.R_star(xi - prof.p_min());
    return 0.0;
}

WFunction::WFunction(DissipationPotential pot, WigglyProfile prof)
    : pot_(std::move(pot)),
      prof_(std::move(prof)),
      psi_(pot_, PsiTransform::Branch::Plus) {}

double WFunction::G(double xi, double z) const {
    return pot_.R_star(xi - prof_(z));
}

double WFunction::G_min(double xi) const { return m_zero(pot_, prof_, xi); }

template <class Term>
double WFunction::cell_integral(double xi, double h, Term&& term) const {
    if (prof_.is_discrete()) {
        double acc = 0.0;
        for (size_t i = 0; i < prof_.values().size(); ++i) {
            double eta = xi - prof_.values()[i];
            acc += prof_.weights()[i] * term(h - pot_.R_star(eta), eta);
        }
        return acc;
    }
    auto f = [&](double z) {
        double eta = xi - prof_(z);
        return term(h - pot_.R_star(eta), eta);
    };
    // the integrand steepens where G approaches its minimum; grade on the
    // corresponding length scale
    double gap = std::max(G_min(xi) - h, 1e-300);
    double w0 = std::clamp(0.5 * std::sqrt(gap), 1e-12, 1e-2);
    return integrate_split(f, 0.0, 1.0,
                           force_breakpoints(pot_, prof_, xi, w0), kWQuad)
        .value;
}

double WFunction::value(double xi, double h) const {
    return cell_integral(xi, h,
                         [&](double s, double) { return psi_.psi_star(s); });
}

double WFunction::dh(double xi, double h) const {
    return cell_integral(xi, h,
                         [&](double s, double) { return psi_.dpsi_star(s); });
}

double WFunction::dhh(double xi, double h) const {
    return cell_integral(xi, h,
                         [&](double s, double) { return psi_.ddpsi_star(s); });
}

double WFunction::dxi(double xi, double h) const {
    return cell_integral(xi, h, [&](double s, double eta) {
        return -psi_.dpsi_star(s) * pot_.dR_star(eta);
    });
}

double WFunction::dxih(double xi, double h) const {
    return cell_integral(xi, h, [&](double s, double eta) {
        return -psi_.ddpsi_star(s) * pot_.dR_star(eta);
    });
}

double WFunction::dxixi(double xi, double h) const {
    return cell_integral(xi, h, [&](double s, double eta) {
        double gx = pot_.dR_star(eta);
        return psi_.ddpsi_star(s) * gx * gx -
               psi_.dpsi_star(s) * pot_.ddR_star(eta);
    });
}

MultiplierSolution solve_H(const WFunction& wf, double v, double xi) {
    if (!(v > 0.0)) throw std::invalid_argument("solve_H: v must be positive");
    double cap = wf.G_min(xi);
    double tiny = 1e-13 * (1.0 + std::fabs(cap));
    double h_hi = cap - tiny;
    auto f = [&](double h) { return v * wf.dh(xi, h) - 1.0; };
    MultiplierSolution out;
    double f_hi = f(h_hi);
    if (f_hi <= 0.0) {
        out.h = h_hi;
        out.at_boundary = true;
        out.residual = std::fabs(f_hi);
        return out;
    }
    double h_lo = cap - std::max(1.0, std::fabs(cap));
    double f_lo = f(h_lo);
    int guard = 0;
    while (f_lo > 0.0) {
        h_lo = cap - 2.0 * (cap - h_lo);
        f_lo = f(h_lo);
        if (++guard > 400)
            throw std::runtime_error("solve_H: bracket expansion failed");
    }
    double lo = h_lo, hi = h_hi;
    for (int it = 0; it < 90; ++it) {
        double mid = 0.5 * (lo + hi);
        if (mid == lo || mid == hi) break;
        if (f(mid) > 0.0)
            hi = mid;
        else
            lo = mid;
        if (hi - lo < 1e-15 * (1.0 + std::fabs(mid))) break;
    }
    double h = lo;
    for (int it = 0; it < 4; ++it) {  // Newton polish, W_hh > 0
        double fh = f(h);
        double dfh = v * wf.dhh(xi, h);
        if (!(dfh > 0.0) || !std::isfinite(dfh)) break;
        double hn = h - fh / dfh;
        if (!(hn > h_lo) || !(hn < h_hi)) break;
        if (std::fabs(hn - h) < 1e-17 * (1.0 + std::fabs(h))) {
            h = hn;
            break;
        }
        h = hn;
    }
    out.h = h;
    out.residual = std::fabs(f(h));
    return out;
}

ContactEvaluation m_lagrange(const DissipationPotential& pot,
                             const WigglyProfile& prof, double v, double xi) {
    ContactEvaluation ev;
    ev.v = v;
    ev.xi = xi;
    if (v == 0.0) {
        ev.route = Route::ZeroVelocity;
        ev.M = m_zero(pot, prof, xi);
        ev.h = std::nan("");
        return ev;
    }
    double av = std::fabs(v);  // R is even, so M(-v, xi) = M(v, xi)
    WFunction wf(pot, prof);
    MultiplierSolution sol = solve_H(wf, av, xi);
    ev.route = Route::LagrangeH;
    ev.h = sol.h;
    ev.at_boundary = sol.at_boundary;
    ev.M = sol.h - av * wf.value(xi, sol.h);
    ev.residual = sol.residual;
    return ev;
}

ContactEvaluation m_density(const DissipationPotential& pot,
                            const WigglyProfile& prof, double v, double xi,
                            int n) {
    ContactEvaluation ev;
    ev.v = v;
    ev.xi = xi;
    ev.route = Route::DensityA;
    if (v == 0.0) {
        ev.route = Route::ZeroVelocity;
        ev.M = m_zero(pot, prof, xi);
        ev.h = std::nan("");
        return ev;
    }
    double av = std::fabs(v);
    std::vector<double> y, w, G;
    if (prof.is_discrete()) {
        w = prof.weights();
        double edge = 0.0;
        for (size_t i = 0; i < prof.values().size(); ++i) {
            y.push_back(edge + 0.5 * w[i]);
            edge += w[i];
            G.push_back(pot.R_star(xi - prof.values()[i]));
        }
    } else {
        y.resize(n);
        w.assign(n, 1.0 / n);
        G.resize(n);
        for (int i = 0; i < n; ++i) {
            y[i] = (i + 0.5) / n;
            G[i] = pot.R_star(xi - prof(y[i]));
        }
    }
    size_t m = w.size();
    std::vector<double> a(m, 1.0), g(m), hdiag(m), da(m);
    auto total = [&](const std::vector<double>& aa) {
        double T = 0.0;
        for (size_t i = 0; i < m; ++i)
            T += w[i] * aa[i] * (pot.R(av / aa[i]) + G[i]);
        return T;
    };
    double T = total(a);
    double pg_norm = 0.0;
    for (int it = 0; it < 400; ++it) {
        for (size_t i = 0; i < m; ++i) {
            double rho = av / a[i];
            g[i] = w[i] * (pot.R(rho) - rho * pot.dR(rho) + G[i]);
            double dd = pot.ddR(rho);
            double hi = w[i] * (av * av / (a[i] * a[i] * a[i])) * dd;
            if (!std::isfinite(hi) || hi < 1e-14 * w[i]) hi = 1e-14 * w[i];
            hdiag[i] = hi;
        }
        // Newton step restricted to the affine slice sum(w a) = 1
        double num = 0.0, den = 0.0;
        for (size_t i = 0; i < m; ++i) {
            num += w[i] * g[i] / hdiag[i];
            den += w[i] * w[i] / hdiag[i];
        }
        double lam = num / den;
        double gd = 0.0;
        for (size_t i = 0; i < m; ++i) {
            da[i] = -(g[i] - lam * w[i]) / hdiag[i];
            gd += g[i] * da[i];
        }
        // projected gradient norm, for the convergence report
        double lam2_num = 0.0, lam2_den = 0.0;
        for (size_t i = 0; i < m; ++i) {
            lam2_num += w[i] * g[i];
            lam2_den += w[i] * w[i];
        }
        pg_norm = 0.0;
        for (size_t i = 0; i < m; ++i)
            pg_norm = std::max(
                pg_norm, std::fabs(g[i] - (lam2_num / lam2_den) * w[i]));
        if (pg_norm < 1e-13 * (1.0 + std::fabs(T))) break;
        // keep positivity: a + t da >= 0.2 a
        double t = 1.0;
        for (size_t i = 0; i < m; ++i)
            if (da[i] < 0.0) t = std::min(t, -0.8 * a[i] / da[i]);
        bool accepted = false;
        for (int ls = 0; ls < 60; ++ls) {
            std::vector<double> an(m);
            for (size_t i = 0; i < m; ++i) an[i] = a[i] + t * da[i];
            double Tn = total(an);
            if (Tn <= T + 1e-4 * t * gd) {
                a = std::move(an);
                double df = T - Tn;
                T = Tn;
                accepted = true;
                if (df < 1e-17 * (1.0 + std::fabs(T)) && it > 3) it = 1000;
                break;
            }
            t *= 0.5;
        }
        if (!accepted) break;
    }
    ev.M = T;
    ev.residual = pg_norm;
    ev.grid = y;
    ev.minimizer = a;
    return ev;
}

ContactEvaluation m_cell_direct(const DissipationPotential& pot,
                                const WigglyProfile& prof, double v, double xi,
                                int n) {
    ContactEvaluation ev;
    ev.v = v;
    ev.xi = xi;
    ev.route = Route::CellZ;
    if (v == 0.0) {
        ev.route = Route::ZeroVelocity;
        ev.M = m_zero(pot, prof, xi);
        ev.h = std::nan("");
        return ev;
    }
    if (prof.is_discrete())
        throw std::invalid_argument(
            "m_cell_direct: path descent needs a continuous profile");
    double av = std::fabs(v);
    double ds = 1.0 / n;
    // winding +1 suffices: R is even, so M(-v, xi) = M(v, xi)
    auto fg = [&](const std::vector<double>& z, std::vector<double>& grad) {
        double F = 0.0;
        std::fill(grad.begin(), grad.end(), 0.0);
        for (int j = 0; j < n; ++j) {
            int jn = (j + 1) % n;
            double zn = (j + 1 == n) ? z[0] + 1.0 : z[jn];
            double dz = zn - z[j];
            double speed = av * dz / ds;
            double mj = 0.5 * (z[j] + zn);
            F += ds * pot.R(speed) + ds * pot.R_star(xi - prof(mj));
            double dR = av * pot.dR(speed);
            double q = -ds * 0.5 * pot.dR_star(xi - prof(mj)) * prof.deriv(mj);
            grad[j] += -dR + q;
            grad[jn] += dR + q;
        }
        return F;
    };
    double best = kInf;
    std::vector<double> best_z;
    for (double phase : {0.0, 0.25, 0.5, 0.75}) {
        std::vector<double> z(n);
        for (int j = 0; j < n; ++j) z[j] = phase + static_cast<double>(j) / n;
        double F = lbfgs_minimize(fg, z, 3000, 1e-12 * n);
        if (F < best) {
            best = F;
            best_z = z;
        }
    }
    ev.M = best;
    ev.minimizer = best_z;
    ev.grid.resize(n);
    for (int j = 0; j < n; ++j) ev.grid[j] = static_cast<double>(j) / n;
    std::vector<double> gr(n);
    fg(best_z, gr);
    double gmax = 0.0;
    for (double gi : gr) gmax = std::max(gmax, std::fabs(gi));
    ev.residual = gmax;
    return ev;
}

double m1_expansion(const DissipationPotential& pot,
                    const WigglyProfile& prof, double xi) {
    double m0 = m_zero(pot, prof, xi);
    if (prof.is_discrete()) {
        double acc = 0.0;
        for (size_t i = 0; i < prof.values().size(); ++i) {
            double G = pot.R_star(xi - prof.values()[i]);
            acc += prof.weights()[i] * pot.inv_R_star(std::max(0.0, G - m0));
        }
        return acc;
    }
    auto f = [&](double y) {
        double G = pot.R_star(xi - prof(y));
        return pot.inv_R_star(std::max(0.0, G - m0));
    };
    return integrate_split(f, 0.0, 1.0, force_breakpoints(pot, prof, xi, 1e-9),
                           kWQuad)
        .value;
}

RateIndependentReport m_rate_independent(const DissipationPotential& pot,
                                         const WigglyProfile& prof, double v,
                                         double xi,
                                         const std::vector<double>& deltas) {
    RateIndependentReport rep;
    rep.deltas = deltas;
    rep.inside_sticking = xi >= prof.p_min() && xi <= prof.p_max();
    rep.limit_prediction =
        rep.inside_sticking ? std::fabs(v) * m1_expansion(pot, prof, xi) : kInf;
    for (double d : deltas)
        rep.values.push_back(m_lagrange(pot, prof, d * v, xi).M / d);
    if (!rep.inside_sticking && rep.values.size() >= 2) {
        double m0 = m_zero(pot, prof, xi);
        rep.diverges = rep.values.back() >= 0.5 * m0 / deltas.back();
    }
    return rep;
}

namespace {

// weak relaxation for piecewise-constant profiles: a monotone winding path
// reduces exactly to its phase time-shares theta_i (Jensen within phases),
// leaving a small convex program over the simplex
double m_weak_discrete(const DissipationPotential& pot,
                       const WigglyProfile& prof, double av, double xi) {
    const auto& w = prof.weights();
    const auto& val = prof.values();
    size_t m = w.size();
    std::vector<double> th(m, 0.0);
    for (size_t i = 0; i < m; ++i) th[i] = w[i];
    auto total = [&](const std::vector<double>& t) {
        double pbar = 0.0, kin = 0.0;
        for (size_t i = 0; i < m; ++i) {
            kin += t[i] * pot.R(av * w[i] / t[i]);
            pbar += t[i] * val[i];
        }
        return kin + pot.R_star(xi - pbar);
    };
    // projected gradient with backtracking on the simplex
    double F = total(th);
    std::vector<double> g(m), d(m);
    for (int it = 0; it < 4000; ++it) {
        double pbar = 0.0;
        for (size_t i = 0; i < m; ++i) pbar += th[i] * val[i];
        double outer = -pot.dR_star(xi - pbar);
        double gmean = 0.0;
        for (size_t i = 0; i < m; ++i) {
            double rho = av * w[i] / th[i];
            g[i] = pot.R(rho) - rho * pot.dR(rho) + outer * val[i];
            gmean += g[i] / m;
        }
        double gd = 0.0;
        for (size_t i = 0; i < m; ++i) {
            d[i] = -(g[i] - gmean);
            gd += g[i] * d[i];  // <= 0
        }
        double t = 1.0;
        for (size_t i = 0; i < m; ++i)
            if (d[i] < 0.0) t = std::min(t, -0.8 * th[i] / d[i]);
        bool accepted = false;
        for (int ls = 0; ls < 60; ++ls) {
            std::vector<double> tn(m);
            for (size_t i = 0; i < m; ++i) tn[i] = th[i] + t * d[i];
            double Fn = total(tn);
            if (Fn <= F + 1e-4 * t * gd) {
                th = std::move(tn);
                double df = F - Fn;
                F = Fn;
                accepted = true;
                if (df < 1e-16 * (1.0 + std::fabs(F))) it = 1 << 20;
                break;
            }
            t *= 0.5;
        }
        if (!accepted) break;
    }
    return F;
}

}  // namespace

double m_weak(const DissipationPotential& pot, const WigglyProfile& prof,
              double v, double xi, int n) {
    if (prof.trivial()) return pot.R(v) + pot.R_star(xi);
    // zero velocity: the winding constraint is empty and the kinetic term
    // vanishes, so the averaged force reaches the whole convex hull
    if (v == 0.0) return m_zero(pot, prof, xi);
    double av = std::fabs(v);
    if (prof.is_discrete()) return m_weak_discrete(pot, prof, av, xi);
    const WigglyProfile& p2 = prof;
    double ds = 1.0 / n;
    auto fg = [&](const std::vector<double>& z, std::vector<double>& grad) {
        double F = 0.0;
        std::fill(grad.begin(), grad.end(), 0.0);
        double pbar = 0.0;
        for (int j = 0; j < n; ++j) {
            double zn = (j + 1 == n) ? z[0] + 1.0 : z[j + 1];
            double dz = zn - z[j];
            double speed = av * dz / ds;
            F += ds * pot.R(speed);
            pbar += ds * p2(0.5 * (z[j] + zn));
            double dR = av * pot.dR(speed);
            grad[j] += -dR;
            grad[(j + 1) % n] += dR;
        }
        F += pot.R_star(xi - pbar);
        double outer = -pot.dR_star(xi - pbar);
        for (int j = 0; j < n; ++j) {
            double zn = (j + 1 == n) ? z[0] + 1.0 : z[j + 1];
            double mj = 0.5 * (z[j] + zn);
            double c = outer * ds * 0.5 * p2.deriv(mj);
            grad[j] += c;
            grad[(j + 1) % n] += c;
        }
        return F;
    };
    double best = kInf;
    for (double phase : {0.0, 0.125, 0.25, 0.375, 0.5, 0.625, 0.75, 0.875}) {
        std::vector<double> z(n);
        for (int j = 0; j < n; ++j) z[j] = phase + static_cast<double>(j) / n;
        best = std::min(best, lbfgs_minimize(fg, z, 3000, 1e-12 * n));
    }
    return best;
}

double contact_residual(const KineticRelation& rel, double v) {
    double xi = rel.dR_eff(v);
    double M = m_lagrange(rel.potential(), rel.profile(), v, xi).M;
    return M - v * xi;
}

ConvexityReport convexity_probe(const DissipationPotential& pot,
                                const WigglyProfile& prof, Direction dir,
                                const std::vector<double>& v_grid,
                                const std::vector<double>& xi_grid) {
    ConvexityReport rep;
    rep.worst_violation = kInf;
    const auto& outer = dir == Direction::V ? xi_grid : v_grid;
    const auto& inner = dir == Direction::V ? v_grid : xi_grid;
    for (double o : outer) {
        std::vector<double> M(inner.size());
        for (size_t i = 0; i < inner.size(); ++i) {
            double vv = dir == Direction::V ? inner[i] : o;
            double xx = dir == Direction::V ? o : inner[i];
            M[i] = m_lagrange(pot, prof, vv, xx).M;
        }
        for (size_t i = 1; i + 1 < inner.size(); ++i) {
            double defect = M[i - 1] + M[i + 1] - 2.0 * M[i];
            if (defect < rep.worst_violation) {
                rep.worst_violation = defect;
                rep.at_v = dir == Direction::V ? inner[i] : o;
                rep.at_xi = dir == Direction::V ? o : inner[i];
            }
        }
    }
    return rep;
}

BipotentialReport bipotential_check(
    const DissipationPotential& pot, const WigglyProfile& prof,
    const std::vector<std::pair<double, double>>& points, double tol_eq,
    double tol_d) {
    BipotentialReport rep;
    for (auto [v, xi] : points) {
        BipotentialPoint pt;
        pt.v = v;
        pt.xi = xi;
        pt.M = m_lagrange(pot, prof, v, xi).M;
        pt.equality = std::fabs(pt.M - v * xi) <= tol_eq * (1.0 + std::fabs(v * xi));
        double hv = 1e-5 * (1.0 + std::fabs(v));
        if (std::fabs(v) <= 2.0 * hv) {
            // subdifferential at the |v| kink: d_v M(0, xi) = [-M1, M1]
            double M1 = m1_expansion(pot, prof, xi);
            pt.in_dv = std::fabs(xi) <= M1 + tol_d * (1.0 + std::fabs(xi));
        } else {
            double Mp = m_lagrange(pot, prof, v + hv, xi).M;
            double Mm = m_lagrange(pot, prof, v - hv, xi).M;
            double Mv = (Mp - Mm) / (2.0 * hv);
            pt.in_dv = std::fabs(Mv - xi) <= tol_d * (1.0 + std::fabs(xi));
        }
        double hx = 1e-5 * (1.0 + std::fabs(xi));
        double Mxp = m_lagrange(pot, prof, v, xi + hx).M;
        double Mxm = m_lagrange(pot, prof, v, xi - hx).M;
        double Mxi = (Mxp - Mxm) / (2.0 * hx);
        pt.in_dxi = std::fabs(Mxi - v) <= tol_d * (1.0 + std::fabs(v));
        pt.consistent = (pt.equality == pt.in_dv) && (pt.equality == pt.in_dxi);
        if (pt.equality && pt.consistent)
            ++rep.n_contact;
        else if (!pt.equality && pt.consistent)
            ++rep.n_separated;
        else
            ++rep.n_inconsistent;
        rep.points.push_back(pt);
    }
    return rep;
}

double m_eff(const KineticRelation& rel, double v, double xi) {
    return rel.R_eff(v) + rel.R_eff_star(xi);
}

MeffReport meff_comparison(const KineticRelation& rel,
                           const std::vector<std::pair<double, double>>& points,
                           double contact_tol) {
    MeffReport rep;
    rep.min_diff = kInf;
    for (auto [v, xi] : points) {
        MeffRow row;
        row.v = v;
        row.xi = xi;
        row.M = m_lagrange(rel.potential(), rel.profile(), v, xi).M;
        row.Meff = m_eff(rel, v, xi);
        row.on_contact =
            std::fabs(row.M - v * xi) <= contact_tol * (1.0 + std::fabs(v * xi));
        double diff = row.Meff - row.M;
        rep.min_diff = std::min(rep.min_diff, diff);
        if (row.on_contact)
            rep.max_on_contact_diff =
                std::max(rep.max_on_contact_diff, std::fabs(diff));
        rep.rows.push_back(row);
    }
    return rep;
}

}  // namespace wiggly
