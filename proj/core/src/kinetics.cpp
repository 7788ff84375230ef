#include "wiggly/kinetics.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace wiggly {

std::vector<double> force_breakpoints(const DissipationPotential& pot,
                                      const WigglyProfile& prof, double xi,
                                      double w0) {
    std::vector<double> pts = prof.kinks();
    for (double b : pot.dual_breakpoints()) {
        for (double y : prof.level_points(xi - b)) pts.push_back(y);
        for (double y : prof.level_points(xi + b)) pts.push_back(y);
    }
    w0 = std::clamp(w0, 1e-14, 0.25);
    for (double hot : prof.hot_points(xi)) {
        auto graded = graded_breakpoints(0.0, 1.0, hot, w0);
        pts.insert(pts.end(), graded.begin(), graded.end());
    }
    return pts;
}

namespace {

double depinning_width(const WigglyProfile& prof, double xi) {
    double gap = 0.0;
    if (xi > prof.p_max())
        gap = xi - prof.p_max();
    else if (xi < prof.p_min())
        gap = prof.p_min() - xi;
    if (gap > 0.0 && prof.has_local_model())
        return std::pow(gap / prof.c_star(), 1.0 / prof.alpha());
    if (gap > 0.0) return std::min(0.25, gap);
    return 1e-6;
}

double harmonic_integral(const DissipationPotential& pot,
                         const WigglyProfile& prof, double xi,
                         const QuadOptions& opt) {
    if (prof.is_discrete()) {
        double acc = 0.0;
        for (size_t i = 0; i < prof.values().size(); ++i)
            acc += prof.weights()[i] / pot.dR_star(xi - prof.values()[i]);
        return acc;
    }
    auto f = [&](double y) { return 1.0 / pot.dR_star(xi - prof(y)); };
    auto pts = force_breakpoints(pot, prof, xi, depinning_width(prof, xi));
    return integrate_split(f, 0.0, 1.0, pts, opt).value;
}

}  // namespace

double harmonic_mean_K(const DissipationPotential& pot,
                       const WigglyProfile& prof, double xi,
                       const QuadOptions& opt) {
    if (xi >= prof.p_min() && xi <= prof.p_max()) return 0.0;
    return 1.0 / harmonic_integral(pot, prof, xi, opt);
}

KineticRelation::KineticRelation(DissipationPotential pot, WigglyProfile prof)
    : pot_(std::move(pot)), prof_(std::move(prof)) {}

double KineticRelation::K(double xi) const {
    return harmonic_mean_K(pot_, prof_, xi, opt_);
}

double KineticRelation::R_eff_star(double xi) const {
    double lo = sticking_lo(), hi = sticking_hi();
    if (xi >= lo && xi <= hi) return 0.0;
    // K has a Hoelder cusp at the depinning boundary; the substitution
    // eta = boundary +- tau^2 flattens it
    QuadOptions opt{1e-10, 0.0, 10};
    if (xi > hi) {
        double span = std::sqrt(xi - hi);
        auto g = [&](double tau) { return 2.0 * tau * K(hi + tau * tau); };
        auto pts = graded_breakpoints(0.0, span, 0.0, span * 1e-4);
        return integrate_split(g, 0.0, span, pts, opt).value;
    }
    double span = std::sqrt(lo - xi);
    auto g = [&](double tau) { return 2.0 * tau * K(lo - tau * tau); };
    auto pts = graded_breakpoints(0.0, span, 0.0, span * 1e-4);
    return -integrate_split(g, 0.0, span, pts, opt).value;
}

double KineticRelation::dR_eff(double v) const {
    if (v == 0.0) return 0.0;
    double lo, hi;
    if (v > 0.0) {
        double base = sticking_hi();
        lo = base;
        hi = base + 1.0;
        while (K(hi) < v) {
            hi = base + 2.0 * (hi - base);
            if (hi - base > 1e12)
                throw std::runtime_error("dR_eff: bracket expansion failed");
        }
        // K may jump at the boundary (alpha < 1 profiles): pinned selection
        if (K(base + 1e-13 * (1.0 + std::fabs(base))) >= v) return base;
    } else {
        double base = sticking_lo();
        hi = base;
        lo = base - 1.0;
        while (K(lo) > v) {
            lo = base - 2.0 * (base - lo);
            if (base - lo > 1e12)
                throw std::runtime_error("dR_eff: bracket expansion failed");
        }
        if (K(base - 1e-13 * (1.0 + std::fabs(base))) <= v) return base;
    }
    for (int it = 0; it < 200; ++it) {
        double mid = 0.5 * (lo + hi);
        if (mid == lo || mid == hi) break;
        if (K(mid) < v)
            lo = mid;
        else
            hi = mid;
        if (hi - lo < 1e-15 * (1.0 + std::fabs(hi))) break;
    }
    return 0.5 * (lo + hi);
}

double KineticRelation::R_eff(double v) const {
    if (v == 0.0) return 0.0;
    double xi = dR_eff(v);
    return v * xi - R_eff_star(xi);
}

double KineticRelation::alpha_of_v(double v) const {
    if (v == 0.0) return 1.0;
    double xi = dR_eff(v);
    double reff = v * xi - R_eff_star(xi);
    return v * xi / reff;
}

double depinning_series_constant(double alpha) {
    if (!(alpha > 0.0))
        throw std::invalid_argument("depinning series: alpha <= 0");
    // Cohen-Rodriguez Villegas-Zagier acceleration for alternating series
    auto term = [alpha](int k) {
        return 1.0 / (alpha * k + 1.0) + 1.0 / (alpha * (k + 1) - 1.0);
    };
    const int n = 40;
    double d = std::pow(3.0 + std::sqrt(8.0), n);
    d = 0.5 * (d + 1.0 / d);
    double b = -1.0, c = -d, s = 0.0;
    for (int k = 0; k < n; ++k) {
        c = b - c;
        s += c * term(k);
        b *= (k + n) * (k - n) / ((k + 0.5) * (k + 1.0));
    }
    return 2.0 * s / d;
}

DepinningPrediction depinning_expansion(const DissipationPotential& pot,
                                        const WigglyProfile& prof,
                                        double xi) {
    if (pot.growth_exponent() != 2.0 || !pot.is_power_law())
        throw std::invalid_argument("depinning expansion: quadratic R only");
    if (!prof.has_local_model())
        throw std::invalid_argument(
            "depinning expansion: profile has no local maximum model");
    if (!(prof.alpha() > 1.0))
        throw std::invalid_argument(
            "depinning expansion: alpha <= 1, use the logarithmic branch");
    DepinningPrediction out;
    double alpha = prof.alpha();
    out.S_alpha = depinning_series_constant(alpha);
    out.exponent = (alpha - 1.0) / alpha;
    double mu = pot.dR_star(1.0);
    out.prefactor = mu * std::pow(prof.c_star(), 1.0 / alpha) / out.S_alpha;
    double excess = std::max(0.0, xi - prof.p_max());
    out.K = out.prefactor * std::pow(excess, out.exponent);
    return out;
}

double log_depinning_K(const DissipationPotential& pot,
                       const WigglyProfile& prof, double xi) {
    if (pot.growth_exponent() != 2.0 || !pot.is_power_law())
        throw std::invalid_argument("log depinning: quadratic R only");
    if (!prof.has_local_model() || prof.alpha() != 1.0)
        throw std::invalid_argument("log depinning: needs a tent-type profile");
    double excess = xi - prof.p_max();
    if (!(excess > 0.0))
        throw std::invalid_argument("log depinning: xi <= p_max");
    double mu = pot.dR_star(1.0);
    return mu * 0.5 * prof.c_star() / std::log(1.0 / excess);
}

double large_xi_defect(const DissipationPotential& pot,
                       const WigglyProfile& prof, double xi) {
    return harmonic_mean_K(pot, prof, xi) - pot.dR_star(xi);
}

BoundsReport bounds_report(const KineticRelation& rel,
                           const std::vector<double>& v_grid,
                           const std::vector<double>& xi_grid) {
    const DissipationPotential& pot = rel.potential();
    double pmax = rel.sticking_hi(), pmin = rel.sticking_lo();
    BoundsReport rep;
    rep.improved_applicable = pot.is_power_law();
    double inf = kInf;
    rep.worst_upper_v = rep.worst_lower_v = inf;
    rep.worst_lower_xi = rep.worst_upper_xi = inf;
    rep.worst_improved_xi = inf;

    double v1 = pot.dR_star(pmax - pmin);
    double rstar_span = pot.R_star(pmax - pmin);
    for (double v : v_grid) {
        if (v < 0.0) continue;
        double reff = rel.R_eff(v);
        rep.worst_upper_v =
            std::min(rep.worst_upper_v, pmax * v + pot.R(v) - reff);
        double blow = v <= v1 ? pmax * v : pmin * v + pot.R(v) + rstar_span;
        rep.worst_lower_v = std::min(rep.worst_lower_v, reff - blow);
    }
    for (double xi : xi_grid) {
        if (xi < pmax) continue;
        double rstar_eff = rel.R_eff_star(xi);
        rep.worst_lower_xi =
            std::min(rep.worst_lower_xi, rstar_eff - pot.R_star(xi - pmax));
        rep.worst_upper_xi =
            std::min(rep.worst_upper_xi,
                     pot.R_star(xi - pmin) - rstar_span - rstar_eff);
        if (rep.improved_applicable) {
            double impr = std::max(0.0, pot.R_star(xi) - pot.R_star(pmax));
            rep.worst_improved_xi =
                std::min(rep.worst_improved_xi, impr - rstar_eff);
        }
    }
    rep.worst_margin =
        std::min({rep.worst_upper_v, rep.worst_lower_v, rep.worst_lower_xi,
                  rep.worst_upper_xi,
                  rep.improved_applicable ? rep.worst_improved_xi : inf});
    return rep;
}

}  // namespace wiggly
