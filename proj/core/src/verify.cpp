#include "wiggly/verify.hpp"

#include "wiggly/contact.hpp"
#include "wiggly/flow.hpp"
#include "wiggly/gradient_structures.hpp"
#include "wiggly/kinetics.hpp"
#include "wiggly/legendre.hpp"
#include "wiggly/quad.hpp"
#include "wiggly/recovery.hpp"

#include <cmath>
#include <sstream>

namespace wiggly {

int VerifySuite::passed() const {
    int n = 0;
    for (const auto& c : checks) n += c.pass ? 1 : 0;
    return n;
}

int VerifySuite::failed() const {
    return static_cast<int>(checks.size()) - passed();
}

bool VerifyReport::hard_failure() const {
    for (const auto& s : suites)
        for (const auto& c : s.checks)
            if (c.hard && !c.pass) return true;
    return false;
}

int VerifyReport::total_passed() const {
    int n = 0;
    for (const auto& s : suites) n += s.passed();
    return n;
}

int VerifyReport::total_failed() const {
    int n = 0;
    for (const auto& s : suites) n += s.failed();
    return n;
}

namespace {

struct SuiteBuilder {
    VerifySuite suite;

    // pass when value <= bound
    void upper(const std::string& name, double value, double bound,
               bool hard = true) {
        suite.checks.push_back({name, value <= bound, hard, value, bound});
    }
    // pass when value >= bound
    void lower(const std::string& name, double value, double bound,
               bool hard = true) {
        suite.checks.push_back({name, value >= bound, hard, value, bound});
    }
};

std::vector<double> linspace(double lo, double hi, int n) {
    std::vector<double> v(n);
    for (int i = 0; i < n; ++i) v[i] = lo + (hi - lo) * i / (n - 1);
    return v;
}

VerifySuite duality_suite(double scale) {
    SuiteBuilder b;
    b.suite.name = "duality";
    std::vector<DissipationPotential> pots = {
        DissipationPotential::quadratic(1.0),
        DissipationPotential::power_law(1.0, 3.0),
        DissipationPotential::power_law(2.0, 1.5),
        DissipationPotential::linear_stretch_dual()};
    double worst_gap = 0.0, worst_norm = 0.0, worst_convex = 0.0;
    for (const auto& pot : pots) {
        for (double v : linspace(-3.0, 3.0, 25)) {
            double xi = pot.dR(v);
            double g = young_fenchel_gap(pot, v, xi);
            worst_gap = std::max(worst_gap, g / (1.0 + std::fabs(v * xi)));
            worst_norm = std::max(worst_norm, std::fabs(pot.R(0.0)));
            worst_norm = std::max(worst_norm, -pot.R(v));
        }
        for (double v : linspace(-2.9, 2.9, 24)) {
            double mid = pot.R(v) + pot.R(v + 0.2) - 2.0 * pot.R(v + 0.1);
            worst_convex = std::min(worst_convex, mid);
        }
    }
    b.upper("fenchel equality on the subdifferential graph", worst_gap,
            1e-9 * scale);
    b.upper("R(0) = 0 and R >= 0", worst_norm, 1e-14 * scale);
    b.lower("midpoint convexity of R", worst_convex, -1e-12 * scale);

    // psi* closed forms against a brute-force supremum: grid scan over a
    // log-spaced s-grid plus golden-section refinement (the objective is
    // concave in s)
    double worst_psi = 0.0;
    for (const auto& pot : pots) {
        PsiTransform psi(pot);
        for (double sigma : {-0.3, -1.0, -2.0, -7.0}) {
            double brute = -kInf, s_best = 1.0;
            for (int i = 0; i <= 4000; ++i) {
                double s = std::pow(10.0, -6.0 + 12.0 * i / 4000.0);
                double vv = sigma * s - psi.psi(s);
                if (vv > brute) {
                    brute = vv;
                    s_best = s;
                }
            }
            double lo = s_best / std::pow(10.0, 12.0 / 4000.0);
            double hi = s_best * std::pow(10.0, 12.0 / 4000.0);
            for (int it = 0; it < 200; ++it) {
                double x1 = lo + (hi - lo) / 3.0, x2 = hi - (hi - lo) / 3.0;
                if (sigma * x1 - psi.psi(x1) < sigma * x2 - psi.psi(x2))
                    lo = x1;
                else
                    hi = x2;
            }
            double mid = 0.5 * (lo + hi);
            brute = std::max(brute, sigma * mid - psi.psi(mid));
            double closed = psi.psi_star(sigma);
            worst_psi = std::max(
                worst_psi, std::fabs(closed - brute) / (1.0 + std::fabs(closed)));
        }
    }
    b.upper("psi* matches brute-force supremum", worst_psi, 1e-6 * scale);

    // involution on even duals
    double worst_inv = 0.0;
    for (const auto& pot : pots) {
        PsiTransform psi(pot);
        for (double eta : linspace(0.1, 4.0, 17)) {
            double val = psi.psi_star(-pot.R_star(eta));
            worst_inv = std::max(worst_inv, std::fabs(val + eta));
        }
    }
    b.upper("psi*(-R*(eta)) = -eta", worst_inv, 1e-10 * scale);

    // double conjugation returns the convex envelope
    {
        SampledFunction f;
        f.x = linspace(-5.0, 5.0, 401);
        f.f.resize(f.x.size());
        for (size_t i = 0; i < f.x.size(); ++i)
            f.f[i] = std::cos(f.x[i]) + 0.3 * f.x[i] * f.x[i];
        auto envelope = convex_envelope(f);
        auto conj = legendre_transform(f, linspace(-4.0, 4.0, 301));
        auto back = legendre_transform(conj, f.x);
        double worst = 0.0;
        for (size_t i = 0; i < f.x.size(); ++i)
            worst = std::max(worst, std::fabs(back.f[i] - envelope.f[i]));
        // the xi grid truncates slopes beyond [-4, 4]; compare inside
        double worst_in = 0.0;
        for (size_t i = 0; i < f.x.size(); ++i)
            if (std::fabs(f.x[i]) < 2.0)
                worst_in = std::max(worst_in, std::fabs(back.f[i] - envelope.f[i]));
        b.upper("double conjugate = convex envelope", worst_in, 1e-9 * scale);
    }
    return b.suite;
}

VerifySuite profile_suite(const ExperimentConfig& cfg, double scale) {
    SuiteBuilder b;
    b.suite.name = "profiles";
    std::vector<WigglyProfile> profs = {
        WigglyProfile::sinusoidal(1.0), WigglyProfile::tent(1.0),
        WigglyProfile::two_valued(1.0),
        WigglyProfile::tabulated({0.0, 0.7, 1.0, 0.4, -0.2, -1.0, -0.9}),
        cfg.build_profile()};
    double worst_mean = 0.0, worst_range = 0.0, worst_kappa = 0.0,
           worst_deriv = 0.0;
    for (const auto& prof : profs) {
        double mean =
            integrate_split([&](double y) { return prof(y); }, 0.0, 1.0,
                            prof.kinks(), {1e-13, 0.0, 12})
                .value;
        worst_mean = std::max(worst_mean, std::fabs(mean));
        for (double y : linspace(0.0, 1.0, 257)) {
            worst_range = std::max(worst_range, prof(y) - prof.p_max());
            worst_range = std::max(worst_range, prof.p_min() - prof(y));
            worst_range = std::max(worst_range, std::fabs(prof(y) - prof(y + 1.0)));
        }
        worst_kappa =
            std::max(worst_kappa, std::fabs(prof.kappa(0.0) - prof.kappa(1.0)));
        if (!prof.is_discrete()) {
            for (double y : linspace(0.013, 0.987, 41)) {
                double fd =
                    (prof.kappa(y + 5e-7) - prof.kappa(y - 5e-7)) / 1e-6;
                worst_deriv = std::max(worst_deriv, std::fabs(fd - prof(y)));
            }
        }
    }
    b.upper("profiles have zero mean", worst_mean, 1e-10 * scale);
    b.upper("p stays within [p_min, p_max] and is 1-periodic", worst_range,
            1e-12 * scale);
    b.upper("kappa is 1-periodic", worst_kappa, 1e-12 * scale);
    b.upper("kappa' = p", worst_deriv, 1e-5 * scale);
    return b.suite;
}

VerifySuite same_flow_suite(double scale) {
    SuiteBuilder b;
    b.suite.name = "gradient-structures";
    auto check = same_flow_check(linspace(0.05, 3.0, 60));
    b.upper("four structures generate q' = 1 - q", check.max_defect,
            1e-9 * scale);
    return b.suite;
}

VerifySuite kinetics_suite(double scale) {
    SuiteBuilder b;
    b.suite.name = "kinetics";
    auto quad = DissipationPotential::quadratic(1.0);
    auto sine = WigglyProfile::sinusoidal(1.0);
    double worst = 0.0;
    for (double xi : linspace(1.05, 10.0, 60)) {
        double exact = std::sqrt(xi * xi - 1.0);
        worst = std::max(
            worst, std::fabs(harmonic_mean_K(quad, sine, xi) - exact) / exact);
    }
    b.upper("sinusoidal kinetic relation matches the closed form", worst,
            1e-6 * scale);

    auto two = WigglyProfile::two_valued(1.0);
    double worst2 = 0.0, worst_rstar = 0.0;
    KineticRelation rel2(quad, two);
    for (double xi : linspace(1.1, 5.0, 30)) {
        double exact = xi - 1.0 / xi;
        worst2 = std::max(
            worst2, std::fabs(harmonic_mean_K(quad, two, xi) - exact) / exact);
        double exact_star = 0.5 * (xi * xi - 1.0) - std::log(xi);
        worst_rstar =
            std::max(worst_rstar,
                     std::fabs(rel2.R_eff_star(xi) - exact_star) / exact_star);
    }
    b.upper("two-valued kinetic relation is exact", worst2, 1e-12 * scale);
    b.upper("two-valued integrated dual matches the closed form", worst_rstar,
            1e-8 * scale);

    double stick = std::fabs(harmonic_mean_K(quad, sine, 0.3)) +
                   std::fabs(harmonic_mean_K(quad, sine, -1.0)) +
                   std::fabs(harmonic_mean_K(quad, two, 0.99));
    b.upper("K vanishes on the sticking interval", stick, 0.0);

    b.upper("depinning series constant S_2 = pi",
            std::fabs(depinning_series_constant(2.0) - M_PI), 1e-10 * scale);

    double worst_sandwich = 0.0;
    for (double xi : linspace(1.01, 6.0, 25)) {
        double K = harmonic_mean_K(quad, sine, xi);
        worst_sandwich =
            std::max(worst_sandwich, quad.dR_star(xi - 1.0) - K);
        worst_sandwich =
            std::max(worst_sandwich, K - quad.dR_star(xi + 1.0));
    }
    b.upper("harmonic-mean sandwich", worst_sandwich, 1e-9 * scale);

    KineticRelation rel(quad, sine);
    double amin = kInf, amax = -kInf;
    for (double v : {1e-4, 1e-2, 1.0, 10.0, 1000.0}) {
        double a = rel.alpha_of_v(v);
        amin = std::min(amin, a);
        amax = std::max(amax, a);
    }
    b.lower("alpha(v) >= 1", amin, 1.0 - 1e-6);
    b.upper("alpha(v) <= p", amax, 2.0 + 1e-6);

    auto bounds = bounds_report(rel, linspace(0.1, 4.0, 12),
                                linspace(1.0, 6.0, 12));
    b.lower("effective potential sandwich bounds", bounds.worst_margin,
            -1e-8 * scale);
    return b.suite;
}

VerifySuite contact_suite(double scale) {
    SuiteBuilder b;
    b.suite.name = "contact";
    auto quad = DissipationPotential::quadratic(1.0);
    auto sine = WigglyProfile::sinusoidal(1.0);

    double worst_lb = kInf;
    double worst_sym = 0.0;
    for (double v : {0.0, 0.3, 1.0, 2.5}) {
        for (double xi : {-1.5, 0.0, 0.7, 1.2, 2.5}) {
            double M = m_lagrange(quad, sine, v, xi).M;
            worst_lb = std::min(worst_lb, M - v * xi);
            worst_lb = std::min(worst_lb, M - m_zero(quad, sine, xi));
            worst_sym = std::max(
                worst_sym, std::fabs(M - m_lagrange(quad, sine, -v, xi).M));
        }
    }
    b.lower("M >= v xi and M >= M(0, xi)", worst_lb, -1e-9 * scale);
    b.upper("M is even in v", worst_sym, 1e-10 * scale);

    double worst_routes = 0.0, worst_cell = 0.0;
    for (double v : {0.5, 1.0, 2.0}) {
        for (double xi : {0.0, 1.5}) {
            double Ml = m_lagrange(quad, sine, v, xi).M;
            double Md = m_density(quad, sine, v, xi, 256).M;
            double Mc = m_cell_direct(quad, sine, v, xi, 128).M;
            worst_routes =
                std::max(worst_routes, std::fabs(Ml - Md) / (1.0 + std::fabs(Ml)));
            worst_cell =
                std::max(worst_cell, std::fabs(Ml - Mc) / (1.0 + std::fabs(Ml)));
        }
    }
    b.upper("density route agrees with the multiplier route", worst_routes,
            1e-6 * scale);
    b.upper("cell route agrees with the multiplier route", worst_cell,
            1e-4 * scale);

    WFunction wf(quad, sine);
    double worst_sign = kInf, worst_ineq = kInf;
    for (double xi : {1.3, 2.0, 3.0}) {
        for (double frac : {0.2, 0.6, 0.9}) {
            double h = wf.G_min(xi) - std::pow(10.0, -3.0 * frac);
            worst_sign = std::min(worst_sign, wf.dh(xi, h));
            worst_sign = std::min(worst_sign, wf.dhh(xi, h));
            worst_sign = std::min(worst_sign, wf.dxih(xi, h));
            double lhs = wf.dxih(xi, h) * wf.dxih(xi, h);
            double rhs = wf.dhh(xi, h) * wf.dxixi(xi, h);
            worst_ineq = std::min(worst_ineq, lhs - rhs);
        }
    }
    b.lower("W_h, W_hh, W_xih positive above the sticking force", worst_sign,
            0.0);
    b.lower("W_xih^2 >= W_hh W_xixi (power law)", worst_ineq, -1e-9 * scale);

    KineticRelation rel(quad, sine);
    double worst_contact = 0.0;
    for (double v : {0.25, 1.0, 3.0})
        worst_contact = std::max(worst_contact, std::fabs(contact_residual(rel, v)));
    b.upper("contact set sits on the effective subdifferential graph",
            worst_contact, 1e-6 * scale);

    double M1 = m1_expansion(quad, sine, 0.0);
    b.upper("first-order coefficient at xi = 0", std::fabs(M1 - 2.0 / M_PI),
            1e-9 * scale);
    return b.suite;
}

VerifySuite flow_suite(const ExperimentConfig& cfg, double scale) {
    SuiteBuilder b;
    b.suite.name = "flow";
    auto quad = DissipationPotential::quadratic(1.0);
    FlowControls ctrl = cfg.build_controls();

    // kappa = 0, Phi = u^2/2: exact decay e^{-t}
    EnergyLandscape plain(Polynomial{{0.0, 0.0, 0.5}}, LoadTable::constant(0.0),
                          WigglyProfile::zero(), 0.0);
    Trajectory decay = integrate_wiggly(plain, quad, 1.0, 1.0, ctrl);
    b.upper("plain decay reproduces e^{-t}",
            std::fabs(decay.u.back() - std::exp(-1.0)), 1e-8 * scale);
    b.upper("plain decay energy balance", decay.edb_relative,
            cfg.tol_edb * scale);

    EnergyLandscape land = cfg.build_landscape(cfg.epsilon > 0 ? cfg.epsilon : 0.05);
    Trajectory wig =
        integrate_wiggly(land, cfg.build_potential(), cfg.u0, cfg.T, ctrl);
    b.upper("wiggly flow energy balance", wig.edb_relative,
            cfg.tol_edb * scale);

    // energy decreases under a constant load
    EnergyLandscape still(Polynomial{{0.0, 0.0, 0.5}}, LoadTable::constant(0.3),
                          WigglyProfile::sinusoidal(1.0), 0.05);
    Trajectory relax = integrate_wiggly(still, quad, 2.0, 1.0, ctrl);
    double worst_incr = 0.0;
    for (size_t i = 0; i + 1 < relax.energy.size(); ++i)
        worst_incr =
            std::max(worst_incr, relax.energy[i + 1] - relax.energy[i]);
    b.upper("energy nonincreasing under constant load", worst_incr,
            1e-10 * scale);

    // step refinement stays within the error budget
    FlowControls fine = ctrl;
    fine.rel_tol = ctrl.rel_tol / 10.0;
    Trajectory wig2 =
        integrate_wiggly(land, cfg.build_potential(), cfg.u0, cfg.T, fine);
    b.upper("step-halving consistency",
            std::fabs(wig.u.back() - wig2.u.back()),
            100.0 * ctrl.rel_tol * (1.0 + std::fabs(wig.u.back())) * scale);
    return b.suite;
}

VerifySuite recovery_suite(double scale) {
    SuiteBuilder b;
    b.suite.name = "recovery";
    auto quad = DissipationPotential::quadratic(1.0);
    auto sine = WigglyProfile::sinusoidal(1.0);
    PiecewiseAffine target{{0.0, 0.5, 1.0}, {0.0, 0.5, 0.0}};
    std::vector<double> xi_hat{0.0, 0.0};
    double eps = 0.025;
    RecoveryPath path = build_recovery_sequence(quad, sine, target, xi_hat, eps);
    b.upper("recovery path stays within 2 sqrt(eps)",
            path.sup_distance(target), 2.0 * std::sqrt(eps));
    double J0 = limit_J(quad, sine, target, xi_hat);
    double J = path.J_eps();
    b.lower("recovery dissipation above the limit value", J - J0,
            -1e-6 * scale);
    return b.suite;
}

VerifySuite conjecture_suite(const ExperimentConfig& cfg) {
    SuiteBuilder b;
    b.suite.name = "conjecture (soft)";
    auto quad = DissipationPotential::quadratic(1.0);
    auto two = WigglyProfile::two_valued(1.0);
    KineticRelation rel(quad, two);
    WFunction wf(quad, two);
    std::vector<std::pair<double, double>> pts;
    for (double xi : linspace(1.05, 3.0, 8)) {
        for (double h : linspace(-4.0, -0.05, 8)) {
            double v = 1.0 / wf.dh(xi, h);
            pts.push_back({v, xi});
        }
    }
    MeffReport rep = meff_comparison(rel, pts);
    b.lower("M <= M_eff on the sampled surface", rep.min_diff,
            -1e-8 * cfg.tol_scale, /*hard=*/false);
    b.upper("M = M_eff on the contact set", rep.max_on_contact_diff,
            1e-6 * cfg.tol_scale, /*hard=*/false);
    return b.suite;
}

}  // namespace

VerifyReport run_verification(const ExperimentConfig& cfg) {
    double scale = cfg.tol_scale;
    VerifyReport rep;
    rep.suites.push_back(duality_suite(scale));
    rep.suites.push_back(profile_suite(cfg, scale));
    rep.suites.push_back(same_flow_suite(scale));
    rep.suites.push_back(kinetics_suite(scale));
    rep.suites.push_back(contact_suite(scale));
    rep.suites.push_back(flow_suite(cfg, scale));
    rep.suites.push_back(recovery_suite(scale));
    rep.suites.push_back(conjecture_suite(cfg));
    return rep;
}

std::string format_report(const VerifyReport& rep) {
    std::ostringstream os;
    for (const auto& s : rep.suites) {
        os << s.name << ": " << s.passed() << "/" << s.checks.size()
           << " checks passed\n";
        for (const auto& c : s.checks) {
            if (c.pass) continue;
            os << (c.hard ? "  FAIL " : "  warn ") << c.name
               << " (value " << c.value << ", bound " << c.bound << ")\n";
        }
    }
    os << (rep.hard_failure() ? "RESULT: FAIL" : "RESULT: PASS") << " ("
       << rep.total_passed() << " passed, " << rep.total_failed()
       << " failed)\n";
    return os.str();
}

}  // namespace wiggly
