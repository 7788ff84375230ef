#include "wiggly/kinetics.hpp"

#include "wiggly/quad.hpp"

#include <doctest.h>

#include <cmath>

using namespace wiggly;

namespace {

double fit_loglog_slope(const std::vector<double>& x,
                        const std::vector<double>& y, double* intercept) {
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    size_t n = x.size();
    for (size_t i = 0; i < n; ++i) {
        double lx = std::log(x[i]), ly = std::log(y[i]);
        sx += lx;
        sy += ly;
        sxx += lx * lx;
        sxy += lx * ly;
    }
    double slope = (n * sxy - sx * sy) / (n * sxx - sx * sx);
    if (intercept) *intercept = std::exp((sy - slope * sx) / n);
    return slope;
}

}  // namespace

TEST_CASE("closed-form kinetic relation, quadratic + sinusoidal") {
    for (double mu : {0.5, 1.0, 2.0}) {
        for (double amp : {0.5, 1.0, 2.0}) {
            auto pot = DissipationPotential::quadratic(1.0 / mu);
            auto prof = WigglyProfile::sinusoidal(amp);
            for (int i = 0; i < 40; ++i) {
                double xi = 1.05 * amp + (10.0 - 1.05) * amp * i / 39.0;
                double exact = mu * std::sqrt(xi * xi - amp * amp);
                CHECK(harmonic_mean_K(pot, prof, xi) ==
                      doctest::Approx(exact).epsilon(1e-6));
            }
            // odd symmetry of the relation
            CHECK(harmonic_mean_K(pot, prof, -2.0 * amp) ==
                  doctest::Approx(-mu * std::sqrt(3.0) * amp).epsilon(1e-6));
        }
    }
}

TEST_CASE("two-valued profile: exact weighted sums") {
    auto pot = DissipationPotential::quadratic(1.0);
    auto prof = WigglyProfile::two_valued(1.0);
    CHECK(harmonic_mean_K(pot, prof, 2.0) ==
          doctest::Approx(1.5).epsilon(1e-14));
    for (double xi : {1.01, 1.5, 3.0, 5.0})
        CHECK(harmonic_mean_K(pot, prof, xi) ==
              doctest::Approx(xi - 1.0 / xi).epsilon(1e-13));
    CHECK(harmonic_mean_K(pot, prof, 0.5) == 0.0);
    KineticRelation rel(pot, prof);
    for (double xi : {1.2, 2.0, 5.0}) {
        double exact = 0.5 * (xi * xi - 1.0) - std::log(xi);
        CHECK(rel.R_eff_star(xi) == doctest::Approx(exact).epsilon(1e-8));
    }
    // R_eff(1) = (1 + sqrt 5)/4 + asinh(1/2)
    double exact_reff = 0.25 * (1.0 + std::sqrt(5.0)) + std::asinh(0.5);
    CHECK(rel.R_eff(1.0) == doctest::Approx(exact_reff).epsilon(1e-9));
}

TEST_CASE("sticking interval forces zero velocity") {
    auto pot = DissipationPotential::quadratic(1.0);
    for (const auto& prof :
         {WigglyProfile::sinusoidal(1.0), WigglyProfile::two_valued(1.0),
          WigglyProfile::tent(1.0)}) {
        CHECK(harmonic_mean_K(pot, prof, 0.5 * (prof.p_min() + prof.p_max())) ==
              0.0);
        CHECK(harmonic_mean_K(pot, prof, prof.p_max()) == 0.0);
        CHECK(harmonic_mean_K(pot, prof, prof.p_min()) == 0.0);
    }
}

TEST_CASE("integrated dual against an independent quadrature oracle") {
    auto pot = DissipationPotential::quadratic(1.0);
    auto prof = WigglyProfile::sinusoidal(1.0);
    KineticRelation rel(pot, prof);
    // oracle: integrate the closed form sqrt(eta^2 - 1) adaptively
    double xi = std::sqrt(2.0);
    double oracle =
        integrate([&](double eta) { return std::sqrt(eta * eta - 1.0); }, 1.0,
                  xi, {1e-13, 0.0, 12})
            .value;
    double closed = 0.5 * (xi * std::sqrt(xi * xi - 1.0) -
                           std::log(xi + std::sqrt(xi * xi - 1.0)));
    CHECK(oracle == doctest::Approx(closed).epsilon(1e-10));
    CHECK(rel.R_eff_star(xi) == doctest::Approx(closed).epsilon(1e-7));
    CHECK(rel.R_eff_star(1.0) == 0.0);

    // R_eff(1) = (sqrt 2 + asinh 1)/2, the arc of the closed-form integrand
    double reff_exact = 0.5 * (std::sqrt(2.0) + std::asinh(1.0));
    CHECK(rel.R_eff(1.0) == doctest::Approx(reff_exact).epsilon(1e-8));
    double oracle_reff =
        integrate([&](double v) { return std::sqrt(1.0 + v * v); }, 0.0, 1.0,
                  {1e-13, 0.0, 12})
            .value;
    CHECK(rel.R_eff(1.0) == doctest::Approx(oracle_reff).epsilon(1e-8));
    CHECK(rel.R_eff(0.0) == 0.0);
}

TEST_CASE("depinning series constant") {
    CHECK(depinning_series_constant(2.0) == doctest::Approx(M_PI).epsilon(1e-12));
    // direct partial sums bracket the accelerated value (alternating series)
    for (double alpha : {1.5, 3.0}) {
        double s = depinning_series_constant(alpha);
        auto term = [&](int k) {
            return 1.0 / (alpha * k + 1.0) + 1.0 / (alpha * (k + 1) - 1.0);
        };
        double even = 0.0;
        for (int k = 0; k < 200000; k += 2) even += term(k) - term(k + 1);
        even *= 2.0;
        CHECK(s == doctest::Approx(even).epsilon(1e-4));
    }
}

TEST_CASE("depinning expansion matches the kinetic relation near onset") {
    auto pot = DissipationPotential::quadratic(1.0);
    auto prof = WigglyProfile::sinusoidal(1.0);
    auto pred = depinning_expansion(pot, prof, 1.0 + 1e-4);
    CHECK(pred.exponent == doctest::Approx(0.5));
    CHECK(pred.S_alpha == doctest::Approx(M_PI).epsilon(1e-12));
    CHECK(pred.prefactor == doctest::Approx(std::sqrt(2.0)).epsilon(1e-12));
    CHECK(pred.K ==
          doctest::Approx(std::sqrt(2.0) * 1e-2).epsilon(1e-3));
    CHECK(depinning_expansion(pot, prof, 0.5).K == 0.0);

    std::vector<double> deltas, Ks;
    for (double d = 1e-6; d < 2e-3; d *= 4.0) {
        deltas.push_back(d);
        Ks.push_back(harmonic_mean_K(pot, prof, 1.0 + d));
    }
    double prefactor = 0.0;
    double slope = fit_loglog_slope(deltas, Ks, &prefactor);
    CHECK(slope == doctest::Approx(0.5).epsilon(0.04));
    CHECK(prefactor == doctest::Approx(std::sqrt(2.0)).epsilon(0.02));

    CHECK_THROWS(depinning_expansion(pot, WigglyProfile::tent(1.0), 1.1));
    CHECK_THROWS(depinning_expansion(pot, WigglyProfile::two_valued(1.0), 1.1));
    CHECK_THROWS(depinning_expansion(DissipationPotential::power_law(1.0, 3.0),
                                     prof, 1.1));
}

TEST_CASE("depinning slope for synthetic peak exponents") {
    auto pot = DissipationPotential::quadratic(1.0);
    for (double alpha : {1.5, 2.0, 3.0}) {
        auto prof = WigglyProfile::power_peak(alpha);
        std::vector<double> deltas, Ks;
        for (double d = 1e-6; d < 2e-3; d *= 3.0) {
            deltas.push_back(d);
            Ks.push_back(harmonic_mean_K(pot, prof, prof.p_max() + d));
        }
        double slope = fit_loglog_slope(deltas, Ks, nullptr);
        CHECK(slope == doctest::Approx((alpha - 1.0) / alpha).epsilon(0.03));
    }
}

TEST_CASE("logarithmic depinning for the tent profile") {
    auto pot = DissipationPotential::quadratic(1.0);
    auto prof = WigglyProfile::tent(1.0);
    // exact harmonic integral over the tent: K = 2 / log((2+d)/d)
    for (double d : {1e-3, 1e-6, 1e-9}) {
        double exact = 2.0 / std::log((2.0 + d) / d);
        CHECK(harmonic_mean_K(pot, prof, 1.0 + d) ==
              doctest::Approx(exact).epsilon(1e-8));
        double pred = log_depinning_K(pot, prof, 1.0 + d);
        CHECK(pred == doctest::Approx(2.0 / std::log(1.0 / d)).epsilon(1e-9));
        // leading order only: relative error decays like 1/log(1/d)
        CHECK(std::fabs(pred / exact - 1.0) <=
              1.1 * std::log(2.0 + d) / std::log(1.0 / d));
    }
    // halving the excess only shifts the logarithm
    double k1 = log_depinning_K(pot, prof, 1.0 + 1e-6);
    double k2 = log_depinning_K(pot, prof, 1.0 + 5e-7);
    CHECK(k2 < k1);
    CHECK(k1 / k2 == doctest::Approx(std::log(2e6) / std::log(1e6)).epsilon(1e-9));
    CHECK_THROWS(log_depinning_K(pot, prof, 0.9));
}

TEST_CASE("kinetic relation approaches the bare mobility at large force") {
    auto pot = DissipationPotential::quadratic(1.0);
    CHECK(std::fabs(large_xi_defect(pot, WigglyProfile::sinusoidal(1.0),
                                    100.0)) < 0.01);
    for (double xi : {5.0, 10.0, 50.0})
        CHECK(large_xi_defect(pot, WigglyProfile::two_valued(1.0), xi) ==
              doctest::Approx(-1.0 / xi).epsilon(1e-12));
    CHECK(large_xi_defect(pot, WigglyProfile::zero(), 7.0) == 0.0);
    // decreasing along a geometric sequence
    double prev = 1e300;
    for (double xi = 4.0; xi < 300.0; xi *= 2.0) {
        double d = std::fabs(
            large_xi_defect(pot, WigglyProfile::sinusoidal(1.0), xi));
        CHECK(d < prev);
        prev = d;
    }
}

TEST_CASE("harmonic-mean sandwich bounds") {
    auto pot = DissipationPotential::quadratic(1.0);
    auto prof = WigglyProfile::sinusoidal(1.0);
    for (double xi = 1.0; xi <= 8.0; xi += 0.35) {
        double K = harmonic_mean_K(pot, prof, xi);
        CHECK(K >= pot.dR_star(xi - prof.p_max()) - 1e-10);
        CHECK(K <= pot.dR_star(xi - prof.p_min()) + 1e-10);
    }
}

TEST_CASE("effective potential bounds report") {
    std::vector<double> vgrid, xigrid;
    for (int i = 0; i < 14; ++i) {
        vgrid.push_back(0.05 * std::pow(1.6, i));
        xigrid.push_back(1.0 + 0.4 * i);
    }
    for (auto pot : {DissipationPotential::quadratic(1.0),
                     DissipationPotential::power_law(1.0, 3.0)}) {
        KineticRelation rel(pot, WigglyProfile::sinusoidal(1.0));
        auto rep = bounds_report(rel, vgrid, xigrid);
        CHECK(rep.worst_margin >= -1e-8);
        CHECK(rep.improved_applicable);
    }
    // spot values: R_eff(1) <= p_max + R(1) and R*(xi - p_max) <= R_eff*(xi)
    KineticRelation rel(DissipationPotential::quadratic(1.0),
                        WigglyProfile::sinusoidal(1.0));
    CHECK(rel.R_eff(1.0) <= 1.0 + 0.5 + 1e-12);
    CHECK(rel.R_eff_star(2.0) >= 0.5 - 1e-12);
    // no wiggle: all bounds collapse, R_eff = R
    KineticRelation plain(DissipationPotential::quadratic(1.0),
                          WigglyProfile::zero());
    for (double v : {0.3, 1.0, 2.5})
        CHECK(plain.R_eff(v) == doctest::Approx(0.5 * v * v).epsilon(1e-10));
}

TEST_CASE("homogeneity defect exponent alpha(v)") {
    auto pot = DissipationPotential::quadratic(1.0);
    KineticRelation rel(pot, WigglyProfile::sinusoidal(1.0));
    CHECK(rel.alpha_of_v(0.0) == 1.0);
    CHECK(rel.alpha_of_v(1e-6) == doctest::Approx(1.0).epsilon(1e-3));
    CHECK(rel.alpha_of_v(1e3) == doctest::Approx(2.0).epsilon(1e-2));
    double lo = 1.0, hi = 2.0;
    for (double v = 1e-5; v < 1e4; v *= 10.0) {
        double a = rel.alpha_of_v(v);
        CHECK(a >= lo - 1e-6);
        CHECK(a <= hi + 1e-6);
    }
    // trivial profile: Euler's identity gives alpha = p exactly
    KineticRelation plain(DissipationPotential::power_law(1.0, 3.0),
                          WigglyProfile::zero());
    for (double v : {0.2, 1.0, 30.0})
        CHECK(plain.alpha_of_v(v) == doctest::Approx(3.0).epsilon(1e-9));
}

TEST_CASE("pinned selection for peaks flatter than linear") {
    // alpha < 1: the kinetic relation jumps at the depinning force
    auto pot = DissipationPotential::quadratic(1.0);
    auto prof = WigglyProfile::power_peak(0.5);
    double sigma_star = harmonic_mean_K(pot, prof, prof.p_max() + 1e-12);
    CHECK(sigma_star > 0.01);
    KineticRelation rel(pot, prof);
    // velocities below the jump are sustained exactly at the boundary force
    CHECK(rel.dR_eff(0.5 * sigma_star) ==
          doctest::Approx(prof.p_max()).epsilon(1e-10));
}
