#include "wiggly/potentials.hpp"

#include <doctest.h>

#include <cmath>
#include <stdexcept>

using namespace wiggly;

namespace {

// concave in s: golden-section refinement after a coarse grid scan
double brute_psi_star(const wiggly::PsiTransform& ps, double sigma) {
    double best = -1e300, s_best = 1.0;
    for (int i = 0; i <= 6000; ++i) {
        double s = std::pow(10.0, -6.0 + 12.0 * i / 6000.0);
        double val = sigma * s - ps.psi(s);
        if (val > best) {
            best = val;
            s_best = s;
        }
    }
    double lo = s_best / std::pow(10.0, 12.0 / 6000.0);
    double hi = s_best * std::pow(10.0, 12.0 / 6000.0);
    const double phi = 0.5 * (std::sqrt(5.0) - 1.0);
    double x1 = hi - phi * (hi - lo), x2 = lo + phi * (hi - lo);
    double f1 = sigma * x1 - ps.psi(x1), f2 = sigma * x2 - ps.psi(x2);
    for (int it = 0; it < 200; ++it) {
        if (f1 < f2) {
            lo = x1;
            x1 = x2;
            f1 = f2;
            x2 = lo + phi * (hi - lo);
            f2 = sigma * x2 - ps.psi(x2);
        } else {
            hi = x2;
            x2 = x1;
            f2 = f1;
            x1 = hi - phi * (hi - lo);
            f1 = sigma * x1 - ps.psi(x1);
        }
    }
    return std::max(best, std::max(f1, f2));
}

}  // namespace


TEST_CASE("power-law and quadratic evaluation") {
    auto quad = DissipationPotential::quadratic(1.0);
    CHECK(quad.R(2.0) == doctest::Approx(2.0).epsilon(1e-14));
    CHECK(quad.R(0.0) == 0.0);
    CHECK(quad.R_star(3.0) == doctest::Approx(4.5).epsilon(1e-14));
    CHECK(quad.R_star(0.0) == 0.0);
    CHECK(quad.dR_star(2.0) == doctest::Approx(2.0));
    CHECK(quad.dR_star(0.0) == 0.0);

    auto cubic = DissipationPotential::power_law(1.0, 3.0);
    CHECK(cubic.R(2.0) == doctest::Approx(8.0 / 3.0).epsilon(1e-14));
    CHECK(young_fenchel_gap(cubic, 1.0, 1.0) ==
          doctest::Approx(0.0).epsilon(1e-12));

    // R = v^2/(2 mu): dR*(xi) = mu xi
    auto scaled = DissipationPotential::quadratic(1.0 / 3.0);
    CHECK(scaled.dR_star(1.0) == doctest::Approx(3.0).epsilon(1e-14));
}

TEST_CASE("fenchel gap is nonnegative, zero on the graph") {
    auto quad = DissipationPotential::quadratic(1.0);
    CHECK(young_fenchel_gap(quad, 2.0, 2.0) ==
          doctest::Approx(0.0).epsilon(1e-14));
    CHECK(young_fenchel_gap(quad, 0.0, 1.0) == doctest::Approx(0.5));
    for (double v : {-2.0, -0.5, 0.0, 0.7, 3.0})
        for (double xi : {-1.5, 0.0, 0.4, 2.0})
            CHECK(young_fenchel_gap(quad, v, xi) >= -1e-14);
}

TEST_CASE("duality round trip on a sampled grid") {
    for (auto pot : {DissipationPotential::power_law(0.7, 2.5),
                     DissipationPotential::quadratic(2.0),
                     DissipationPotential::linear_stretch_dual()}) {
        for (double v = -3.0; v <= 3.0; v += 0.37) {
            // (R*)*(v) = sup_xi (v xi - R*(xi)) evaluated by scan
            double best = -1e300;
            for (double xi = -40.0; xi <= 40.0; xi += 1e-3)
                best = std::max(best, v * xi - pot.R_star(xi));
            CHECK(pot.R(v) == doctest::Approx(best).epsilon(2e-5));
        }
    }
}

TEST_CASE("coercivity sandwich on a sampled grid") {
    for (auto pot : {DissipationPotential::power_law(1.0, 3.0),
                     DissipationPotential::quadratic(0.5),
                     DissipationPotential::linear_stretch_dual()}) {
        double p = pot.growth_exponent();
        for (double v = -4.0; v <= 4.0; v += 0.21) {
            double R = pot.R(v);
            double vp = std::pow(std::fabs(v), p);
            CHECK(R >= pot.coercivity_lower() * (vp - 1.0) - 1e-12);
            CHECK(R <= pot.coercivity_upper() * (1.0 + vp) + 1e-12);
        }
    }
}

TEST_CASE("tabulated dual reproduces the piecewise closed forms") {
    auto pot = DissipationPotential::linear_stretch_dual();
    CHECK(pot.R_star(2.0) == doctest::Approx(3.0).epsilon(1e-14));
    CHECK(pot.R_star(0.5) == doctest::Approx(0.25).epsilon(1e-14));
    CHECK(pot.R_star(4.0) ==
          doctest::Approx(21.0 - 8.0 * std::sqrt(3.0)).epsilon(1e-14));
    CHECK(pot.R_star(-2.0) == pot.R_star(2.0));
    // conjugate pieces
    CHECK(pot.R(1.0) == doctest::Approx(0.25).epsilon(1e-14));   // v^2/4
    CHECK(pot.R(3.0) == doctest::Approx(7.0 * 3 + 16.0 / 3 - 21).epsilon(1e-14));
    CHECK(pot.R(5.0) == doctest::Approx(25.0 / 4 + 20.0 - 9.0).epsilon(1e-14));
    // kink of R at v = 2: subdifferential of R* has a slope plateau
    CHECK(pot.R(2.0) == doctest::Approx(1.0).epsilon(1e-14));
    auto [lo, hi] = pot.dR_star_interval(1.0);
    CHECK(lo == doctest::Approx(2.0));
    CHECK(hi == doctest::Approx(2.0));
}

TEST_CASE("psi transform closed forms") {
    auto quad = DissipationPotential::quadratic(1.0);
    PsiTransform psi(quad);
    CHECK(psi.psi_star(-2.0) == doctest::Approx(-2.0).epsilon(1e-14));
    CHECK(psi.psi_star(0.0) == 0.0);
    CHECK_THROWS_AS(psi.psi_star(0.5), std::domain_error);

    auto tab = DissipationPotential::linear_stretch_dual();
    PsiTransform psi_tab(tab);
    CHECK(psi_tab.psi_star(-3.0) == doctest::Approx(-2.0).epsilon(1e-14));
    CHECK(psi_tab.psi_star(-0.25) == doctest::Approx(-0.5).epsilon(1e-14));
    CHECK(psi_tab.psi_star(-9.0) ==
          doctest::Approx((81.0 - 42.0 * 9.0 - 7.0) / 64.0).epsilon(1e-13));

    // brute-force supremum over a log-spaced grid
    for (auto pot : {quad, DissipationPotential::power_law(1.0, 3.0), tab}) {
        PsiTransform ps(pot);
        for (double sigma : {-0.5, -2.0, -6.0}) {
            double brute = brute_psi_star(ps, sigma);
            CHECK(ps.psi_star(sigma) == doctest::Approx(brute).epsilon(1e-6));
        }
    }
}

TEST_CASE("psi* decay and involution") {
    for (auto pot : {DissipationPotential::quadratic(1.0),
                     DissipationPotential::power_law(2.0, 1.5),
                     DissipationPotential::linear_stretch_dual()}) {
        PsiTransform psi(pot);
        for (double eta = 0.25; eta < 5.0; eta += 0.5)
            CHECK(psi.psi_star(-pot.R_star(eta)) ==
                  doctest::Approx(-eta).epsilon(1e-10));
        // psi(rho) -> 0 as rho -> infinity (dR(0) = 0)
        CHECK(psi.psi(1e12) < 1e-3);
        CHECK(psi.psi(1e12) < psi.psi(1e6));
        CHECK(psi.psi(-1.0) == kInf);
        CHECK(psi.psi(0.0) == kInf);
    }
}

TEST_CASE("psi* derivatives are consistent with finite differences") {
    for (auto pot : {DissipationPotential::quadratic(1.0),
                     DissipationPotential::power_law(1.0, 3.0)}) {
        PsiTransform psi(pot);
        for (double sigma : {-0.7, -2.3, -11.0}) {
            double h = 1e-6 * std::fabs(sigma);
            double fd =
                (psi.psi_star(sigma + h) - psi.psi_star(sigma - h)) / (2 * h);
            CHECK(psi.dpsi_star(sigma) == doctest::Approx(fd).epsilon(1e-7));
            double fd2 = (psi.dpsi_star(sigma + h) - psi.dpsi_star(sigma - h)) /
                         (2 * h);
            CHECK(psi.ddpsi_star(sigma) == doctest::Approx(fd2).epsilon(1e-5));
        }
    }
}

TEST_CASE("rescaled potential implements the rate-independent family") {
    auto pot = DissipationPotential::power_law(1.5, 2.5);
    auto resc = pot.rescaled(0.25);
    for (double v : {0.3, 1.0, 4.0})
        CHECK(resc.R(v) == doctest::Approx(pot.R(0.25 * v) / 0.25).epsilon(1e-13));
}
