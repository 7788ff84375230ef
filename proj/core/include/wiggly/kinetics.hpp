#pragma once

#include "wiggly/potentials.hpp"
#include "wiggly/profiles.hpp"
#include "wiggly/quad.hpp"

#include <vector>

namespace wiggly {

// Breakpoints for one-period integrands built from y -> R*(xi - p(y)) or its
// derivatives: profile kinks, dual-piece boundaries pulled back through p,
// and dyadically graded panels around the points where |xi - p| is smallest.
// `w0` is the innermost panel width at those points; pass the depinning
// length scale when it is known, otherwise a small generic value.
std::vector<double> force_breakpoints(const DissipationPotential& pot,
                                      const WigglyProfile& prof, double xi,
                                      double w0);

// Effective kinetic relation K(xi) = harmonic mean over one period of
// y -> dR*(xi - p(y)); identically 0 on the sticking interval
// [p_min, p_max]. Exact weighted sum for discrete-valued profiles,
// graded adaptive quadrature otherwise.
double harmonic_mean_K(const DissipationPotential& pot,
                       const WigglyProfile& prof, double xi,
                       const QuadOptions& opt = {1e-11, 0.0, 12});

class KineticRelation {
public:
    KineticRelation(DissipationPotential pot, WigglyProfile prof);

    double K(double xi) const;
    double R_eff_star(double xi) const;  // integral of K from 0
    double R_eff(double v) const;        // Legendre conjugate, via K inversion
    double dR_eff(double v) const;       // force sustaining velocity v
    // Euler defect exponent: dR_eff(v) v = alpha(v) R_eff(v), alpha in [1,p],
    // alpha(0) := 1 by continuity.
    double alpha_of_v(double v) const;

    double sticking_lo() const { return prof_.p_min(); }
    double sticking_hi() const { return prof_.p_max(); }

    const DissipationPotential& potential() const { return pot_; }
    const WigglyProfile& profile() const { return prof_; }

private:
    DissipationPotential pot_;
    WigglyProfile prof_;
    QuadOptions opt_{1e-11, 0.0, 12};
};

// Alternating series constant S_alpha = 2 sum (-1)^n [1/(alpha n + 1)
// + 1/(alpha(n+1) - 1)], evaluated with convergence acceleration.
// S_2 = pi.
double depinning_series_constant(double alpha);

struct DepinningPrediction {
    double K = 0.0;          // leading-order K(xi)
    double exponent = 0.0;   // (alpha-1)/alpha
    double prefactor = 0.0;  // mu c*^{1/alpha} / S_alpha
    double S_alpha = 0.0;
};

// Leading-order depinning law for quadratic potentials and profiles with a
// unique maximum of local exponent alpha > 1. Throws for alpha <= 1 or
// non-quadratic potentials.
DepinningPrediction depinning_expansion(const DissipationPotential& pot,
                                        const WigglyProfile& prof, double xi);

// alpha = 1 (tent-type) branch: K ~ (c*/2) / log(1/(xi - p_max)).
double log_depinning_K(const DissipationPotential& pot,
                       const WigglyProfile& prof, double xi);

// K(xi) - dR*(xi); decays to 0 as |xi| -> infinity for quadratic potentials.
double large_xi_defect(const DissipationPotential& pot,
                       const WigglyProfile& prof, double xi);

struct BoundsReport {
    // min over the grids of (bound - value) or (value - bound); all must be
    // >= -tol for the sandwich to hold
    double worst_upper_v = 0.0;      // p_max v + R(v) - R_eff(v)
    double worst_lower_v = 0.0;      // R_eff(v) - B_low(v)
    double worst_lower_xi = 0.0;     // R_eff*(xi) - R*(xi - p_max)
    double worst_upper_xi = 0.0;     // R*(xi-p_min) - R*(p_max-p_min) - R_eff*
    double worst_improved_xi = 0.0;  // max{0, R*(xi) - R*(p_max)} - R_eff*
    bool improved_applicable = false;
    double worst_margin = 0.0;
};

BoundsReport bounds_report(const KineticRelation& rel,
                           const std::vector<double>& v_grid,
                           const std::vector<double>& xi_grid);

}  // namespace wiggly
