#pragma once

#include <limits>
#include <utility>
#include <vector>

namespace wiggly {

// One piece of a piecewise dual potential R*(eta), parametrized on eta >= 0.
// The whole curve is extended evenly to eta < 0.
struct DualPiece {
    enum class Form { Quadratic, Linear, SqrtShift };
    double lo = 0.0;
    double hi = 0.0;  // +inf allowed on the last piece
    Form form = Form::Quadratic;
    // Quadratic:  a*eta^2 + b*eta + c
    // Linear:     b*eta + c
    // SqrtShift:  c - a*sqrt(s - eta)
    double a = 0.0, b = 0.0, c = 0.0, s = 0.0;

    double value(double eta) const;
    double slope(double eta) const;
    double curvature(double eta) const;
    double invert_value(double m) const;   // solve value(eta) = m on [lo, hi]
    double invert_slope(double v) const;   // solve slope(eta) = v on [lo, hi]
};

// Convex dissipation potential v -> R(v) with R(0) = 0, R >= 0, even in v,
// together with its Legendre-Fenchel dual acting on forces.
class DissipationPotential {
public:
    enum class Kind { PowerLaw, Quadratic, TabulatedDual };

    // R(v) = (r/p) |v|^p, p > 1. Dual: R*(xi) = (mu/p') |xi|^{p'},
    // mu = r^{1/(1-p)}, p' = p/(p-1).
    static DissipationPotential power_law(double r, double p);
    // R(v) = (nu/2) v^2, the p = 2 special case.
    static DissipationPotential quadratic(double nu);
    // R* given piecewise on eta >= 0 (even extension); R recovered by
    // conjugacy. Pieces must be contiguous with nondecreasing slopes.
    static DissipationPotential tabulated_dual(std::vector<DualPiece> pieces);
    // Catalog instance whose dual has a flat-slope stretch: quadratic core,
    // a linear run on [1,3], a sqrt approach to slope 4 on [3,6], and a C^2
    // quadratic continuation beyond.
    static DissipationPotential linear_stretch_dual();

    Kind kind() const { return kind_; }
    bool is_power_law() const { return kind_ != Kind::TabulatedDual; }
    double growth_exponent() const { return p_; }       // p
    double dual_exponent() const { return p_ / (p_ - 1.0); }
    double coercivity_lower() const { return c1_; }
    double coercivity_upper() const { return c2_; }
    double rate_coefficient() const { return r_; }      // r (or nu)

    double R(double v) const;
    double dR(double v) const;
    double ddR(double v) const;

    double R_star(double xi) const;
    double dR_star(double xi) const;
    // (left, right) slope of R*; they differ only at kinks of tabulated duals.
    std::pair<double, double> dR_star_interval(double xi) const;
    double ddR_star(double xi) const;

    // Psi: inverse of R* restricted to [0, inf).
    double inv_R_star(double m) const;

    // interior piece boundaries of a tabulated dual (empty for power laws)
    std::vector<double> dual_breakpoints() const;

    // rescaled potential v -> R(delta v)/delta (rate-independent limit family)
    DissipationPotential rescaled(double delta) const;

private:
    Kind kind_ = Kind::Quadratic;
    double r_ = 1.0;
    double p_ = 2.0;
    double mu_ = 1.0;
    double c1_ = 0.5, c2_ = 0.5;
    std::vector<DualPiece> pieces_;

    const DualPiece& piece_for_value(double eta) const;
    const DualPiece& piece_for_level(double m) const;
};

// R(v) + R*(xi) - v xi  (>= 0, zero exactly on the subdifferential graph).
double young_fenchel_gap(const DissipationPotential& pot, double v, double xi);

// psi(rho) = |rho| R(1/rho) on the chosen half-line, +inf outside, together
// with its Legendre dual on sigma <= 0. For even potentials psi* coincides
// with sigma -> -Psi(-sigma) where Psi inverts R* on [0, inf).
class PsiTransform {
public:
    enum class Branch { Plus, Minus };

    explicit PsiTransform(DissipationPotential pot,
                          Branch branch = Branch::Plus);

    double psi(double rho) const;
    double psi_star(double sigma) const;     // throws std::domain_error if sigma > 0
    double dpsi_star(double sigma) const;
    double ddpsi_star(double sigma) const;

    Branch branch() const { return branch_; }
    const DissipationPotential& potential() const { return pot_; }

private:
    DissipationPotential pot_;
    Branch branch_;
};

inline constexpr double kInf = std::numeric_limits<double>::infinity();

}  // namespace wiggly
