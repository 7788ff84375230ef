#pragma once

#include "wiggly/kinetics.hpp"
#include "wiggly/potentials.hpp"
#include "wiggly/profiles.hpp"

#include <vector>

namespace wiggly {

// zero-velocity contact value: min over pi in [p_min, p_max] of R*(xi - pi)
double m_zero(const DissipationPotential& pot, const WigglyProfile& prof,
              double xi);

// W(xi, h) = integral over one period of psi*(h - G(xi, z)) with
// G(xi, z) = R*(xi - p(z)), defined for h below the sticking level
// G_min(xi) = m_zero(xi). All partial derivatives are one-period integrals
// of closed-form integrands (exact weighted sums for discrete profiles).
class WFunction {
public:
    WFunction(DissipationPotential pot, WigglyProfile prof);

    double G(double xi, double z) const;
    double G_min(double xi) const;

    double value(double xi, double h) const;
    double dh(double xi, double h) const;
    double dhh(double xi, double h) const;
    double dxi(double xi, double h) const;
    double dxih(double xi, double h) const;
    double dxixi(double xi, double h) const;

    const DissipationPotential& potential() const { return pot_; }
    const WigglyProfile& profile() const { return prof_; }
    const PsiTransform& psi() const { return psi_; }

private:
    DissipationPotential pot_;
    WigglyProfile prof_;
    PsiTransform psi_;

    template <class Term>
    double cell_integral(double xi, double h, Term&& term) const;
};

struct MultiplierSolution {
    double h = 0.0;
    // no interior root: the optimal multiplier sits at the sticking level
    // (mass concentrates at the mobility minimum)
    bool at_boundary = false;
    double residual = 0.0;  // |v W_h - 1| at the returned h
};

// solve v W_h(xi, h) = 1 for h < G_min(xi); v > 0
MultiplierSolution solve_H(const WFunction& wf, double v, double xi);

enum class Route { LagrangeH, DensityA, CellZ, ZeroVelocity };

struct ContactEvaluation {
    double v = 0.0;
    double xi = 0.0;
    double M = 0.0;
    Route route = Route::LagrangeH;
    double h = 0.0;           // multiplier (LagrangeH only)
    bool at_boundary = false;
    double residual = 0.0;    // route-specific convergence estimate
    std::vector<double> grid;     // y- or s-nodes (descent routes)
    std::vector<double> minimizer;  // density a(y) or path z(s)
};

// primary route: one scalar root-find, M = h - v W(xi, h)
ContactEvaluation m_lagrange(const DissipationPotential& pot,
                             const WigglyProfile& prof, double v, double xi);

// independent oracle: projected convex descent on the inverse-slope density
ContactEvaluation m_density(const DissipationPotential& pot,
                            const WigglyProfile& prof, double v, double xi,
                            int n = 512);

// independent oracle: descent over winding paths z with n nodes;
// refuses discrete-valued profiles (the path integrand is non-smooth there)
ContactEvaluation m_cell_direct(const DissipationPotential& pot,
                                const WigglyProfile& prof, double v, double xi,
                                int n = 256);

// first-order coefficient M(v,xi) = M0(xi) + v M1(xi) + o(v):
// M1(xi) = integral of Psi(G(xi,y) - M0(xi)) dy
double m1_expansion(const DissipationPotential& pot,
                    const WigglyProfile& prof, double xi);

struct RateIndependentReport {
    std::vector<double> deltas;
    std::vector<double> values;      // (1/delta) M(delta v, xi)
    double limit_prediction = 0.0;   // |v| M1(xi) inside the sticking range
    bool inside_sticking = false;
    bool diverges = false;           // outside: values grow like M0/delta
};

RateIndependentReport m_rate_independent(const DissipationPotential& pot,
                                         const WigglyProfile& prof, double v,
                                         double xi,
                                         const std::vector<double>& deltas);

// weak x weak relaxation: R* acts on the period-averaged force. Jump
// profiles are regularized by thin linear layers before the path descent.
double m_weak(const DissipationPotential& pot, const WigglyProfile& prof,
              double v, double xi, int n = 256);

// M(v, dR_eff(v)) - v dR_eff(v); vanishes on the contact set
double contact_residual(const KineticRelation& rel, double v);

struct ConvexityReport {
    double worst_violation = 0.0;  // most negative midpoint defect
    double at_v = 0.0;
    double at_xi = 0.0;
};

enum class Direction { V, Xi };

ConvexityReport convexity_probe(const DissipationPotential& pot,
                                const WigglyProfile& prof, Direction dir,
                                const std::vector<double>& v_grid,
                                const std::vector<double>& xi_grid);

struct BipotentialPoint {
    double v = 0.0, xi = 0.0, M = 0.0;
    bool equality = false;   // M = v xi
    bool in_dv = false;      // xi in d_v M
    bool in_dxi = false;     // v in d_xi M
    bool consistent = false; // all three agree
};

struct BipotentialReport {
    std::vector<BipotentialPoint> points;
    int n_contact = 0;        // points where all three hold
    int n_separated = 0;      // points where all three fail
    int n_inconsistent = 0;   // mixed verdicts
};

BipotentialReport bipotential_check(const DissipationPotential& pot,
                                    const WigglyProfile& prof,
                                    const std::vector<std::pair<double, double>>& points,
                                    double tol_eq = 1e-6, double tol_d = 1e-4);

double m_eff(const KineticRelation& rel, double v, double xi);

struct MeffRow {
    double v, xi, M, Meff;
    bool on_contact;
};

struct MeffReport {
    std::vector<MeffRow> rows;
    double min_diff = 0.0;             // min of Meff - M over the grid
    double max_on_contact_diff = 0.0;  // max |Meff - M| on the contact set
};

MeffReport meff_comparison(const KineticRelation& rel,
                           const std::vector<std::pair<double, double>>& points,
                           double contact_tol = 1e-6);

}  // namespace wiggly
