#pragma once

#include "wiggly/contact.hpp"
#include "wiggly/potentials.hpp"
#include "wiggly/profiles.hpp"

#include <vector>

namespace wiggly {

struct PiecewiseAffine {
    std::vector<double> t;      // nodes
    std::vector<double> value;  // values at the nodes, affine between

    double operator()(double time) const;
    size_t intervals() const { return t.size() - 1; }
    double slope(size_t interval) const;
};

// One-period optimal cell path for speed |V| and frozen force Xi, obtained
// from the lagrange-route density a by inverting its cumulative integral.
// z increases from 0 to 1; the achieved one-period cost is cell_value().
// The orbit is phase-translatable, so a traversal may start at any y.
class ShapeFunction {
public:
    ShapeFunction(const DissipationPotential& pot, const WigglyProfile& prof,
                  double V, double Xi);

    double z(double s) const;      // s in [0,1]
    double s_of(double y) const;   // inverse arc-time of a phase y in [0,1]
    // winding-extended orbit: z_ext(s + k) = z_ext(s) + k
    double z_ext(double s) const;
    double cell_value() const { return cell_value_; }
    double multiplier() const { return h_; }

private:
    double h_ = 0.0;
    double cell_value_ = 0.0;
    bool affine_ = false;
    std::vector<double> s_grid_, z_grid_;
};

struct RecoveryPiece {
    double t0 = 0.0, t1 = 0.0;
    bool oscillatory = false;
    double u0 = 0.0;     // value at t0
    double V = 0.0;      // macroscopic slope of the block
    double Xi = 0.0;
    long periods = 0;    // full windings (oscillatory pieces)
    size_t shape_index = 0;
    double s0 = 0.0;     // starting arc-time of the orbit
    double slope = 0.0;  // bridge slope (affine pieces, equals V)
};

class RecoveryPath {
public:
    double eps = 0.0;
    std::vector<RecoveryPiece> pieces;
    std::vector<ShapeFunction> shapes;  // one per input interval
    DissipationPotential pot;
    WigglyProfile prof;

    double eval(double time) const;
    double sup_distance(const PiecewiseAffine& target, int samples = 4096) const;
    // J_eps along the constructed path: full windings are charged their
    // one-period cell cost; bridges are integrated directly
    double J_eps() const;
    long total_periods() const;

    RecoveryPath(DissipationPotential p, WigglyProfile pr)
        : pot(std::move(p)), prof(std::move(pr)) {}
};

// Oscillatory approximant of a piecewise-affine target (nonzero slopes) with
// piecewise-constant frozen force xi_hat (one value per interval of u_hat).
// Each interval carries all but one-to-two wiggle periods of optimal shape,
// phase-continued across intervals, and closes with a bridge of slope
// exactly V; the approximant agrees with the target at every interval node.
RecoveryPath build_recovery_sequence(const DissipationPotential& pot,
                                     const WigglyProfile& prof,
                                     const PiecewiseAffine& u_hat,
                                     const std::vector<double>& xi_hat,
                                     double eps);

// J_eps of the non-oscillating path u_hat itself
double lazy_path_J(const DissipationPotential& pot, const WigglyProfile& prof,
                   const PiecewiseAffine& u_hat,
                   const std::vector<double>& xi_hat, double eps);

// limit functional: sum over intervals of length * M(V_j, Xi_j)
double limit_J(const DissipationPotential& pot, const WigglyProfile& prof,
               const PiecewiseAffine& u_hat, const std::vector<double>& xi_hat);

struct GammaGapRow {
    double eps = 0.0;
    double J_recovery = 0.0;
    double J_lazy = 0.0;
    double gap_recovery = 0.0;  // J_recovery - J0
    double gap_lazy = 0.0;      // J_lazy - J0
    double sup_distance = 0.0;
};

struct GammaGapTable {
    double J0 = 0.0;
    std::vector<GammaGapRow> rows;
};

GammaGapTable gamma_gap(const DissipationPotential& pot,
                        const WigglyProfile& prof,
                        const PiecewiseAffine& u_hat,
                        const std::vector<double>& xi_hat,
                        const std::vector<double>& eps_list);

}  // namespace wiggly
