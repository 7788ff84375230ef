#include "wiggly/potentials.hpp"

#include <cmath>
#include <stdexcept>

namespace wiggly {

double DualPiece::value(double eta) const {
    switch (form) {
        case Form::Quadratic: return (a * eta + b) * eta + c;
        case Form::Linear: return b * eta + c;
        case Form::SqrtShift: return c - a * std::sqrt(s - eta);
    }
    return 0.0;
}

double DualPiece::slope(double eta) const {
    switch (form) {
        case Form::Quadratic: return 2.0 * a * eta + b;
        case Form::Linear: return b;
        case Form::SqrtShift: return 0.5 * a / std::sqrt(s - eta);
    }
    return 0.0;
}

double DualPiece::curvature(double eta) const {
    switch (form) {
        case Form::Quadratic: return 2.0 * a;
        case Form::Linear: return 0.0;
        case Form::SqrtShift: return 0.25 * a / std::pow(s - eta, 1.5);
    }
    return 0.0;
}

double DualPiece::invert_value(double m) const {
    switch (form) {
        case Form::Quadratic: {
            // increasing branch of a*eta^2 + b*eta + c = m
            double disc = b * b - 4.0 * a * (c - m);
            return (-b + std::sqrt(std::max(disc, 0.0))) / (2.0 * a);
        }
        case Form::Linear: return (m - c) / b;
        case Form::SqrtShift: {
            double t = (c - m) / a;
            return s - t * t;
        }
    }
    return 0.0;
}

double DualPiece::invert_slope(double v) const {
    switch (form) {
        case Form::Quadratic: return (v - b) / (2.0 * a);
        case Form::Linear: return lo;  // any point of the plateau
        case Form::SqrtShift: {
            double t = 0.5 * a / v;
            return s - t * t;
        }
    }
    return 0.0;
}

DissipationPotential DissipationPotential::power_law(double r, double p) {
    if (!(r > 0.0) || !(p > 1.0))
        throw std::invalid_argument("power_law: need r > 0 and p > 1");
    DissipationPotential pot;
    pot.kind_ = Kind::PowerLaw;
    pot.r_ = r;
    pot.p_ = p;
    pot.mu_ = std::pow(r, 1.0 / (1.0 - p));
    pot.c1_ = pot.c2_ = r / p;
    return pot;
}

DissipationPotential DissipationPotential::quadratic(double nu) {
    DissipationPotential pot = power_law(nu, 2.0);
    pot.kind_ = Kind::Quadratic;
    return pot;
}

DissipationPotential DissipationPotential::tabulated_dual(
    std::vector<DualPiece> pieces) {
    if (pieces.empty())
        throw std::invalid_argument("tabulated_dual: no pieces");
    if (pieces.front().lo != 0.0)
        throw std::invalid_argument("tabulated_dual: pieces must start at 0");
    for (size_t i = 0; i + 1 < pieces.size(); ++i) {
        if (pieces[i].hi != pieces[i + 1].lo)
            throw std::invalid_argument("tabulated_dual: pieces not contiguous");
    }
    DissipationPotential pot;
    pot.kind_ = Kind::TabulatedDual;
    pot.pieces_ = std::move(pieces);
    pot.p_ = 2.0;
    pot.r_ = 1.0;
    pot.mu_ = 1.0;
    pot.c1_ = 0.25;
    pot.c2_ = 1.0;
    return pot;
}

DissipationPotential DissipationPotential::linear_stretch_dual() {
    std::vector<DualPiece> ps(4);
    ps[0] = {0.0, 1.0, DualPiece::Form::Quadratic, 1.0, 0.0, 0.0, 0.0};
    ps[1] = {1.0, 3.0, DualPiece::Form::Linear, 0.0, 2.0, -1.0, 0.0};
    ps[2] = {3.0, 6.0, DualPiece::Form::SqrtShift, 8.0, 0.0, 21.0, 7.0};
    // C^2 continuation: value 13, slope 4, curvature 2 at eta = 6.
    ps[3] = {6.0, kInf, DualPiece::Form::Quadratic, 1.0, -8.0, 25.0, 0.0};
    return tabulated_dual(std::move(ps));
}

const DualPiece& DissipationPotential::piece_for_value(double eta) const {
    for (const auto& pc : pieces_)
        if (eta <= pc.hi) return pc;
    return pieces_.back();
}

const DualPiece& DissipationPotential::piece_for_level(double m) const {
    for (const auto& pc : pieces_)
        if (pc.hi == kInf || m <= pc.value(pc.hi)) return pc;
    return pieces_.back();
}

double DissipationPotential::R(double v) const {
    double av = std::fabs(v);
    if (is_power_law()) return (r_ / p_) * std::pow(av, p_);
    // conjugate of the piecewise dual
    if (av == 0.0) return 0.0;
    for (size_t i = 0; i < pieces_.size(); ++i) {
        const DualPiece& pc = pieces_[i];
        double s_lo = pc.slope(pc.lo);
        double s_hi = pc.hi == kInf ? kInf : pc.slope(pc.hi);
        if (av < s_lo) {
            // kink of R at the slope gap: supremum sits at eta = pc.lo
            return av * pc.lo - pc.value(pc.lo);
        }
        if (av <= s_hi) {
            double eta = pc.invert_slope(av);
            return av * eta - pc.value(eta);
        }
    }
    const DualPiece& last = pieces_.back();
    double eta = last.invert_slope(av);
    return av * eta - last.value(eta);
}

double DissipationPotential::dR(double v) const {
    double av = std::fabs(v), sign = v < 0.0 ? -1.0 : 1.0;
    if (is_power_law()) return sign * r_ * std::pow(av, p_ - 1.0);
    if (av == 0.0) return 0.0;
    for (const auto& pc : pieces_) {
        double s_lo = pc.slope(pc.lo);
        double s_hi = pc.hi == kInf ? kInf : pc.slope(pc.hi);
        if (av < s_lo) return sign * pc.lo;
        if (av <= s_hi) return sign * pc.invert_slope(av);
    }
    return sign * pieces_.back().invert_slope(av);
}

double DissipationPotential::ddR(double v) const {
    double av = std::fabs(v);
    if (is_power_law()) {
        if (p_ == 2.0) return r_;
        return r_ * (p_ - 1.0) * std::pow(av, p_ - 2.0);
    }
    for (const auto& pc : pieces_) {
        double s_lo = pc.slope(pc.lo);
        double s_hi = pc.hi == kInf ? kInf : pc.slope(pc.hi);
        if (av < s_lo) return kInf;  // kink of R
        if (av <= s_hi) {
            double cur = pc.curvature(pc.invert_slope(av));
            return cur > 0.0 ? 1.0 / cur : kInf;
        }
    }
    double cur = pieces_.back().curvature(pieces_.back().invert_slope(av));
    return cur > 0.0 ? 1.0 / cur : kInf;
}

double DissipationPotential::R_star(double xi) const {
    double ax = std::fabs(xi);
    if (is_power_law()) {
        double pp = dual_exponent();
        return (mu_ / pp) * std::pow(ax, pp);
    }
    return piece_for_value(ax).value(ax);
}

double DissipationPotential::dR_star(double xi) const {
    double ax = std::fabs(xi), sign = xi < 0.0 ? -1.0 : 1.0;
    if (is_power_law()) return sign * mu_ * std::pow(ax, dual_exponent() - 1.0);
    return sign * piece_for_value(ax).slope(ax);
}

std::pair<double, double> DissipationPotential::dR_star_interval(
    double xi) const {
    if (is_power_law()) {
        double d = dR_star(xi);
        return {d, d};
    }
    double ax = std::fabs(xi), sign = xi < 0.0 ? -1.0 : 1.0;
    double left = 0.0, right = 0.0;
    for (size_t i = 0; i < pieces_.size(); ++i) {
        const DualPiece& pc = pieces_[i];
        if (ax < pc.hi || pc.hi == kInf) {
            left = right = pc.slope(ax);
            if (ax == pc.lo && i > 0) left = pieces_[i - 1].slope(ax);
            break;
        }
    }
    if (sign < 0.0) return {-right, -left};
    return {left, right};
}

double DissipationPotential::ddR_star(double xi) const {
    double ax = std::fabs(xi);
    if (is_power_law()) {
        double pp = dual_exponent();
        if (pp == 2.0) return mu_;
        return mu_ * (pp - 1.0) * std::pow(ax, pp - 2.0);
    }
    return piece_for_value(ax).curvature(ax);
}

double DissipationPotential::inv_R_star(double m) const {
    if (m <= 0.0) return 0.0;
    if (is_power_law()) {
        double pp = dual_exponent();
        return std::pow(pp * m / mu_, 1.0 / pp);
    }
    return piece_for_level(m).invert_value(m);
}

std::vector<double> DissipationPotential::dual_breakpoints() const {
    std::vector<double> pts;
    for (size_t i = 0; i + 1 < pieces_.size(); ++i)
        pts.push_back(pieces_[i].hi);
    return pts;
}

DissipationPotential DissipationPotential::rescaled(double delta) const {
    if (!(delta > 0.0)) throw std::invalid_argument("rescaled: delta <= 0");
    if (!is_power_law())
        throw std::invalid_argument("rescaled: power-law potentials only");
    // R_delta(v) = R(delta v)/delta = (r delta^{p-1}/p) |v|^p
    DissipationPotential pot = power_law(r_ * std::pow(delta, p_ - 1.0), p_);
    pot.kind_ = kind_;
    return pot;
}

double young_fenchel_gap(const DissipationPotential& pot, double v,
                         double xi) {
    return pot.R(v) + pot.R_star(xi) - v * xi;
}

PsiTransform::PsiTransform(DissipationPotential pot, Branch branch)
    : pot_(std::move(pot)), branch_(branch) {}

double PsiTransform::psi(double rho) const {
    if (branch_ == Branch::Minus) rho = -rho;
    if (rho <= 0.0) return kInf;
    return rho * pot_.R(1.0 / rho);
}

double PsiTransform::psi_star(double sigma) const {
    if (sigma > 0.0)
        throw std::domain_error("psi_star: sigma > 0 is outside the domain");
    return -pot_.inv_R_star(-sigma);
}

double PsiTransform::dpsi_star(double sigma) const {
    if (sigma > 0.0)
        throw std::domain_error("psi_star: sigma > 0 is outside the domain");
    if (sigma == 0.0) return kInf;
    if (pot_.is_power_law()) {
        // psi*(sigma) = -f (-sigma)^a with a = 1/p', f = (p'/mu)^{1/p'}
        double pp = pot_.dual_exponent();
        double a = 1.0 / pp;
        double mu = pot_.dR_star(1.0);
        double f = std::pow(pp / mu, a);
        return f * a * std::pow(-sigma, a - 1.0);
    }
    double eta = pot_.inv_R_star(-sigma);
    return 1.0 / pot_.dR_star(eta);
}

double PsiTransform::ddpsi_star(double sigma) const {
    if (sigma > 0.0)
        throw std::domain_error("psi_star: sigma > 0 is outside the domain");
    if (sigma == 0.0) return kInf;
    if (pot_.is_power_law()) {
        double pp = pot_.dual_exponent();
        double a = 1.0 / pp;
        double mu = pot_.dR_star(1.0);
        double f = std::pow(pp / mu, a);
        return f * a * (1.0 - a) * std::pow(-sigma, a - 2.0);
    }
    double eta = pot_.inv_R_star(-sigma);
    double d = pot_.dR_star(eta);
    return pot_.ddR_star(eta) / (d * d * d);
}

}  // namespace wiggly
