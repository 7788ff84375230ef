#pragma once

#include "wiggly/profiles.hpp"

#include <vector>

namespace wiggly {

struct Polynomial {
    std::vector<double> coeff;  // coeff[k] * u^k

    double operator()(double u) const;
    double deriv(double u) const;
};

// time-dependent load from a piecewise-linear table; clamped outside
struct LoadTable {
    std::vector<double> t;
    std::vector<double> value;

    static LoadTable constant(double v);
    static LoadTable ramp(double rate, double t_end);

    double operator()(double time) const;
    double rate(double time) const;
};

// E_eps(t,u) = Phi(u) - ell(t) u + eps * kappa(u/eps); the oscillatory part
// is built from a force profile p = kappa'.
class EnergyLandscape {
public:
    EnergyLandscape(Polynomial phi, LoadTable load, WigglyProfile profile,
                    double eps);

    double energy(double t, double u) const;
    double dE_du(double t, double u) const;
    double dE_dt(double t, double u) const;  // = -ell'(t) u
    double limit_energy(double t, double u) const;  // eps -> 0 energy
    double limit_dE_du(double t, double u) const;
    double Omega(double u) const;  // oscillatory force p(u/eps)

    const Polynomial& phi() const { return phi_; }
    const LoadTable& load() const { return load_; }
    const WigglyProfile& profile() const { return profile_; }
    double eps() const { return eps_; }
    bool has_wiggle() const { return eps_ > 0.0 && !profile_.trivial(); }

private:
    Polynomial phi_;
    LoadTable load_;
    WigglyProfile profile_;
    double eps_;
};

}  // namespace wiggly
