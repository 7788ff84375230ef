#include "wiggly/landscape.hpp"

#include <algorithm>
#include <stdexcept>

namespace wiggly {

double Polynomial::operator()(double u) const {
    double acc = 0.0;
    for (size_t k = coeff.size(); k-- > 0;) acc = acc * u + coeff[k];
    return acc;
}

double Polynomial::deriv(double u) const {
    double acc = 0.0;
    for (size_t k = coeff.size(); k-- > 1;)
        acc = acc * u + coeff[k] * static_cast<double>(k);
    return acc;
}

LoadTable LoadTable::constant(double v) { return {{0.0}, {v}}; }

LoadTable LoadTable::ramp(double rate, double t_end) {
    return {{0.0, t_end}, {0.0, rate * t_end}};
}

double LoadTable::operator()(double time) const {
    if (t.empty()) return 0.0;
    if (time <= t.front()) return value.front();
    if (time >= t.back()) return value.back();
    size_t i = std::upper_bound(t.begin(), t.end(), time) - t.begin();
    double w = (time - t[i - 1]) / (t[i] - t[i - 1]);
    return value[i - 1] + w * (value[i] - value[i - 1]);
}

double LoadTable::rate(double time) const {
    if (t.size() < 2) return 0.0;
    if (time < t.front() || time > t.back()) return 0.0;
    size_t i = std::upper_bound(t.begin(), t.end(), time) - t.begin();
    if (i == 0) i = 1;
    if (i >= t.size()) i = t.size() - 1;
    return (value[i] - value[i - 1]) / (t[i] - t[i - 1]);
}

EnergyLandscape::EnergyLandscape(Polynomial phi, LoadTable load,
                                 WigglyProfile profile, double eps)
    : phi_(std::move(phi)),
      load_(std::move(load)),
      profile_(std::move(profile)),
      eps_(eps) {
    if (eps < 0.0) throw std::invalid_argument("landscape: eps < 0");
}

double EnergyLandscape::energy(double t, double u) const {
    double e = phi_(u) - load_(t) * u;
    if (has_wiggle()) e += eps_ * profile_.kappa(u / eps_);
    return e;
}

double EnergyLandscape::dE_du(double t, double u) const {
    double d = phi_.deriv(u) - load_(t);
    if (has_wiggle()) d += profile_(u / eps_);
    return d;
}

double EnergyLandscape::dE_dt(double t, double u) const {
    return -load_.rate(t) * u;
}

double EnergyLandscape::limit_energy(double t, double u) const {
    return phi_(u) - load_(t) * u;
}

double EnergyLandscape::limit_dE_du(double t, double u) const {
    return phi_.deriv(u) - load_(t);
}

double EnergyLandscape::Omega(double u) const {
    return has_wiggle() ? profile_(u / eps_) : 0.0;
}

}  // namespace wiggly
