#include "wiggly/profiles.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

namespace wiggly {

namespace {

constexpr double kTwoPi = 6.283185307179586476925286766559;

double wrap01(double y) {
    double w = y - std::floor(y);
    return w < 1.0 ? w : 0.0;
}

}  // namespace

WigglyProfile WigglyProfile::sinusoidal(double amplitude) {
    if (amplitude < 0.0)
        throw std::invalid_argument("sinusoidal: amplitude < 0");
    WigglyProfile p;
    p.kind_ = Kind::Sinusoidal;
    p.amplitude_ = amplitude;
    p.p_max_ = amplitude;
    p.p_min_ = -amplitude;
    if (amplitude > 0.0) {
        p.has_model_ = true;
        p.maximizer_ = 0.25;
        p.alpha_ = 2.0;
        p.c_star_ = 2.0 * M_PI * M_PI * amplitude;
    }
    return p;
}

WigglyProfile WigglyProfile::discrete(std::vector<double> values,
                                      std::vector<double> weights) {
    if (values.empty() || values.size() != weights.size())
        throw std::invalid_argument("discrete: bad values/weights");
    double wsum = 0.0, mean = 0.0;
    for (size_t i = 0; i < values.size(); ++i) {
        if (!(weights[i] > 0.0))
            throw std::invalid_argument("discrete: weights must be positive");
        wsum += weights[i];
        mean += weights[i] * values[i];
    }
    if (std::fabs(wsum - 1.0) > 1e-12)
        throw std::invalid_argument("discrete: weights must sum to 1");
    if (std::fabs(mean) > 1e-12)
        throw std::invalid_argument("discrete: profile must have zero mean");
    WigglyProfile p;
    p.kind_ = Kind::Discrete;
    p.values_ = std::move(values);
    p.weights_ = std::move(weights);
    p.edges_.resize(p.values_.size() + 1);
    p.edges_[0] = 0.0;
    for (size_t i = 0; i < p.values_.size(); ++i)
        p.edges_[i + 1] = p.edges_[i] + p.weights_[i];
    p.edges_.back() = 1.0;
    p.p_max_ = *std::max_element(p.values_.begin(), p.values_.end());
    p.p_min_ = *std::min_element(p.values_.begin(), p.values_.end());
    p.has_model_ = false;
    p.build_antiderivative();
    return p;
}

WigglyProfile WigglyProfile::two_valued(double amplitude) {
    return discrete({amplitude, -amplitude}, {0.5, 0.5});
}

WigglyProfile WigglyProfile::tent(double amplitude) {
    if (!(amplitude > 0.0)) throw std::invalid_argument("tent: amplitude <= 0");
    WigglyProfile p;
    p.kind_ = Kind::Tent;
    p.amplitude_ = amplitude;
    p.nodes_ = {0.0, 0.25, 0.75, 1.0};
    p.samples_ = {0.0, amplitude, -amplitude, 0.0};
    p.p_max_ = amplitude;
    p.p_min_ = -amplitude;
    p.has_model_ = true;
    p.maximizer_ = 0.25;
    p.alpha_ = 1.0;
    p.c_star_ = 4.0 * amplitude;
    p.build_antiderivative();
    return p;
}

WigglyProfile WigglyProfile::tabulated(std::vector<double> samples) {
    if (samples.size() < 3)
        throw std::invalid_argument("tabulated: need at least 3 samples");
    double mean =
        std::accumulate(samples.begin(), samples.end(), 0.0) / samples.size();
    for (double& s : samples) s -= mean;
    size_t n = samples.size();
    WigglyProfile p;
    p.kind_ = Kind::Tabulated;
    p.nodes_.resize(n + 1);
    p.samples_.resize(n + 1);
    for (size_t i = 0; i <= n; ++i) {
        p.nodes_[i] = static_cast<double>(i) / n;
        p.samples_[i] = samples[i % n];
    }
    auto mm = std::minmax_element(samples.begin(), samples.end());
    p.p_min_ = *mm.first;
    p.p_max_ = *mm.second;
    size_t jmax = std::max_element(samples.begin(), samples.end()) -
                  samples.begin();
    p.maximizer_ = static_cast<double>(jmax) / n;
    // piecewise-linear peak: linear approach on both sides
    double sl = std::fabs(samples[jmax] - samples[(jmax + n - 1) % n]) * n;
    double sr = std::fabs(samples[(jmax + 1) % n] - samples[jmax]) * n;
    if (sl > 0.0 && sr > 0.0) {
        p.has_model_ = true;
        p.alpha_ = 1.0;
        p.c_star_ = std::min(sl, sr);
    }
    p.build_antiderivative();
    return p;
}

WigglyProfile WigglyProfile::piecewise_linear(std::vector<double> nodes,
                                              std::vector<double> samples) {
    if (nodes.size() < 2 || nodes.size() != samples.size())
        throw std::invalid_argument("piecewise_linear: bad node/sample lists");
    if (nodes.front() != 0.0 || nodes.back() != 1.0)
        throw std::invalid_argument("piecewise_linear: nodes must span [0,1]");
    if (std::fabs(samples.front() - samples.back()) > 1e-12)
        throw std::invalid_argument("piecewise_linear: p(0) != p(1)");
    for (size_t i = 0; i + 1 < nodes.size(); ++i)
        if (!(nodes[i] < nodes[i + 1]))
            throw std::invalid_argument("piecewise_linear: nodes not sorted");
    // exact mean of the piecewise-linear interpolant
    double mean = 0.0;
    for (size_t i = 0; i + 1 < nodes.size(); ++i)
        mean += 0.5 * (samples[i] + samples[i + 1]) * (nodes[i + 1] - nodes[i]);
    for (double& s : samples) s -= mean;
    WigglyProfile p;
    p.kind_ = Kind::Tabulated;
    p.nodes_ = std::move(nodes);
    p.samples_ = std::move(samples);
    auto mm = std::minmax_element(p.samples_.begin(), p.samples_.end());
    p.p_min_ = *mm.first;
    p.p_max_ = *mm.second;
    size_t jmax =
        std::max_element(p.samples_.begin(), p.samples_.end()) -
        p.samples_.begin();
    p.maximizer_ = p.nodes_[jmax];
    p.build_antiderivative();
    return p;
}

WigglyProfile WigglyProfile::power_peak(double exponent) {
    if (!(exponent > 0.0))
        throw std::invalid_argument("power_peak: exponent <= 0");
    WigglyProfile p;
    p.kind_ = Kind::PowerPeak;
    p.amplitude_ = exponent;  // stores the peak exponent
    p.p_max_ = 1.0 / (exponent + 1.0);
    p.p_min_ = -exponent / (exponent + 1.0);
    p.has_model_ = true;
    p.maximizer_ = 0.5;
    p.alpha_ = exponent;
    p.c_star_ = std::pow(2.0, exponent);
    return p;
}

WigglyProfile WigglyProfile::zero() { return sinusoidal(0.0); }

WigglyProfile WigglyProfile::smoothed(double layer_width) const {
    if (!is_discrete()) return *this;
    if (!(layer_width > 0.0) || layer_width > 0.5)
        throw std::invalid_argument("smoothed: bad layer width");
    double w = layer_width;
    std::vector<double> nodes, samples;
    size_t m = values_.size();
    // jump at 0/1 between the last and first value
    double v_first = values_.front(), v_last = values_.back();
    nodes.push_back(0.0);
    samples.push_back(0.5 * (v_first + v_last));
    for (size_t i = 0; i < m; ++i) {
        double lo = edges_[i], hi = edges_[i + 1];
        nodes.push_back(lo == 0.0 ? w / 2 : lo + w / 2);
        samples.push_back(values_[i]);
        nodes.push_back(hi == 1.0 ? 1.0 - w / 2 : hi - w / 2);
        samples.push_back(values_[i]);
    }
    nodes.push_back(1.0);
    samples.push_back(0.5 * (v_first + v_last));
    return piecewise_linear(std::move(nodes), std::move(samples));
}

double WigglyProfile::p_raw(double y) const {
    switch (kind_) {
        case Kind::Sinusoidal:
            return amplitude_ * std::sin(kTwoPi * y);
        case Kind::Discrete: {
            size_t i = std::upper_bound(edges_.begin(), edges_.end(), y) -
                       edges_.begin();
            if (i == 0) i = 1;
            if (i > values_.size()) i = values_.size();
            return values_[i - 1];
        }
        case Kind::Tent:
        case Kind::Tabulated: {
            size_t i = std::upper_bound(nodes_.begin(), nodes_.end(), y) -
                       nodes_.begin();
            if (i == 0) i = 1;
            if (i >= nodes_.size()) i = nodes_.size() - 1;
            double t = (y - nodes_[i - 1]) / (nodes_[i] - nodes_[i - 1]);
            return samples_[i - 1] + t * (samples_[i] - samples_[i - 1]);
        }
        case Kind::PowerPeak:
            return p_max_ - std::pow(std::fabs(2.0 * (y - 0.5)), amplitude_);
    }
    return 0.0;
}

double WigglyProfile::operator()(double y) const { return p_raw(wrap01(y)); }

double WigglyProfile::deriv(double y) const {
    y = wrap01(y);
    switch (kind_) {
        case Kind::Sinusoidal:
            return amplitude_ * kTwoPi * std::cos(kTwoPi * y);
        case Kind::Discrete:
            return 0.0;
        case Kind::Tent:
        case Kind::Tabulated: {
            size_t i = std::upper_bound(nodes_.begin(), nodes_.end(), y) -
                       nodes_.begin();
            if (i == 0) i = 1;
            if (i >= nodes_.size()) i = nodes_.size() - 1;
            return (samples_[i] - samples_[i - 1]) /
                   (nodes_[i] - nodes_[i - 1]);
        }
        case Kind::PowerPeak: {
            double t = y - 0.5;
            if (t == 0.0) return 0.0;
            double a = amplitude_;
            return -a * std::pow(2.0, a) * std::pow(std::fabs(t), a - 1.0) *
                   (t > 0 ? 1.0 : -1.0);
        }
    }
    return 0.0;
}

void WigglyProfile::build_antiderivative() {
    // nodes of linearity/constancy of p, primitive values at them, and the
    // exact mean of the primitive (so kappa has zero mean)
    std::vector<double> ys;
    if (kind_ == Kind::Discrete)
        ys = edges_;
    else
        ys = nodes_;
    prim_nodes_ = ys;
    prim_vals_.assign(ys.size(), 0.0);
    double mean = 0.0;
    for (size_t j = 0; j + 1 < ys.size(); ++j) {
        double h = ys[j + 1] - ys[j];
        double pl, pr;
        if (kind_ == Kind::Discrete) {
            pl = pr = values_[j];
        } else {
            pl = samples_[j];
            pr = samples_[j + 1];
        }
        double K = prim_vals_[j];
        prim_vals_[j + 1] = K + 0.5 * h * (pl + pr);
        double slope = (pr - pl) / h;
        // int of K + pl (y-yj) + slope (y-yj)^2/2 over the piece
        mean += K * h + pl * h * h / 2.0 + slope * h * h * h / 6.0;
    }
    kappa_shift_ = mean;
}

double WigglyProfile::kappa(double y) const {
    y = wrap01(y);
    if (kind_ == Kind::Sinusoidal)
        return -amplitude_ * std::cos(kTwoPi * y) / kTwoPi;
    if (kind_ == Kind::PowerPeak) {
        // primitive of p_max - |2(y-1/2)|^a; its mean over the period is 0
        double a = amplitude_;
        double half = std::pow(0.5, a + 1.0);
        double I = y <= 0.5 ? (half - std::pow(0.5 - y, a + 1.0)) / (a + 1.0)
                            : (half + std::pow(y - 0.5, a + 1.0)) / (a + 1.0);
        return p_max_ * y - std::pow(2.0, a) * I;
    }
    size_t i = std::upper_bound(prim_nodes_.begin(), prim_nodes_.end(), y) -
               prim_nodes_.begin();
    if (i == 0) i = 1;
    if (i >= prim_nodes_.size()) i = prim_nodes_.size() - 1;
    double d = y - prim_nodes_[i - 1];
    double h = prim_nodes_[i] - prim_nodes_[i - 1];
    double pl, pr;
    if (kind_ == Kind::Discrete) {
        pl = pr = values_[i - 1];
    } else {
        pl = samples_[i - 1];
        pr = samples_[i];
    }
    double slope = (pr - pl) / h;
    return prim_vals_[i - 1] + pl * d + 0.5 * slope * d * d - kappa_shift_;
}

std::vector<double> WigglyProfile::kinks() const {
    std::vector<double> ks;
    switch (kind_) {
        case Kind::Sinusoidal:
            break;
        case Kind::Discrete:
            ks.assign(edges_.begin() + 1, edges_.end() - 1);
            break;
        case Kind::Tent:
        case Kind::Tabulated:
            ks.assign(nodes_.begin() + 1, nodes_.end() - 1);
            break;
        case Kind::PowerPeak:
            ks.push_back(0.5);
            break;
    }
    return ks;
}

std::vector<double> WigglyProfile::level_points(double xi) const {
    std::vector<double> pts;
    switch (kind_) {
        case Kind::Sinusoidal: {
            if (amplitude_ == 0.0) break;
            double t = xi / amplitude_;
            if (t > 1.0 || t < -1.0) break;
            if (t == 1.0) {
                pts.push_back(0.25);
            } else if (t == -1.0) {
                pts.push_back(0.75);
            } else {
                double y1 = std::asin(t) / kTwoPi;
                double y2 = 0.5 - y1;
                pts.push_back(wrap01(y1));
                pts.push_back(wrap01(y2));
            }
            break;
        }
        case Kind::Discrete:
            break;
        case Kind::Tent:
        case Kind::Tabulated: {
            for (size_t j = 0; j + 1 < nodes_.size(); ++j) {
                double pl = samples_[j] - xi, pr = samples_[j + 1] - xi;
                if (pl == 0.0) pts.push_back(nodes_[j]);
                if (pl * pr < 0.0) {
                    double t = pl / (pl - pr);
                    pts.push_back(nodes_[j] + t * (nodes_[j + 1] - nodes_[j]));
                }
            }
            break;
        }
        case Kind::PowerPeak: {
            if (xi > p_max_ || xi < p_min_) break;
            double t = std::pow((p_max_ - xi) / c_star_, 1.0 / alpha_);
            if (0.5 - t >= 0.0) pts.push_back(0.5 - t);
            if (0.5 + t < 1.0 && t > 0.0) pts.push_back(0.5 + t);
            break;
        }
    }
    std::sort(pts.begin(), pts.end());
    pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
    return pts;
}

std::vector<double> WigglyProfile::hot_points(double xi) const {
    if (trivial() || is_discrete()) return {};
    std::vector<double> pts;
    if (xi >= p_max_) {
        switch (kind_) {
            case Kind::Sinusoidal:
            case Kind::Tent:
                pts = {0.25};
                break;
            default:
                pts = {maximizer_};
        }
    } else if (xi <= p_min_) {
        switch (kind_) {
            case Kind::Sinusoidal:
            case Kind::Tent:
                pts = {0.75};
                break;
            default:
                pts = level_points(p_min_);
        }
    } else {
        pts = level_points(xi);
    }
    // a hot point at the period seam acts on both ends
    bool near0 = false, near1 = false;
    for (double p : pts) {
        if (p < 1e-12) near0 = true;
        if (p > 1.0 - 1e-12) near1 = true;
    }
    if (near0) pts.push_back(1.0);
    if (near1) pts.push_back(0.0);
    return pts;
}

}  // namespace wiggly
