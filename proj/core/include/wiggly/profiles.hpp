#pragma once

#include <vector>

namespace wiggly {

// 1-periodic, mean-zero force profile p(y) together with its periodic
// antiderivative kappa (so that kappa' = p). Carries the local model
// p(y) ~ p_max - c_star |y - maximizer|^alpha near the maximum where one
// exists; discrete-valued profiles have no local model and the depinning
// expansions refuse them.
class WigglyProfile {
public:
    enum class Kind { Sinusoidal, Discrete, Tent, Tabulated, PowerPeak };

    // p(y) = amplitude * sin(2 pi y)
    static WigglyProfile sinusoidal(double amplitude);
    // piecewise constant on consecutive intervals of the given widths
    static WigglyProfile discrete(std::vector<double> values,
                                  std::vector<double> weights);
    // values {+a, -a} with equal weights, + on [0, 1/2)
    static WigglyProfile two_valued(double amplitude);
    // triangle wave with peak +a at y = 1/4 and trough -a at y = 3/4
    static WigglyProfile tent(double amplitude);
    // piecewise-linear through uniform samples (mean removed)
    static WigglyProfile tabulated(std::vector<double> samples);
    // piecewise-linear through explicit nodes; nodes must start at 0 and end
    // at 1 with matching first/last sample (mean removed)
    static WigglyProfile piecewise_linear(std::vector<double> nodes,
                                          std::vector<double> samples);
    // p(y) = 1/(a+1) - |2(y - 1/2)|^a: peak of local exponent a at y = 1/2
    static WigglyProfile power_peak(double exponent);
    // p identically zero
    static WigglyProfile zero();

    double operator()(double y) const;
    // slope of p; 0 for discrete profiles (jumps carry no classical slope)
    double deriv(double y) const;
    double kappa(double y) const;

    // jump profiles rebuilt with thin linear transition layers; smooth
    // profiles are returned unchanged
    WigglyProfile smoothed(double layer_width) const;

    Kind kind() const { return kind_; }
    double p_max() const { return p_max_; }
    double p_min() const { return p_min_; }
    bool trivial() const { return p_max_ == 0.0 && p_min_ == 0.0; }

    bool has_local_model() const { return has_model_; }
    double maximizer() const { return maximizer_; }
    double alpha() const { return alpha_; }
    double c_star() const { return c_star_; }

    bool is_discrete() const { return kind_ == Kind::Discrete; }
    const std::vector<double>& values() const { return values_; }
    const std::vector<double>& weights() const { return weights_; }

    // structural breakpoints of p in (0,1): corners, jump edges, sample nodes
    std::vector<double> kinks() const;
    // solutions of p(y) = xi within [0,1) (empty for discrete profiles)
    std::vector<double> level_points(double xi) const;
    // minimizers of |xi - p(y)|: level points when xi is in range, otherwise
    // the nearest extremum locations; used to grade quadratures
    std::vector<double> hot_points(double xi) const;

private:
    Kind kind_ = Kind::Sinusoidal;
    double amplitude_ = 0.0;
    double p_max_ = 0.0, p_min_ = 0.0;
    bool has_model_ = false;
    double maximizer_ = 0.0, alpha_ = 0.0, c_star_ = 0.0;

    // discrete / piecewise-linear data
    std::vector<double> values_, weights_, edges_;
    std::vector<double> nodes_, samples_;       // tabulated
    // generic antiderivative table at structural nodes + zero-mean shift
    std::vector<double> prim_nodes_, prim_vals_;
    double kappa_shift_ = 0.0;

    void build_antiderivative();
    double p_raw(double y) const;  // on [0,1)
};

}  // namespace wiggly
