#pragma once

#include <functional>
#include <vector>

namespace wiggly {

struct QuadResult {
    double value = 0.0;
    double error = 0.0;  // absolute error estimate
    bool converged = true;

    operator double() const { return value; }
};

struct QuadOptions {
    double rel_tol = 1e-12;  // relative to the accumulated L1 norm
    double abs_tol = 0.0;
    int max_depth = 10;      // refinement budget: up to 2^max_depth splits
};

using Integrand = std::function<double(double)>;

// Globally adaptive 7/15 Gauss-Kronrod on [a, b]: the panel with the worst
// error estimate is bisected until the budget or the tolerance is met.
QuadResult integrate(const Integrand& f, double a, double b,
                     const QuadOptions& opt = {});

// Same, but the interval is first split at the given interior points.
// Use for integrands with kinks or near-singular spots: each spot should be
// a breakpoint so the adaptive rule never straddles it.
QuadResult integrate_split(const Integrand& f, double a, double b,
                           std::vector<double> breakpoints,
                           const QuadOptions& opt = {});

// Dyadically graded breakpoints accumulating toward `hot` from both sides,
// starting at distance `w0` and growing by `ratio` until `span` is covered.
// Feed the result to integrate_split for integrands that blow up (or lose
// smoothness) at `hot` on the scale w0.
std::vector<double> graded_breakpoints(double a, double b, double hot,
                                       double w0, double ratio = 4.0);

}  // namespace wiggly
