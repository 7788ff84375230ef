#include "wiggly/quad.hpp"

#include <algorithm>
#include <cfloat>
#include <cmath>
#include <queue>

namespace wiggly {

namespace {

// 15-point Kronrod extension of 7-point Gauss, positive abscissae
const double kXk[8] = {
    0.991455371120812639206854697526329,
    0.949107912342758524526189684047851,
    0.864864423359769072789712788640926,
    0.741531185599394439863864773280788,
    0.586087235467691130294144838258730,
    0.405845151377397166906606412076961,
    0.207784955007898467600689403773245,
    0.000000000000000000000000000000000};
const double kWk[8] = {
    0.022935322010529224963732008058970,
    0.063092092629978553290700663189204,
    0.104790010322250183839876322541518,
    0.140653259715525918745189590510238,
    0.169004726639267902826583426598550,
    0.190350578064785409913256402421014,
    0.204432940075298892414161999234649,
    0.209482141084727828012999174891714};
const double kWg[4] = {
    0.129484966168869693270611432679082,
    0.279705391489276667901467771423780,
    0.381830050505118944950369775488975,
    0.417959183673469387755102040816327};

struct Panel {
    double a, b, val, err, l1;
    bool splittable;
};

Panel gk15_panel(const Integrand& f, double a, double b) {
    Panel p;
    p.a = a;
    p.b = b;
    double c = 0.5 * (a + b), h = 0.5 * (b - a);
    double fc = f(c);
    double k = kWk[7] * fc, g = kWg[3] * fc, l1 = kWk[7] * std::fabs(fc);
    for (int i = 0; i < 7; ++i) {
        double f1 = f(c - h * kXk[i]);
        double f2 = f(c + h * kXk[i]);
        k += kWk[i] * (f1 + f2);
        l1 += kWk[i] * (std::fabs(f1) + std::fabs(f2));
        if (i % 2 == 1) g += kWg[i / 2] * (f1 + f2);
    }
    p.val = k * h;
    p.l1 = l1 * std::fabs(h);
    p.err = std::fabs(k - g) * std::fabs(h);
    // panels at the roundoff floor or below the width floor cannot improve
    double floor_err = 16.0 * DBL_EPSILON * p.l1;
    double floor_width =
        8.0 * DBL_EPSILON * std::max({std::fabs(a), std::fabs(b), 1.0});
    p.splittable = p.err > floor_err && (b - a) > floor_width;
    return p;
}

struct WorseErr {
    bool operator()(const Panel& x, const Panel& y) const {
        return x.err < y.err;
    }
};

QuadResult integrate_panels(const Integrand& f, std::vector<double> edges,
                            const QuadOptions& opt) {
    std::priority_queue<Panel, std::vector<Panel>, WorseErr> queue;
    double total = 0.0, total_err = 0.0, total_l1 = 0.0;
    double done_val = 0.0, done_err = 0.0;  // panels retired as unsplittable
    for (size_t i = 0; i + 1 < edges.size(); ++i) {
        if (!(edges[i + 1] > edges[i])) continue;
        Panel p = gk15_panel(f, edges[i], edges[i + 1]);
        total += p.val;
        total_err += p.err;
        total_l1 += p.l1;
        queue.push(p);
    }
    long budget = (1L << std::min(opt.max_depth, 24)) +
                  static_cast<long>(edges.size());
    budget = std::min(budget, 100000L);
    auto good = [&]() {
        return total_err <=
               std::max(opt.abs_tol, opt.rel_tol * std::max(total_l1, 1e-300));
    };
    while (!good() && !queue.empty() && budget-- > 0) {
        Panel worst = queue.top();
        queue.pop();
        if (!worst.splittable) {
            // nothing in the queue can improve further
            done_val += worst.val;
            done_err += worst.err;
            if (queue.empty()) break;
            continue;
        }
        double mid = 0.5 * (worst.a + worst.b);
        Panel left = gk15_panel(f, worst.a, mid);
        Panel right = gk15_panel(f, mid, worst.b);
        // roundoff-dominated panels do not improve under bisection; retire
        // them so the refinement loop cannot stall on them
        if (left.err + right.err >= 0.9 * worst.err) {
            left.splittable = false;
            right.splittable = false;
        }
        total += left.val + right.val - worst.val;
        total_err += left.err + right.err - worst.err;
        total_l1 += left.l1 + right.l1 - worst.l1;
        queue.push(left);
        queue.push(right);
    }
    QuadResult r;
    r.value = total;
    r.error = total_err;
    r.converged = good();
    return r;
}

}  // namespace

QuadResult integrate(const Integrand& f, double a, double b,
                     const QuadOptions& opt) {
    if (a == b) return {};
    if (a > b) {
        QuadResult r = integrate(f, b, a, opt);
        r.value = -r.value;
        return r;
    }
    return integrate_panels(f, {a, b}, opt);
}

QuadResult integrate_split(const Integrand& f, double a, double b,
                           std::vector<double> breakpoints,
                           const QuadOptions& opt) {
    if (a == b) return {};
    double sign = 1.0;
    if (a > b) {
        std::swap(a, b);
        sign = -1.0;
    }
    breakpoints.push_back(a);
    breakpoints.push_back(b);
    std::sort(breakpoints.begin(), breakpoints.end());
    std::vector<double> edges;
    for (double x : breakpoints) {
        if (x < a || x > b) continue;
        if (!edges.empty() && !(x > edges.back())) continue;
        edges.push_back(x);
    }
    QuadResult r = integrate_panels(f, std::move(edges), opt);
    r.value *= sign;
    return r;
}

std::vector<double> graded_breakpoints(double a, double b, double hot,
                                       double w0, double ratio) {
    std::vector<double> pts;
    if (!(w0 > 0.0) || !(ratio > 1.0)) return pts;
    double span = b - a;
    for (double w = w0; w < span; w *= ratio) {
        double lo = hot - w, hi = hot + w;
        if (lo > a && lo < b) pts.push_back(lo);
        if (hi > a && hi < b) pts.push_back(hi);
        if (lo <= a && hi >= b) break;
    }
    if (hot > a && hot < b) pts.push_back(hot);
    return pts;
}

}  // namespace wiggly
