#include "wiggly/legendre.hpp"

#include <cmath>
#include <stdexcept>

namespace wiggly {

namespace {

// indices of the lower convex hull of (x_i, f_i), monotone-chain
std::vector<size_t> lower_hull(const SampledFunction& in) {
    const auto& x = in.x;
    const auto& f = in.f;
    if (x.size() != f.size() || x.empty())
        throw std::invalid_argument("legendre: empty or mismatched grid");
    for (size_t i = 0; i + 1 < x.size(); ++i)
        if (!(x[i] < x[i + 1]))
            throw std::invalid_argument("legendre: grid must be increasing");
    std::vector<size_t> h;
    for (size_t i = 0; i < x.size(); ++i) {
        while (h.size() >= 2) {
            size_t a = h[h.size() - 2], b = h[h.size() - 1];
            double cross = (x[b] - x[a]) * (f[i] - f[a]) -
                           (x[i] - x[a]) * (f[b] - f[a]);
            if (cross <= 0.0)
                h.pop_back();
            else
                break;
        }
        h.push_back(i);
    }
    return h;
}

}  // namespace

SampledFunction convex_envelope(const SampledFunction& in) {
    std::vector<size_t> h = lower_hull(in);
    SampledFunction out;
    out.x = in.x;
    out.f.resize(in.x.size());
    size_t seg = 0;
    for (size_t i = 0; i < in.x.size(); ++i) {
        while (seg + 1 < h.size() && in.x[h[seg + 1]] < in.x[i]) ++seg;
        size_t a = h[seg];
        size_t b = h[std::min(seg + 1, h.size() - 1)];
        if (a == b) {
            out.f[i] = in.f[a];
        } else {
            double t = (in.x[i] - in.x[a]) / (in.x[b] - in.x[a]);
            out.f[i] = in.f[a] + t * (in.f[b] - in.f[a]);
        }
    }
    return out;
}

SampledFunction legendre_transform(const SampledFunction& in,
                                   const std::vector<double>& xi_grid) {
    std::vector<size_t> h = lower_hull(in);
    SampledFunction out;
    out.x = xi_grid;
    out.f.resize(xi_grid.size());
    for (size_t j = 0; j < xi_grid.size(); ++j) {
        double xi = xi_grid[j];
        // hull slopes are increasing, so the maximizing vertex is where the
        // slope crosses xi; binary search over hull edges
        size_t lo = 0, hi = h.size() - 1;
        while (lo < hi) {
            size_t mid = (lo + hi) / 2;
            size_t a = h[mid], b = h[mid + 1];
            double slope = (in.f[b] - in.f[a]) / (in.x[b] - in.x[a]);
            if (slope < xi)
                lo = mid + 1;
            else
                hi = mid;
        }
        size_t k = h[lo];
        out.f[j] = xi * in.x[k] - in.f[k];
    }
    return out;
}

}  // namespace wiggly
