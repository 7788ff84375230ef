#pragma once

#include <vector>

namespace wiggly {

// f sampled on an increasing grid
struct SampledFunction {
    std::vector<double> x;
    std::vector<double> f;
};

// Lower convex envelope, re-sampled on the input grid.
SampledFunction convex_envelope(const SampledFunction& in);

// Discrete Legendre-Fenchel conjugate f*(xi) = max_i (xi x_i - f_i),
// evaluated on the given xi grid. Exact conjugate of the piecewise-linear
// interpolant's convex envelope; applying it twice returns the envelope.
SampledFunction legendre_transform(const SampledFunction& in,
                                   const std::vector<double>& xi_grid);

}  // namespace wiggly
