#include "wiggly/gradient_structures.hpp"

#include <cmath>
#include <stdexcept>

namespace wiggly {

namespace {

// (q-1)/log(q), continuous through q = 1
double ratio_qm1_logq(double q) {
    double d = q - 1.0;
    if (std::fabs(d) < 1e-5) return 1.0 + d / 2.0 - d * d / 12.0;
    return d / std::log(q);
}

}  // namespace

double structure_energy_slope(int j, double q) {
    switch (j) {
        case 1:
        case 2:
            return q - 1.0;  // E = (1-q)^2 / 2
        case 3:
        case 4:
            return std::log(q);  // E = q log q - q + 1
    }
    throw std::invalid_argument("structure index must be 1..4");
}

double structure_dual_slope(int j, double q, double xi) {
    switch (j) {
        case 1:
            return xi;
        case 2:
            return (xi + xi * xi * xi) / (1.0 + (1.0 - q) * (1.0 - q));
        case 3:
            return ratio_qm1_logq(q) * xi;
        case 4:
            return 2.0 * std::sqrt(q) * std::sinh(0.5 * xi);
    }
    throw std::invalid_argument("structure index must be 1..4");
}

double structure_vector_field(int j, double q) {
    return structure_dual_slope(j, q, -structure_energy_slope(j, q));
}

GradientStructureCheck same_flow_check(const std::vector<double>& q_grid) {
    GradientStructureCheck out;
    for (int j = 1; j <= 4; ++j) {
        double worst = 0.0;
        for (double q : q_grid) {
            double defect = std::fabs(structure_vector_field(j, q) - (1.0 - q));
            worst = std::max(worst, defect);
        }
        out.per_structure[j - 1] = worst;
        out.max_defect = std::max(out.max_defect, worst);
    }
    return out;
}

}  // namespace wiggly
