#pragma once

#include <array>
#include <vector>

namespace wiggly {

// Four distinct gradient structures (E_j, R_j*) on (0, inf) that all generate
// the relaxation flow q' = 1 - q. Structure 4 pairs the entropy
// q log q - q + 1 with the dual 4 sqrt(q) (cosh(xi/2) - 1); the prefactor 4
// is required for the generated field to be 1 - q.
double structure_energy_slope(int j, double q);          // DE_j(q)
double structure_dual_slope(int j, double q, double xi);  // d_xi R_j*(q, xi)
double structure_vector_field(int j, double q);           // generated field

struct GradientStructureCheck {
    double max_defect = 0.0;
    std::array<double, 4> per_structure{};
};

// max_j max_q |field_j(q) - (1 - q)| over the grid
GradientStructureCheck same_flow_check(const std::vector<double>& q_grid);

}  // namespace wiggly
