#include "wiggly/gradient_structures.hpp"

#include <doctest.h>

#include <cmath>

using namespace wiggly;

TEST_CASE("all four structures generate the same relaxation flow") {
    std::vector<double> grid;
    for (int i = 1; i <= 120; ++i) grid.push_back(3.0 * i / 120.0);
    auto rep = same_flow_check(grid);
    CHECK(rep.max_defect <= 1e-9);
    for (double d : rep.per_structure) CHECK(d <= 1e-9);
}

TEST_CASE("spot values of the generated fields") {
    CHECK(structure_vector_field(1, 0.5) == doctest::Approx(0.5));
    CHECK(structure_vector_field(2, 0.5) == doctest::Approx(0.5));
    CHECK(structure_vector_field(3, 2.0) == doctest::Approx(-1.0));
    CHECK(structure_vector_field(4, 2.0) == doctest::Approx(-1.0));
    for (int j = 1; j <= 4; ++j)
        CHECK(structure_vector_field(j, 1.0) == doctest::Approx(0.0));
}

TEST_CASE("structure 3 coefficient is continuous through q = 1") {
    // (q-1)/(2 log q) appears in the dual; its field must not blow up
    for (double q : {1.0 - 1e-7, 1.0, 1.0 + 1e-7, 1.0 + 1e-12})
        CHECK(std::fabs(structure_vector_field(3, q) - (1.0 - q)) < 1e-10);
}
