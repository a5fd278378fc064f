#include <doctest.h>

#include "aoi/errors.hpp"
#include "aoi/linalg.hpp"

using aoi::linalg::lu_solve;

TEST_CASE("lu_solve recovers a known 3x3 solution") {
    // A * (1, -2, 3) with A below.
    std::vector<double> a{2, 1, -1, -3, -1, 2, -2, 1, 2};
    std::vector<double> b{2 - 2 - 3, -3 + 2 + 6, -2 - 2 + 6};
    auto x = lu_solve(a, b);
    CHECK(x[0] == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(x[1] == doctest::Approx(-2.0).epsilon(1e-12));
    CHECK(x[2] == doctest::Approx(3.0).epsilon(1e-12));
}

TEST_CASE("lu_solve pivots rows with zero leading entries") {
    std::vector<double> a{0, 1, 1, 0};
    std::vector<double> b{5, 7};
    auto x = lu_solve(a, b);
    CHECK(x[0] == doctest::Approx(7.0));
    CHECK(x[1] == doctest::Approx(5.0));
}

TEST_CASE("lu_solve rejects singular systems") {
    std::vector<double> a{1, 2, 2, 4};
    std::vector<double> b{1, 2};
    CHECK_THROWS_AS(lu_solve(a, b), aoi::SingularSystem);
}
