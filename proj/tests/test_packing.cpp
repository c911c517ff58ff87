#include "doctest.h"

#include <cmath>
#include <stdexcept>
#include <vector>

#include "priorisk/errors.hpp"
#include "priorisk/packing.hpp"

using namespace priorisk;

namespace {

std::vector<Param> cube_members(double t, int d) {
    std::vector<Param> m;
    for (int idx = 0; idx < (1 << d); ++idx) {
        std::vector<int> v = hypercube_vertex(idx, d);
        std::vector<double> c(static_cast<size_t>(d));
        for (int j = 0; j < d; ++j) c[static_cast<size_t>(j)] = t * v[static_cast<size_t>(j)];
        m.push_back(Param(c));
    }
    return m;
}

}  // namespace

TEST_CASE("two point packing boundary") {
    // Uniform weights: delta_max = dist / 2.
    Packing p{{Param(0.3), Param(0.7)}, 0.2, {1.0, 1.0}, LossSpec::Rho::AbsDiff};
    CHECK(verify_packing(p).valid);
    p.delta = 0.2 * (1.0 + 1e-6);
    PackingCheck bad = verify_packing(p);
    CHECK_FALSE(bad.valid);
    CHECK(bad.u == 0);
    CHECK(bad.v == 1);
    CHECK(bad.overlap > 0.0);

    // Beta(1,2) weights at 0.3 and 0.7 are 1.4 and 0.6: delta_max = 0.168.
    Prior b = Prior::beta(1.0, 2.0);
    double dmax = max_delta_two_point(0.3, 0.7, b);
    CHECK(dmax == doctest::Approx(0.168).epsilon(1e-12));
    Packing w{{Param(0.3), Param(0.7)}, 0.1, {b(0.3), b(0.7)}, LossSpec::Rho::AbsDiff};
    CHECK(verify_packing(w).valid);
    w.delta = 0.2;
    CHECK_FALSE(verify_packing(w).valid);
    w.delta = dmax;
    CHECK(verify_packing(w).valid);  // boundary counts as packed

    CHECK(max_delta_two_point(0.0, 1.0, Prior::uniform()) == doctest::Approx(0.5).epsilon(1e-15));
    CHECK(max_delta_two_point(Param(0.3), Param(0.7), 1.4, 0.6) ==
          doctest::Approx(0.168).epsilon(1e-12));
    CHECK_THROWS_AS(max_delta_two_point(Param(0.5), Param(0.5), 1.0, 1.0), std::invalid_argument);
    CHECK_THROWS_AS(max_delta_two_point(Param(0.3), Param(0.7), 0.0, 1.0), std::invalid_argument);
}

TEST_CASE("packing validation") {
    CHECK_THROWS_AS(verify_packing(Packing{{Param(0.5)}, 0.1, {1.0}, LossSpec::Rho::AbsDiff}),
                    DegenerateIndexSet);
    CHECK_THROWS_AS(
        verify_packing(Packing{{Param(0.3), Param(0.3)}, 0.0, {1.0, 1.0}, LossSpec::Rho::AbsDiff}),
        std::invalid_argument);
    CHECK_THROWS_AS(
        verify_packing(Packing{{Param(0.3), Param(0.7)}, 0.1, {1.0}, LossSpec::Rho::AbsDiff}),
        std::invalid_argument);
    CHECK_THROWS_AS(
        verify_packing(Packing{{Param(0.3), Param(0.7)}, 0.1, {1.0, 0.0}, LossSpec::Rho::AbsDiff}),
        std::invalid_argument);
    std::vector<Param> vec = cube_members(0.5, 2);
    CHECK_THROWS_AS(
        verify_packing(Packing{vec, 0.1, {1.0, 1.0, 1.0, 1.0}, LossSpec::Rho::AbsDiff}),
        UnsupportedMetric);
    // Same members are fine under the L1 metric.
    CHECK(verify_packing(Packing{vec, 0.5, {1.0, 1.0, 1.0, 1.0}, LossSpec::Rho::L1}).valid);
    CHECK_FALSE(
        verify_packing(Packing{vec, 0.5001, {1.0, 1.0, 1.0, 1.0}, LossSpec::Rho::L1}).valid);
}

TEST_CASE("hypercube vertex bookkeeping") {
    CHECK(hypercube_vertex(5, 3) == std::vector<int>{1, -1, 1});
    CHECK(hypercube_vertex(0, 2) == std::vector<int>{-1, -1});
    CHECK(hypercube_index({1, -1, 1}) == 5);
    for (int d = 1; d <= 4; ++d)
        for (int idx = 0; idx < (1 << d); ++idx)
            CHECK(hypercube_index(hypercube_vertex(idx, d)) == idx);
    CHECK_THROWS_AS(hypercube_index({1, 0, 1}), std::invalid_argument);

    CHECK(sign_decode(Param(std::vector<double>{0.3, -0.2, 0.0})) == std::vector<int>{1, -1, 1});
    CHECK(sign_decode(Param(std::vector<double>{-1e-300})) == std::vector<int>{-1});
}

TEST_CASE("hamming separation on the plain cube") {
    double t = 0.3;
    std::vector<Param> members = cube_members(t, 2);
    HammingSeparation sep{2, members, t, {1.0, 1.0, 1.0, 1.0}};
    CHECK(verify_hamming_separation(sep, members).valid);
    sep.delta = t * (1.0 + 1e-6);
    SeparationCheck bad = verify_hamming_separation(sep, members);
    CHECK_FALSE(bad.valid);
    CHECK(bad.lhs < bad.rhs);

    HammingSeparation zero{0, {}, 0.1, {}};
    CHECK_THROWS_AS(verify_hamming_separation(zero, {}), std::invalid_argument);
}

TEST_CASE("separation against a larger grid") {
    // Adding the point (0, t) moves the binding constraint: its decode is
    // (+1,+1), and member (-t,+t) sits at L1 distance t with one flipped
    // coordinate, so delta can be at most t/2.
    double t = 0.4;
    std::vector<Param> members = cube_members(t, 2);
    std::vector<Param> grid = members;
    grid.push_back(Param(std::vector<double>{0.0, t}));

    HammingSeparation ok{2, members, 0.5 * t, {1.0, 1.0, 1.0, 1.0}};
    CHECK(verify_hamming_separation(ok, grid).valid);

    HammingSeparation bad{2, members, 0.6 * t, {1.0, 1.0, 1.0, 1.0}};
    SeparationCheck chk = verify_hamming_separation(bad, grid);
    CHECK_FALSE(chk.valid);
    CHECK(chk.member == 2);      // the (-t,+t) vertex
    CHECK(chk.grid_index == 4);  // the appended point
}

TEST_CASE("scaled hypercube construction") {
    HammingSeparation sep = scaled_hypercube_separation(0.4, 2, {0.8, 1.2, 1.2, 0.8});
    CHECK(sep.d == 2);
    CHECK(sep.delta == doctest::Approx(0.2).epsilon(1e-15));
    REQUIRE(sep.members.size() == 4);
    CHECK(sep.members[0].coords() == std::vector<double>{-0.5, -0.5});
    CHECK(sep.members[3].coords() == std::vector<double>{0.5, 0.5});
    CHECK(sep.members[1][0] == doctest::Approx(0.4 / 1.2).epsilon(1e-15));
    CHECK(sep.members[1][1] == doctest::Approx(-0.4 / 1.2).epsilon(1e-15));
    CHECK(verify_hamming_separation(sep, sep.members).valid);

    for (int d = 1; d <= 3; ++d) {
        HammingSeparation u = scaled_hypercube_separation(0.3, d, std::vector<double>(
                                                                      static_cast<size_t>(1) << d, 1.0));
        CHECK(verify_hamming_separation(u, u.members).valid);
    }
    CHECK_THROWS_AS(scaled_hypercube_separation(0.3, 0, {}), std::invalid_argument);
    CHECK_THROWS_AS(scaled_hypercube_separation(-0.1, 1, {1.0, 1.0}), std::invalid_argument);
    CHECK_THROWS_AS(scaled_hypercube_separation(0.3, 1, {1.0}), std::invalid_argument);
}
