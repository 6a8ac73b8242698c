#include <doctest.h>

#include <cmath>
#include <stdexcept>
#include <random>

#include "nlgs/grid.hpp"

using namespace nlgs;

TEST_CASE("grid geometry is cell centred") {
    const Grid g{2, {2.0, 1.0}, {4, 2}};
    CHECK(g.size() == 8);
    CHECK(g.spacing()[0] == doctest::Approx(0.5));
    CHECK(g.cell_measure() == doctest::Approx(0.25));
    CHECK(g.domain_measure() == doctest::Approx(2.0));
    CHECK(g.node(0, 0) == doctest::Approx(0.25));
    CHECK(g.index(3, 1) == 7);
    const auto x = g.position(g.index(1, 1));
    CHECK(x[0] == doctest::Approx(0.75));
    CHECK(x[1] == doctest::Approx(0.75));
    CHECK(g.distance_to_boundary(g.index(0, 0)) == doctest::Approx(0.25));
}

TEST_CASE("one-dimensional grids carry a unit trailing axis") {
    const std::vector<double> ext{3.0};
    const std::vector<std::size_t> n{6};
    const Grid g = make_grid(1, ext, n);
    CHECK(g.counts()[1] == 1);
    CHECK(g.size() == 6);
    CHECK(g.domain_measure() == doctest::Approx(3.0));
    CHECK(integral(Field{g, 2.0}) == doctest::Approx(6.0));
}

TEST_CASE("make_grid rejects bad input") {
    const std::vector<double> ext{1.0, 1.0};
    const std::vector<std::size_t> n{8, 8};
    CHECK_THROWS_AS(make_grid(3, ext, n), std::invalid_argument);
    CHECK_THROWS_AS(make_grid(2, std::vector<double>{1.0, -1.0}, n), std::invalid_argument);
    CHECK_THROWS_AS(make_grid(2, ext, std::vector<std::size_t>{8, 0}), std::invalid_argument);
    CHECK_THROWS_AS(make_grid(2, std::vector<double>{1.0}, n), std::invalid_argument);
}

TEST_CASE("norms: homogeneity and the Hoelder chain on a box") {
    const Grid g{2, {1.0, 2.0}, {16, 24}};
    std::mt19937_64 rng{5};
    std::uniform_real_distribution<double> U{-1.0, 1.0};
    for (int trial = 0; trial < 20; ++trial) {
        Field z{g};
        for (std::size_t i = 0; i < z.size(); ++i)
            z[i] = U(rng);
        const double c = -3.5;
        for (NormKind k : {NormKind::sup, NormKind::L1, NormKind::L2})
            CHECK(norm(c * z, k) == doctest::Approx(std::abs(c) * norm(z, k)).epsilon(1e-13));
        const double omega = g.domain_measure();
        CHECK(norm(z, NormKind::L1) <= std::sqrt(omega) * norm(z, NormKind::L2) * (1 + 1e-14));
        CHECK(norm(z, NormKind::L2) <= std::sqrt(omega) * norm(z, NormKind::sup) * (1 + 1e-14));
        CHECK(inner(z, z) == doctest::Approx(std::pow(norm(z, NormKind::L2), 2)).epsilon(1e-13));
    }
}

TEST_CASE("field arithmetic and grid checks") {
    const Grid a{2, {1.0, 1.0}, {4, 4}};
    const Grid b{2, {1.0, 1.0}, {4, 5}};
    Field x{a, 1.0};
    x += Field{a, 2.0};
    CHECK(x.max() == 3.0);
    CHECK(x.min() == 3.0);
    CHECK_THROWS(x += Field{b, 1.0});
    x[3] = std::nan("");
    CHECK_FALSE(x.all_finite());
    const Field s = sample(a, [](double u, double v) { return u + 10 * v; });
    CHECK(s[a.index(0, 1)] == doctest::Approx(0.125 + 3.75));
}
