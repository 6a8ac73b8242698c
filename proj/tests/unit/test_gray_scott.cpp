#include <doctest.h>

#include <cmath>
#include <stdexcept>

#include "nlgs/gray_scott.hpp"

using namespace nlgs;

TEST_CASE("reaction terms") {
    const ModelParams p{1.0, 1.0, 0.04, 0.01};
    const auto [F1, F2] = reaction(0.5, 0.2, p);
    CHECK(F1 == doctest::Approx(-0.5 * 0.04 + 0.04 * 0.5));
    CHECK(F2 == doctest::Approx(0.5 * 0.04 - 0.05 * 0.2));
    const auto [G1, G2] = reaction(1.0, 0.0, p);
    CHECK(G1 == 0.0);
    CHECK(G2 == 0.0);
}

TEST_CASE("parameter validation") {
    CHECK_NOTHROW((ModelParams{1.0, 2.0, 0.04, 0.01}.validate()));
    CHECK_THROWS((ModelParams{0.0, 1.0, 0.04, 0.01}.validate()));
    CHECK_THROWS((ModelParams{1.0, 1.0, -0.04, 0.01}.validate()));
    CHECK_THROWS((ModelParams{1.0, 1.0, 0.04, std::nan("")}.validate()));
}

TEST_CASE("three homogeneous states at f = 0.04, kappa = 0.01") {
    const ModelParams p{1.0, 1.0, 0.04, 0.01};
    const SteadyStateReport r = steady_states(p);
    REQUIRE(r.regime == Regime::s3);
    REQUIRE(r.states.size() == 3);
    CHECK(r.discriminant == doctest::Approx(0.0012).epsilon(1e-14));
    const double root3 = std::sqrt(3.0);
    CHECK(r.states[0].u == 1.0);
    CHECK(r.states[0].v == 0.0);
    CHECK(r.states[1].u == doctest::Approx((2.0 - root3) / 4.0).epsilon(1e-14));
    CHECK(r.states[1].v == doctest::Approx(0.4 + 0.2 * root3).epsilon(1e-14));
    CHECK(r.states[2].u == doctest::Approx((2.0 + root3) / 4.0).epsilon(1e-14));
    CHECK(r.states[2].v == doctest::Approx(0.4 - 0.2 * root3).epsilon(1e-14));
    for (const auto& s : r.states) {
        const auto [F1, F2] = reaction(s.u, s.v, p);
        CHECK(std::abs(F1) < 1e-15);
        CHECK(std::abs(F2) < 1e-15);
    }
}

TEST_CASE("regimes s1 and s2") {
    const SteadyStateReport s1 = steady_states(ModelParams{1.0, 1.0, 0.04, 0.2});
    CHECK(s1.regime == Regime::s1);
    CHECK(s1.states.size() == 1);
    // f = 4 (f + kappa)^2 with dyadic values
    const SteadyStateReport s2 = steady_states(ModelParams{1.0, 1.0, 0.0625, 0.0625});
    CHECK(s2.regime == Regime::s2);
    CHECK(s2.discriminant == 0.0);
    REQUIRE(s2.states.size() == 2);
    CHECK(s2.states[1].u == doctest::Approx(0.5));
    CHECK(s2.states[1].v == doctest::Approx(0.25));
    CHECK(to_string(Regime::s2) == "s2");
}

TEST_CASE("stability of the homogeneous states") {
    const ModelParams p{1.0, 1.0, 0.04, 0.01};
    const SteadyStateReport r = steady_states(p);
    const StabilityReport trivial = classify_stability_homogeneous(p, r.states[0]);
    CHECK(trivial.stability == Stability::stable);
    CHECK(trivial.eigenvalues[0].real() == doctest::Approx(-0.04));
    CHECK(trivial.eigenvalues[1].real() == doctest::Approx(-0.05));
    // the middle branch (u-, v-) is a saddle
    CHECK(classify_stability_homogeneous(p, r.states[2]).stability == Stability::unstable);
    CHECK(classify_stability_homogeneous(p, r.states[1]).stability == Stability::stable);

    const auto J = reaction_jacobian(0.5, 0.2, p);
    CHECK(J[0][0] == doctest::Approx(-0.04 - 0.04));
    CHECK(J[0][1] == doctest::Approx(-0.2));
    CHECK(J[1][0] == doctest::Approx(0.04));
    CHECK(J[1][1] == doctest::Approx(0.2 - 0.05));
}
