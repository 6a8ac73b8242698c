#include <doctest.h>

#include <cmath>
#include <stdexcept>
#include <numbers>

#include "nlgs/kernels.hpp"
#include "nlgs/local_reference.hpp"

using namespace nlgs;

namespace {
// exp(-1/(1-r^2)) moments from 30-digit adaptive quadrature
constexpr double bump_M0_2d = 0.466512393178330068879556171897;
constexpr double bump_m2_2d = 0.121904914872034244364287666189;
constexpr double bump_M0_1d = 0.443993816168079437823048921171;
constexpr double bump_m2_1d = 0.0702014767529754099883759076064;

Grid square(std::size_t n) { return Grid{2, {1.0, 1.0}, {n, n}}; }
} // namespace

TEST_CASE("bump moments match the high-precision oracle") {
    const KernelMoments m2d = kernel_moments(bump_profile(), 2);
    CHECK(m2d.M0 == doctest::Approx(bump_M0_2d).epsilon(1e-10));
    CHECK(m2d.m2 == doctest::Approx(bump_m2_2d).epsilon(1e-10));
    const KernelMoments m1d = kernel_moments(bump_profile(), 1);
    CHECK(m1d.M0 == doctest::Approx(bump_M0_1d).epsilon(1e-10));
    CHECK(m1d.m2 == doctest::Approx(bump_m2_1d).epsilon(1e-10));
}

TEST_CASE("indicator of the unit ball: M0 = pi, m2 = pi / 2, D = pi / 8") {
    const double pi = std::numbers::pi;
    const KernelMoments m = kernel_moments(indicator_profile(), 2, 4096);
    CHECK(m.M0 == doctest::Approx(pi).epsilon(1e-3));
    CHECK(m.m2 == doctest::Approx(pi / 2).epsilon(1e-3));
    CHECK(std::abs(effective_diffusivity(m.m2, 1.0, 2) - pi / 8) <= 1e-3);
    CHECK(effective_diffusivity(m.m2, 2.0, 2) == doctest::Approx(2 * effective_diffusivity(m.m2, 1.0, 2)));
}

TEST_CASE("moments scale with the radius") {
    const KernelMoments a = kernel_moments(bump_profile(1.0), 2);
    const KernelMoments b = kernel_moments(bump_profile(0.5), 2);
    CHECK(b.M0 == doctest::Approx(a.M0 * 0.25).epsilon(1e-10));
    CHECK(b.m2 == doctest::Approx(a.m2 * 0.0625).epsilon(1e-10));
    CHECK_THROWS_AS(kernel_moments(bump_profile(), 2, 32), std::invalid_argument);
}

TEST_CASE("profile validation") {
    CHECK_NOTHROW(validate_profile(bump_profile()));
    CHECK_NOTHROW(validate_profile(indicator_profile(2.0)));
    CHECK_THROWS(validate_profile(RadialProfile{"rising", 1.0, [](double r) { return r; }}));
    CHECK_THROWS(validate_profile(RadialProfile{"negative", 1.0, [](double) { return -1.0; }}));
    CHECK_THROWS(bump_profile(0.0));
    CHECK_THROWS(profile_by_name("gauss", 1.0));
    CHECK(bump_profile()(1.0) == 0.0);
    CHECK(bump_profile()(0.0) == doctest::Approx(std::exp(-1.0)));
}

TEST_CASE("kernel table layout") {
    const KernelTable t = build_kernel_table(KernelSpec{bump_profile(), 8, BoundaryMode::neumann_nonlocal, 1.0},
                                             square(64));
    REQUIRE(t.offsets.size() == t.weights.size());
    CHECK(t.offsets.size() == 193);
    // lexicographic, symmetric under negation, zero offset present
    bool sorted = true, zero = false;
    for (std::size_t k = 0; k < t.offsets.size(); ++k) {
        if (k > 0)
            sorted = sorted && t.offsets[k - 1] < t.offsets[k];
        zero = zero || (t.offsets[k][0] == 0 && t.offsets[k][1] == 0);
        const std::size_t mirror = t.offsets.size() - 1 - k;
        CHECK(t.offsets[mirror][0] == -t.offsets[k][0]);
        CHECK(t.weights[mirror] == t.weights[k]);
    }
    CHECK(sorted);
    CHECK(zero);
    // row mass approximates j^2 M0
    CHECK(t.row_mass_interior == doctest::Approx(64.0 * bump_M0_2d).epsilon(2e-2));
    CHECK(t.gamma_inf == t.row_mass_interior);
    CHECK(t.discrete_m2 == doctest::Approx(bump_m2_2d).epsilon(5.0 / 4096));
    CHECK(t.row_mass[t.grid.index(32, 32)] == doctest::Approx(t.row_mass_interior));
    CHECK(t.row_mass[0] < t.row_mass_interior);
    CHECK(t.row_mass[0] + t.exterior_mass[0] == doctest::Approx(t.row_mass_interior));
}

TEST_CASE("resolution guard names the cell count it needs") {
    const KernelSpec spec{bump_profile(), 16, BoundaryMode::neumann_nonlocal, 1.0};
    CHECK(minimum_cells_per_axis(spec, 1.0) == 64);
    CHECK_NOTHROW(build_kernel_table(spec, square(64)));
    try {
        build_kernel_table(spec, square(63));
        FAIL("guard did not fire");
    } catch (const std::invalid_argument& e) {
        CHECK(std::string{e.what()}.find("64 x 64") != std::string::npos);
    }
}

TEST_CASE("rescaling the profile radius is a change of variables") {
    // chi built from phi(x / r) with scale j equals r^(n+2) times chi from phi with scale j / r
    const Grid g = square(64);
    const KernelTable a = build_kernel_table(KernelSpec{bump_profile(2.0), 16, BoundaryMode::neumann_nonlocal, 1.0}, g);
    const KernelTable b = build_kernel_table(KernelSpec{bump_profile(1.0), 8, BoundaryMode::neumann_nonlocal, 1.0}, g);
    REQUIRE(a.offsets == b.offsets);
    for (std::size_t k = 0; k < a.weights.size(); ++k)
        CHECK(a.weights[k] == doctest::Approx(16.0 * b.weights[k]).epsilon(1e-13));
}

TEST_CASE("cached tables are shared and the summary is complete") {
    const KernelSpec spec{bump_profile(), 8, BoundaryMode::dirichlet_extension, 1.0};
    const auto first = cached_kernel_table(spec, square(64));
    const auto second = cached_kernel_table(spec, square(64));
    CHECK(first.get() == second.get());
    const auto s = kernel_summary(*first);
    for (const char* key : {"profile", "radius", "j", "M0", "m2", "gamma_inf", "offset_count", "boundary_mode"})
        CHECK(s.contains(key));
    CHECK(s["offset_count"] == 193);
    CHECK(to_string(boundary_mode_from_string("dirichlet_extension")) == "dirichlet_extension");
    CHECK_THROWS(boundary_mode_from_string("periodic"));
}
