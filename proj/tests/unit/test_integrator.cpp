#include <doctest.h>

#include <cmath>
#include <stdexcept>

#include "nlgs/integrator.hpp"
#include "nlgs/nonlocal_operator.hpp"

using namespace nlgs;

namespace {

Grid small() { return Grid{2, {1.0, 1.0}, {4, 4}}; }

State homogeneous(const Grid& g, double u, double v) { return State{0.0, Field{g, u}, Field{g, v}}; }

IntegratorConfig config(Scheme s, double dt, double t_end) {
    IntegratorConfig c;
    c.scheme = s;
    c.dt = dt;
    c.t_end = t_end;
    return c;
}

/// Scalar RK4 on the reaction ODE with a fine step.
std::pair<double, double> ode_reference(double u, double v, const ModelParams& p, double t_end) {
    const int n = 200000;
    const double h = t_end / n;
    for (int k = 0; k < n; ++k) {
        const auto [a1, b1] = reaction(u, v, p);
        const auto [a2, b2] = reaction(u + 0.5 * h * a1, v + 0.5 * h * b1, p);
        const auto [a3, b3] = reaction(u + 0.5 * h * a2, v + 0.5 * h * b2, p);
        const auto [a4, b4] = reaction(u + h * a3, v + h * b3, p);
        u += h * (a1 + 2 * a2 + 2 * a3 + a4) / 6;
        v += h * (b1 + 2 * b2 + 2 * b3 + b4) / 6;
    }
    return {u, v};
}

} // namespace

TEST_CASE("stability bound regression") {
    const ModelParams p{1.0, 1.0, 0.04, 0.01};
    CHECK(reaction_lipschitz(p, {2.0, 1.0}) == doctest::Approx(5.04).epsilon(1e-15));
    CHECK(stability_bound(p, 0.0, {2.0, 1.0}) == doctest::Approx(0.09920634920634921).epsilon(1e-15));
    CHECK(stability_bound(p, 10.0, {2.0, 1.0}) == doctest::Approx(0.5 / 25.04).epsilon(1e-15));
    CHECK_THROWS(stability_bound(p, 0.0, {2.0, 1.0}, 0.0));
}

TEST_CASE("u relaxes exactly to 1 when v = 0") {
    const Grid g = small();
    const ModelParams p{1.0, 1.0, 0.04, 0.01};
    const ZeroOperator zero{g};
    const DiffusionSystem sys = make_system(zero, p);
    const double exact = 1.0 + (0.3 - 1.0) * std::exp(-0.04 * 10.0);
    const Trajectory etd = integrate(homogeneous(g, 0.3, 0.0), p, sys, config(Scheme::imex_linear_decay, 0.05, 10.0));
    CHECK(etd.final_state().u[5] == doctest::Approx(exact).epsilon(1e-14));
    const Trajectory rk = integrate(homogeneous(g, 0.3, 0.0), p, sys, config(Scheme::rk4_explicit, 0.05, 10.0));
    CHECK(rk.final_state().u[5] == doctest::Approx(exact).epsilon(1e-10));
    CHECK(rk.final_state().v.max() == 0.0);
}

TEST_CASE("homogeneous data follow the reaction ODE with fourth-order accuracy") {
    const Grid g = small();
    const ModelParams p{1.0, 1.0, 0.04, 0.06};
    const ZeroOperator zero{g};
    const DiffusionSystem sys = make_system(zero, p);
    const auto [u_ref, v_ref] = ode_reference(0.6, 0.4, p, 4.0);
    for (Scheme s : {Scheme::rk4_explicit, Scheme::imex_linear_decay}) {
        const double e1 = std::abs(integrate(homogeneous(g, 0.6, 0.4), p, sys, config(s, 0.1, 4.0)).final_state().v[0] - v_ref);
        const double e2 = std::abs(integrate(homogeneous(g, 0.6, 0.4), p, sys, config(s, 0.05, 4.0)).final_state().v[0] - v_ref);
        CHECK(e1 < 1e-7);
        CHECK(e1 / e2 > 12.0);
        CHECK(std::abs(integrate(homogeneous(g, 0.6, 0.4), p, sys, config(s, 0.05, 4.0)).final_state().u[0] - u_ref) < 1e-8);
    }
}

TEST_CASE("semiflow property is bitwise") {
    const Grid g{2, {1.0, 1.0}, {32, 32}};
    const ModelParams p{1.0, 0.5, 0.04, 0.06};
    const NonlocalOperator op{KernelSpec{bump_profile(), 4, BoundaryMode::neumann_nonlocal, 1.0}, g};
    const DiffusionSystem sys = make_system(op, p);
    State s0{0.0, sample(g, [](double x, double y) { return 1.0 - 0.5 * std::exp(-20 * ((x - .4) * (x - .4) + y * y)); }),
             sample(g, [](double x, double y) { return 0.25 * std::exp(-20 * ((x - .5) * (x - .5) + (y - .6) * (y - .6))); })};
    for (Scheme s : {Scheme::rk4_explicit, Scheme::imex_linear_decay}) {
        // the a-priori box for d1 != d2 is far too loose to size a step, so pin it
        const auto run = [&](const State& from, double t_end) {
            IntegratorConfig c = config(s, 0.01, t_end);
            c.box_bounds = std::array<double, 2>{1.0, 1.0};
            return integrate(from, p, sys, c).final_state();
        };
        const State whole = run(s0, 1.0);
        const State half = run(s0, 0.5);
        const State rest = run(half, 1.0);
        const State stepped = step(half, p, sys, config(s, 0.01, 1.0));
        CHECK(stepped.t == doctest::Approx(0.51));
        for (std::size_t i = 0; i < g.size(); ++i) {
            REQUIRE(whole.u[i] == rest.u[i]);
            REQUIRE(whole.v[i] == rest.v[i]);
        }
    }
}

TEST_CASE("input validation") {
    const Grid g = small();
    const ModelParams p{1.0, 1.0, 0.04, 0.01};
    const ZeroOperator zero{g};
    const DiffusionSystem sys = make_system(zero, p);
    CHECK_THROWS_AS(integrate(homogeneous(g, 1.0, 0.0), p, sys, config(Scheme::rk4_explicit, 1.0, 10.0)),
                    std::invalid_argument);
    CHECK_THROWS_AS(integrate(homogeneous(g, 1.0, 0.0), p, sys, config(Scheme::rk4_explicit, 0.03, 1.0)),
                    std::invalid_argument);
    CHECK_THROWS_AS(integrate(homogeneous(g, -0.1, 0.0), p, sys, config(Scheme::rk4_explicit, 0.01, 1.0)),
                    std::invalid_argument);
    const Grid other{2, {1.0, 1.0}, {4, 5}};
    CHECK_THROWS(integrate(homogeneous(other, 1.0, 0.0), p, sys, config(Scheme::rk4_explicit, 0.01, 1.0)));
    CHECK(scheme_from_string(to_string(Scheme::imex_linear_decay)) == Scheme::imex_linear_decay);
    CHECK_THROWS(scheme_from_string("euler"));
}

TEST_CASE("semi-trivial state is exactly stationary with slack everywhere") {
    const Grid g{2, {1.0, 1.0}, {32, 32}};
    const ModelParams p{1.0, 1.0, 0.04, 0.01};
    const NonlocalOperator op{KernelSpec{bump_profile(), 4, BoundaryMode::neumann_nonlocal, 1.0}, g};
    IntegratorConfig c = config(Scheme::rk4_explicit, 0.02, 1.0);
    c.snapshot_every = 10;
    c.monitor_every = 7;
    const Trajectory t = integrate(homogeneous(g, 1.0, 0.0), p, make_system(op, p), c);
    CHECK(t.ok());
    CHECK(t.steps == 50);
    CHECK(t.snapshots.size() == 6);
    CHECK(t.monitors.size() == 9); // steps 0, 7, ..., 49 and the final step
    CHECK(t.monitors.back().t == doctest::Approx(1.0));
    for (const MonitorRow& r : t.monitors) {
        CHECK(r.ubu_slack <= 0.0);
        CHECK(r.ubv_slack <= 0.0);
        CHECK(r.decay_slack <= 0.0);
        CHECK(r.energy_slack <= 0.0);
        CHECK(r.min_v == 0.0);
    }
    CHECK(t.final_state().u.min() == 1.0);
    CHECK(t.final_state().u.max() == 1.0);
}

TEST_CASE("violations are recorded with location and capped") {
    const Grid g{2, {1.0, 1.0}, {8, 8}};
    const ModelParams p{1.0, 1.0, 0.04, 0.01};
    const ZeroOperator zero{g};
    IntegratorConfig c = config(Scheme::rk4_explicit, 0.01, 2.0);
    c.montol = -10.0; // every sample now counts as a violation
    const Trajectory t = integrate(homogeneous(g, 0.5, 0.1), p, make_system(zero, p), c);
    CHECK_FALSE(t.ok());
    CHECK(t.violation_count > 100);
    CHECK(t.violations.size() == 100);
    CHECK(t.violations.front().t == 0.0);
    CHECK(t.violations.front().bound >= 0.0);
}

TEST_CASE("non-finite values stop the run with the last valid state") {
    const Grid g = small();
    const ModelParams p{1.0, 1.0, 0.04, 0.01};
    const ZeroOperator zero{g};
    IntegratorConfig c = config(Scheme::rk4_explicit, 0.1, 1.0);
    c.box_bounds = std::array<double, 2>{1.0, 1.0};
    try {
        integrate(homogeneous(g, 1.0, 1e200), p, make_system(zero, p), c);
        FAIL("expected NonFiniteError");
    } catch (const NonFiniteError& e) {
        CHECK(e.last_valid_state.t == 0.0);
        CHECK(e.last_valid_state.v[0] == 1e200);
    }
}

TEST_CASE("a-priori bounds") {
    const Grid g = small();
    const ModelParams p{1.0, 1.0, 0.04, 0.01};
    const ZeroOperator zero{g};
    const DiffusionSystem sys = make_system(zero, p);
    const AprioriBounds b{homogeneous(g, 1.0, 0.025), p, sys};
    REQUIRE(b.decay_rate().has_value());
    CHECK(*b.decay_rate() == doctest::Approx(0.025).epsilon(1e-14));
    CHECK(b.decay(40.0) == doctest::Approx(0.025 * std::exp(-1.0)));
    CHECK(b.ubu(3.0) == 1.0);
    const AprioriBounds over{homogeneous(g, 2.0, 0.0), p, sys};
    CHECK(over.ubu(25.0) == doctest::Approx(1.0 + std::exp(-1.0)));
    CHECK(over.decay_rate().value() == doctest::Approx(0.05));
    const AprioriBounds no_decay{homogeneous(g, 2.0, 0.04), p, sys};
    CHECK_FALSE(no_decay.decay_rate().has_value());
    CHECK(std::isinf(no_decay.decay(1.0)));
}
