#include "nlgs/verify.hpp"

#include <chrono>
#include <cmath>
#include <numbers>
#include <random>
#include <sstream>
#include <stdexcept>

#include "nlgs/config.hpp"
#include "nlgs/gray_scott.hpp"
#include "nlgs/integrator.hpp"
#include "nlgs/io.hpp"
#include "nlgs/limit_study.hpp"
#include "nlgs/local_reference.hpp"
#include "nlgs/nonlocal_operator.hpp"

namespace nlgs {

using nlohmann::json;

Check check_at_most(std::string name, double actual, double bound, double tolerance) {
    return {std::move(name), Check::Relation::at_most, actual, bound, tolerance, actual <= bound + tolerance};
}

Check check_at_least(std::string name, double actual, double bound, double tolerance) {
    return {std::move(name), Check::Relation::at_least, actual, bound, tolerance, actual >= bound - tolerance};
}

Check check_near(std::string name, double actual, double expected, double tolerance) {
    return {std::move(name), Check::Relation::near, actual, expected, tolerance,
            std::abs(actual - expected) <= tolerance};
}

Check check_true(std::string name, bool holds) {
    return {std::move(name), Check::Relation::near, holds ? 1.0 : 0.0, 1.0, 0.0, holds};
}

bool CriterionResult::passed() const noexcept {
    if (!error.empty() || checks.empty())
        return false;
    for (const Check& c : checks) {
        if (!c.passed)
            return false;
    }
    return true;
}

namespace {

const char* relation_name(Check::Relation r) {
    switch (r) {
    case Check::Relation::at_most:
        return "<=";
    case Check::Relation::at_least:
        return ">=";
    case Check::Relation::near:
        return "~=";
    }
    return "?";
}

using Clock = std::chrono::steady_clock;

Grid square(std::size_t n) { return Grid{2, {1.0, 1.0}, {n, n}}; }

KernelSpec bump_kernel(int j, BoundaryMode mode = BoundaryMode::neumann_nonlocal) {
    return KernelSpec{bump_profile(1.0), j, mode, 1.0};
}

Field random_field(const Grid& g, std::mt19937_64& rng, double lo = 0.0, double hi = 1.0) {
    Field z{g};
    for (std::size_t i = 0; i < g.size(); ++i)
        z[i] = lo + (hi - lo) * (static_cast<double>(rng() >> 11) * 0x1.0p-53);
    return z;
}

/// Classical RK4 for dz/dt = d Gamma z, observed after every step.
void diffuse(const SpatialOperator& op, double d, Field& z, double dt, std::size_t steps,
             const std::function<void(std::size_t, const Field&)>& observe) {
    Field k1{z.grid()}, k2{z.grid()}, k3{z.grid()}, k4{z.grid()}, stage{z.grid()};
    for (std::size_t s = 1; s <= steps; ++s) {
        op.apply(z, k1);
        stage = z;
        for (std::size_t i = 0; i < z.size(); ++i)
            stage[i] += 0.5 * dt * d * k1[i];
        op.apply(stage, k2);
        stage = z;
        for (std::size_t i = 0; i < z.size(); ++i)
            stage[i] += 0.5 * dt * d * k2[i];
        op.apply(stage, k3);
        stage = z;
        for (std::size_t i = 0; i < z.size(); ++i)
            stage[i] += dt * d * k3[i];
        op.apply(stage, k4);
        for (std::size_t i = 0; i < z.size(); ++i)
            z[i] += dt * d * (k1[i] + 2.0 * k2[i] + 2.0 * k3[i] + k4[i]) / 6.0;
        observe(s, z);
    }
}

/// Largest dt = T / m below `bound`.
double dividing_step(double T, double bound) {
    return T / std::ceil(T / bound - 1e-12);
}

double max_abs(const Field& z) { return norm(z, NormKind::sup); }

std::string format_sci(double x) {
    std::ostringstream os;
    os.precision(3);
    os << std::scientific << x;
    return os.str();
}

} // namespace

json to_json(const Check& c) {
    return {{"name", c.name},     {"relation", relation_name(c.relation)}, {"actual", c.actual},
            {"expected", c.expected}, {"tolerance", c.tolerance},          {"passed", c.passed}};
}

json to_json(const CriterionResult& r) {
    json checks = json::array();
    for (const Check& c : r.checks)
        checks.push_back(to_json(c));
    json j = {{"id", r.id}, {"title", r.title}, {"passed", r.passed()}, {"seconds", r.seconds}, {"checks", checks}};
    if (!r.error.empty())
        j["error"] = r.error;
    return j;
}

std::string summary_line(const CriterionResult& r) {
    std::ostringstream os;
    os << (r.passed() ? "PASS" : "FAIL") << " [" << r.id << "] " << r.title << " (" << std::fixed;
    os.precision(1);
    os << r.seconds << " s)";
    if (!r.error.empty())
        os << "\n    error: " << r.error;
    for (const Check& c : r.checks) {
        if (!c.passed) {
            os << "\n    " << c.name << ": actual " << format_sci(c.actual) << ' ' << relation_name(c.relation)
               << " expected " << format_sci(c.expected) << " (tolerance " << format_sci(c.tolerance) << ")";
        }
    }
    return os.str();
}

CriterionResult verify_contraction() {
    CriterionResult r{1, "operator contraction: sup norm non-increasing, positivity kept", {}, {}, 0.0};
    const Grid g = square(64);
    const NonlocalOperator op{bump_kernel(8), g};
    const double dt = dividing_step(1.0, 0.5 / op.sup_norm_bound());
    const auto steps = static_cast<std::size_t>(std::lround(1.0 / dt));
    std::mt19937_64 rng{20241};
    double worst_growth = -std::numeric_limits<double>::infinity();
    double worst_min = std::numeric_limits<double>::infinity();
    for (int trial = 0; trial < 10; ++trial) {
        Field z = random_field(g, rng);
        double previous = z.max();
        worst_min = std::min(worst_min, z.min());
        diffuse(op, 1.0, z, dt, steps, [&](std::size_t, const Field& s) {
            const double sup = s.max();
            worst_growth = std::max(worst_growth, sup - previous);
            previous = sup;
            worst_min = std::min(worst_min, s.min());
        });
    }
    r.checks.push_back(check_at_most("largest one-step growth of sup z", worst_growth, 0.0, 1e-8));
    r.checks.push_back(check_at_least("smallest value of z", worst_min, 0.0, 1e-10));
    return r;
}

CriterionResult verify_dirichlet() {
    CriterionResult r{2, "constant annihilation and Dirichlet sub-Markov property", {}, {}, 0.0};
    const Grid g = square(64);
    const NonlocalOperator neumann{bump_kernel(8), g};
    const Field one{g, 1.0};
    const double eps = std::numeric_limits<double>::epsilon();
    r.checks.push_back(check_at_most("|Gamma 1| fast path (neumann)", max_abs(neumann(one)), 0.0,
                                     eps * neumann.row_mass_bound()));
    r.checks.push_back(check_at_most("|Gamma 1| dense path (neumann)", max_abs(neumann.apply_dense(one)), 0.0,
                                     eps * neumann.row_mass_bound()));

    const NonlocalOperator dirichlet{bump_kernel(8, BoundaryMode::dirichlet_extension), g};
    const double dt = dividing_step(1.0, 0.5 / dirichlet.sup_norm_bound());
    Field z = one;
    double worst = z.max();
    diffuse(dirichlet, 1.0, z, dt, static_cast<std::size_t>(std::lround(1.0 / dt)),
            [&](std::size_t, const Field& s) { worst = std::max(worst, s.max()); });
    r.checks.push_back(check_at_most("max of exp(t Gamma) 1, t in [0,1] (dirichlet)", worst, 1.0, 1e-12));
    r.checks.push_back(check_at_least("min of exp(t Gamma) 1 at t = 1 (dirichlet)", z.min(), 0.0));

    // the full system started at (1, 0) keeps u <= 1 as well
    const ModelParams p{1.0, 1.0, 0.04, 0.01};
    IntegratorConfig ic;
    ic.t_end = 1.0;
    const DiffusionSystem sys = make_system(dirichlet, p);
    const State s0{0.0, one, Field{g, 0.0}};
    ic.dt = dividing_step(1.0, stability_bound(p, sys, AprioriBounds{s0, p, sys}.box()));
    ic.monitor_every = 1;
    const Trajectory traj = integrate(s0, p, sys, ic);
    double sup_u = 0.0;
    for (const MonitorRow& row : traj.monitors)
        sup_u = std::max(sup_u, row.sup_u);
    r.checks.push_back(check_at_most("sup u for Gray-Scott from (1, 0) (dirichlet)", sup_u, 1.0, 1e-12));
    return r;
}

CriterionResult verify_quadratic_identity() {
    CriterionResult r{3, "quadratic identity and Laplacian consistency", {}, {}, 0.0};
    const Grid g = square(64);
    const NonlocalOperator op{bump_kernel(8), g};
    const Field q = sample(g, [](double x, double y) { return x * x + y * y; });
    const Field gq = op(q);
    const double m2 = op.table().m2;
    const double reach = op.table().spec.support_radius();
    double worst = 0.0;
    for (std::size_t c = 0; c < g.size(); ++c) {
        if (g.distance_to_boundary(c) > reach)
            worst = std::max(worst, std::abs(gq[c] - m2) / m2);
    }
    const double h = g.max_spacing();
    r.checks.push_back(check_at_most("relative |Gamma |x|^2 - m2| at interior nodes, j = 8", worst, 5.0 * h * h));

    const double pi = std::numbers::pi;
    const Field W = sample(g, [pi](double x, double y) { return std::sin(2 * pi * x) * std::cos(2 * pi * y); });
    const Field lap_W = (-8.0 * pi * pi) * W;
    double previous = std::numeric_limits<double>::infinity();
    for (int j : {4, 8, 16}) {
        const double e = laplacian_consistency(NonlocalOperator{bump_kernel(j), g}, W, lap_W);
        r.checks.push_back(check_at_most("consistency error j = " + std::to_string(j) + " below the previous j",
                                         e, previous));
        if (e >= previous)
            r.checks.back().passed = false;
        previous = e;
    }
    return r;
}

CriterionResult verify_apriori_bounds() {
    CriterionResult r{4, "a-priori bounds on u and u + v", {}, {}, 0.0};
    const Grid g = square(64);
    const ModelParams p{1.0, 1.0, 0.04, 0.01};
    const NonlocalOperator op{bump_kernel(8), g};
    const DiffusionSystem sys = make_system(op, p);
    InitialSpec init{"gaussian_bump", {{"u_base", 1.0}, {"u_amp", 1.0}, {"v_amp", 0.25}}, "", ""};
    const State s0 = make_initial(init, g, p);
    r.checks.push_back(check_near("sup u0", s0.u.max(), 2.0, 1e-12));

    const AprioriBounds bounds{s0, p, sys};
    IntegratorConfig ic;
    ic.t_end = 50.0;
    ic.dt = dividing_step(ic.t_end, stability_bound(p, sys, bounds.box()));
    ic.monitor_every = 5;
    ic.montol = 1e-6;
    const Trajectory traj = integrate(s0, p, sys, ic);

    double worst_u = -std::numeric_limits<double>::infinity();
    double worst_h = -std::numeric_limits<double>::infinity();
    for (const MonitorRow& row : traj.monitors) {
        worst_u = std::max(worst_u, row.sup_u - (1.0 + std::exp(-p.f * row.t)));
        worst_h = std::max(worst_h, row.ubv_slack);
    }
    r.checks.push_back(check_at_most("max over samples of sup u - (1 + exp(-f t))", worst_u, 0.0, 1e-6));
    r.checks.push_back(check_at_most("max over samples of sup(u + v) - ubv(t)", worst_h, 0.0, 1e-6));
    r.checks.push_back(check_at_most("integrator violations", static_cast<double>(traj.violation_count), 0.0));
    return r;
}

CriterionResult verify_stabilization() {
    CriterionResult r{5, "exponential decay of v and return of u to 1", {}, {}, 0.0};
    const Grid g = square(32);
    const ModelParams p{1.0, 1.0, 0.04, 0.01};
    const NonlocalOperator op{bump_kernel(4), g};
    const DiffusionSystem sys = make_system(op, p);
    const InitialSpec init{"thm12_decay", {{"delta", 0.0}, {"v_fraction", 0.5}}, "", ""};
    const State s0 = make_initial(init, g, p);
    const double v0 = s0.v.max();
    r.checks.push_back(check_near("sup v0", v0, 0.5 * (p.f + p.kappa), 1e-15));
    r.checks.push_back(check_at_most("sup u0", s0.u.max(), 1.0));

    const AprioriBounds bounds{s0, p, sys};
    const double eps = bounds.decay_rate().value_or(std::nan(""));
    r.checks.push_back(check_near("largest admissible decay rate", eps, 0.025, 1e-15));

    IntegratorConfig ic;
    ic.t_end = 200.0;
    ic.dt = dividing_step(ic.t_end, stability_bound(p, sys, bounds.box()));
    ic.monitor_every = 1;
    const Trajectory traj = integrate(s0, p, sys, ic);
    double worst = 0.0;
    for (const MonitorRow& row : traj.monitors)
        worst = std::max(worst, row.sup_v / (std::exp(-eps * row.t) * v0));
    r.checks.push_back(check_at_most("max over samples of sup v / (exp(-eps t) sup v0)", worst, 1.0 + 1e-6));
    const Field dev = traj.final_state().u - Field{g, 1.0};
    r.checks.push_back(check_at_most("|u(200) - 1|_inf", max_abs(dev), 1e-3));
    return r;
}

CriterionResult verify_steady_states() {
    CriterionResult r{6, "homogeneous steady states and regime classification", {}, {}, 0.0};
    std::mt19937_64 rng{777};
    std::uniform_real_distribution<double> unit{0.0, 1.0};
    double worst_residual = 0.0, worst_product = 0.0;
    bool regimes_ok = true;
    for (int k = 0; k < 100; ++k) {
        const double f = 0.01 + 0.2 * unit(rng);
        const double kappa_max = std::sqrt(f) / 2.0 - f;
        ModelParams p{1.0, 1.0, f, kappa_max * (0.02 + 0.96 * unit(rng))};
        const SteadyStateReport rep = steady_states(p);
        regimes_ok = regimes_ok && rep.regime == Regime::s3 && rep.discriminant > 0.0 && rep.states.size() == 3;
        for (std::size_t s = 1; s < rep.states.size(); ++s) {
            const auto [F1, F2] = reaction(rep.states[s].u, rep.states[s].v, p);
            worst_residual = std::max({worst_residual, std::abs(F1), std::abs(F2)});
            worst_product = std::max(worst_product, std::abs(rep.states[s].u * rep.states[s].v - (f + p.kappa)));
        }
        // same f beyond the fold: only the semi-trivial state survives
        p.kappa = kappa_max * (1.05 + unit(rng));
        const SteadyStateReport s1 = steady_states(p);
        regimes_ok = regimes_ok && s1.regime == Regime::s1 && s1.discriminant < 0.0 && s1.states.size() == 1;
    }
    // dyadic parameters on the fold f = 4 (f + kappa)^2 make the discriminant exactly zero
    for (double a : {0.125, 0.1875, 0.15625}) {
        const ModelParams p{1.0, 1.0, 4.0 * a * a, a - 4.0 * a * a};
        const SteadyStateReport rep = steady_states(p);
        regimes_ok = regimes_ok && rep.discriminant == 0.0 && rep.regime == Regime::s2 && rep.states.size() == 2;
    }
    r.checks.push_back(check_at_most("max reaction residual at (u+-, v+-)", worst_residual, 1e-12));
    r.checks.push_back(check_at_most("max |u v - (f + kappa)|", worst_product, 1e-12));
    r.checks.push_back(check_true("regime matches the discriminant sign", regimes_ok));
    return r;
}

namespace {

struct EnergyDefects {
    double worst_residual = 0.0; ///< max |balance residual| over steps
    double worst_excess = 0.0;   ///< max positive part of the inequality defect
};

/// Per step: r = (|u+|^2 - |u|^2)/dt + trapezoid average of
/// d1 Y[u] + 2|uv|^2 + 2f|u|^2 - 2f int u, which vanishes for the exact flow.
EnergyDefects energy_defects(const State& s0, const ModelParams& p, const NonlocalOperator& op, double dt,
                             double t_end) {
    const DiffusionSystem sys = make_system(op, p);
    IntegratorConfig ic;
    ic.dt = dt;
    ic.t_end = t_end;
    ic.monitor_every = 1000000;
    const double omega = s0.u.grid().domain_measure();
    struct Terms {
        double l2sq, Y, uv, mass;
    };
    const auto terms = [&](const State& s) {
        Field uv = s.u;
        for (std::size_t i = 0; i < uv.size(); ++i)
            uv[i] *= s.v[i];
        const double l2 = norm(s.u, NormKind::L2);
        const double luv = norm(uv, NormKind::L2);
        return Terms{l2 * l2, op.dissipation(s.u), luv * luv, integral(s.u)};
    };
    const auto rate = [&](const Terms& t) {
        return p.d1 * t.Y + 2.0 * t.uv + 2.0 * p.f * t.l2sq - 2.0 * p.f * t.mass;
    };
    EnergyDefects out;
    Terms previous = terms(s0);
    const StepObserver observer = [&](const State&, const State& after) {
        const Terms current = terms(after);
        const double change = (current.l2sq - previous.l2sq) / dt;
        const double residual = change + 0.5 * (rate(previous) + rate(current));
        out.worst_residual = std::max(out.worst_residual, std::abs(residual));
        // d/dt |u|^2 + d1 Y + 2|uv|^2 + f|u|^2 - f|Omega| = -f |u - 1|^2 <= 0
        const double ineq = change + 0.5 * (p.d1 * (previous.Y + current.Y) + 2.0 * (previous.uv + current.uv) +
                                            p.f * (previous.l2sq + current.l2sq)) -
                            p.f * omega;
        out.worst_excess = std::max(out.worst_excess, ineq);
        previous = current;
    };
    integrate(s0, p, sys, ic, observer);
    return out;
}

} // namespace

CriterionResult verify_energy_dissipation() {
    CriterionResult r{7, "discrete energy dissipation", {}, {}, 0.0};
    const Grid g = square(64);
    const ModelParams p{1.0, 1.0, 0.04, 0.06};
    const NonlocalOperator op{bump_kernel(8), g};
    const DiffusionSystem sys = make_system(op, p);
    const InitialSpec init{"gaussian_bump", {{"u_amp", -0.5}, {"v_amp", 0.25}}, "", ""};
    const State s0 = make_initial(init, g, p);
    const double t_end = 10.0;
    const double dt = dividing_step(t_end, stability_bound(p, sys, AprioriBounds{s0, p, sys}.box()));
    const EnergyDefects coarse = energy_defects(s0, p, op, dt, t_end);
    const EnergyDefects fine = energy_defects(s0, p, op, 0.5 * dt, t_end);
    r.checks.push_back(check_at_most("worst per-step balance residual, dt", coarse.worst_residual, 1e-3));
    r.checks.push_back(check_at_most("worst per-step inequality excess, dt", coarse.worst_excess, 1e-3));
    r.checks.push_back(check_at_most("worst per-step inequality excess, dt/2", fine.worst_excess, 1e-3));
    r.checks.push_back(check_at_least("residual reduction under dt halving", coarse.worst_residual /
                                      fine.worst_residual, 3.0));
    return r;
}

CriterionResult verify_diffusive_limit() {
    CriterionResult r{8, "diffusive limit and weak formulation", {}, {}, 0.0};
    const LimitStudyConfig study;
    const LimitStudyReport rep = run_limit_study(study);
    r.checks.push_back(check_true("all study runs finished without violations", rep.ok()));
    if (!rep.ok())
        r.error = rep.error;
    if (rep.runs.size() == study.j_ladder.size()) {
        r.checks.push_back(check_true("space-time error in u strictly decreasing in j", rep.monotone_u));
        r.checks.push_back(check_true("space-time error in v strictly decreasing in j", rep.monotone_v));
        r.checks.push_back(check_at_most("err_u(16) / err_u(4)", rep.reduction_u, 0.5));
        r.checks.push_back(check_at_most("err_v(16) / err_v(4)", rep.reduction_v, 0.5));
    }

    const double pi = std::numbers::pi;
    const TestFunction theta{
        [pi](double x, double y) { return std::cos(pi * x) * std::cos(pi * y); },
        [pi](double x, double y) {
            return std::array<double, 2>{-pi * std::sin(pi * x) * std::cos(pi * y),
                                         -pi * std::cos(pi * x) * std::sin(pi * y)};
        }};
    const ModelParams& p = study.model;
    const double m2 = kernel_moments(study.profile.make(), 2).m2;
    // off-centre bump: data symmetric about x = 1/2 pair to zero with theta
    InitialSpec initial = study.initial;
    initial.params["center"] = {0.35, 0.4};
    std::array<double, 2> residual_u{}, residual_v{};
    for (int level = 0; level < 2; ++level) {
        const Grid g = square(64u << level);
        const State s0 = make_initial(initial, g, p);
        IntegratorConfig ic;
        ic.dt = 2e-4 / (1 << level);
        ic.t_end = 1.0;
        ic.snapshot_every = 40;
        ic.monitor_every = 1000;
        const Trajectory traj = integrate_local(s0, p, LocalSpec{LaplacianBc::neumann, m2}, ic);
        residual_u[level] = weak_residual(traj, p, effective_diffusivity(m2, p.d1, 2), theta, Species::u);
        residual_v[level] = weak_residual(traj, p, effective_diffusivity(m2, p.d2, 2), theta, Species::v);
    }
    r.checks.push_back(check_at_most("weak residual u, 64^2", residual_u[0], 1e-2));
    r.checks.push_back(check_at_most("weak residual v, 64^2", residual_v[0], 1e-2));
    r.checks.push_back(check_at_least("weak residual u reduction under h, dt halving",
                                      residual_u[0] / residual_u[1], 3.0));
    r.checks.push_back(check_at_least("weak residual v reduction under h, dt halving",
                                      residual_v[0] / residual_v[1], 3.0));
    return r;
}

CriterionResult verify_dissipation_functionals() {
    CriterionResult r{9, "consistency of Y and Lambda", {}, {}, 0.0};
    const Grid g = square(32);
    const NonlocalOperator op{bump_kernel(4), g};
    const RhoProfile rho = rho_from_profile(bump_profile(1.0), 2);
    std::mt19937_64 rng{99};
    double worst_lambda = 0.0, worst_energy = 0.0;
    for (int trial = 0; trial < 10; ++trial) {
        const Field z = random_field(g, rng, -1.0, 1.0);
        const double Y = dissipation_Y(op, z);
        const double Lambda = seminorm_Lambda(rho, 4, z);
        worst_lambda = std::max(worst_lambda, std::abs(Lambda - Y / op.table().m2) / (Y / op.table().m2));
        worst_energy = std::max(worst_energy, std::abs(Y + 2.0 * inner(z, op(z))) / Y);
    }
    r.checks.push_back(check_at_most("relative |Lambda - Y / m2|", worst_lambda, 1e-12));
    r.checks.push_back(check_at_most("relative |Y + 2 (z, Gamma z)|", worst_energy, 1e-10));

    // brute-force pair sum on 8 x 8 with the kernel evaluated directly
    const Grid small = square(8);
    const NonlocalOperator op8{bump_kernel(2), small};
    const Field z = random_field(small, rng);
    const double scale = std::pow(2.0, 4);
    const double cm = small.cell_measure();
    double brute = 0.0;
    for (std::size_t a = 0; a < small.size(); ++a) {
        const auto xa = small.position(a);
        for (std::size_t b = 0; b < small.size(); ++b) {
            const auto xb = small.position(b);
            const double dist = std::hypot(xa[0] - xb[0], xa[1] - xb[1]);
            const double w = scale * bump_profile(1.0)(2.0 * dist);
            brute += w * (z[a] - z[b]) * (z[a] - z[b]) * cm * cm;
        }
    }
    r.checks.push_back(check_at_most("relative |Y - brute force| on 8 x 8",
                                     std::abs(dissipation_Y(op8, z) - brute) / brute, 1e-12));
    return r;
}

CriterionResult verify_fast_path() {
    CriterionResult r{10, "fast and dense operator paths agree", {}, {}, 0.0};
    const Grid g = square(32);
    std::mt19937_64 rng{4242};
    for (BoundaryMode mode : {BoundaryMode::neumann_nonlocal, BoundaryMode::dirichlet_extension}) {
        for (int j : {4, 8}) {
            const NonlocalOperator op{bump_kernel(j, mode), g};
            const Field z = random_field(g, rng);
            const Field fast = op(z);
            const Field dense = op.apply_dense(z);
            r.checks.push_back(check_at_most(to_string(mode) + " j = " + std::to_string(j) +
                                                 ": |fast - dense|_inf / |dense|_inf",
                                             max_abs(fast - dense) / max_abs(dense), 1e-12));
        }
    }
    return r;
}

CriterionResult run_criterion(int id) {
    static const std::function<CriterionResult()> table[] = {
        verify_contraction,        verify_dirichlet,        verify_quadratic_identity,    verify_apriori_bounds,
        verify_stabilization,      verify_steady_states,    verify_energy_dissipation,    verify_diffusive_limit,
        verify_dissipation_functionals, verify_fast_path};
    if (id < 1 || id > 10)
        throw std::invalid_argument("criterion id must be between 1 and 10");
    const auto start = Clock::now();
    CriterionResult r;
    try {
        r = table[id - 1]();
    } catch (const std::exception& e) {
        r.id = id;
        r.title = "criterion " + std::to_string(id);
        r.error = e.what();
    }
    r.seconds = std::chrono::duration<double>(Clock::now() - start).count();
    return r;
}

const std::vector<std::string>& suite_names() {
    static const std::vector<std::string> names{"operator", "dirichlet", "bounds", "decay", "steady", "limit", "all"};
    return names;
}

std::vector<int> suite_criteria(const std::string& suite) {
    if (suite == "operator")
        return {1, 3, 9, 10};
    if (suite == "dirichlet")
        return {2};
    if (suite == "bounds")
        return {4, 7};
    if (suite == "decay")
        return {5};
    if (suite == "steady")
        return {6};
    if (suite == "limit")
        return {8};
    if (suite == "all")
        return {1, 2, 3, 4, 5, 6, 7, 8, 9, 10};
    throw std::invalid_argument("unknown verify suite '" + suite +
                                "' (expected operator, dirichlet, bounds, decay, steady, limit or all)");
}

} // namespace nlgs
