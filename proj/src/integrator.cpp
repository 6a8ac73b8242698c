#include "nlgs/integrator.hpp"
#include "nlgs/io.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <limits>
#include <numbers>

namespace nlgs {

void ZeroOperator::apply(const Field&, Field& out) const {
    for (double& x : out.values())
        x = 0.0;
}

double DiffusionSystem::gamma_inf() const noexcept {
    return std::max(u_op->row_mass_bound(), v_op->row_mass_bound());
}

DiffusionSystem make_system(const SpatialOperator& op, const ModelParams& p) {
    return make_system(op, p.d1, p.d2);
}

DiffusionSystem make_system(const SpatialOperator& op, double d_u, double d_v) {
    return DiffusionSystem{&op, &op, d_u, d_v, 0.0};
}

std::string to_string(Scheme s) { return s == Scheme::rk4_explicit ? "rk4_explicit" : "imex_linear_decay"; }

Scheme scheme_from_string(const std::string& s) {
    if (s == "rk4_explicit")
        return Scheme::rk4_explicit;
    if (s == "imex_linear_decay")
        return Scheme::imex_linear_decay;
    throw std::invalid_argument("unknown integration scheme '" + s + "'");
}

AprioriBounds::AprioriBounds(const State& initial, const ModelParams& p, const DiffusionSystem& sys)
    : _t0{initial.t}
    , _f{p.f}
    , _sup_u0{norm(initial.u, NormKind::sup)}
    , _sup_h0{norm(initial.u + initial.v, NormKind::sup)}
    , _v0{norm(initial.v, NormKind::sup)}
    , _ubv_limit{0.0}
    , _energy_valid{sys.shared_operator()}
    , _c2{0.0}
    , _energy0{0.0}
    , _domain{initial.u.grid().domain_measure()} {
    const double drive = 2.0 * (std::abs(sys.d_u - sys.d_v) * sys.gamma_inf() + sys.kernel_difference_mass * sys.d_v) *
                         (1.0 + _sup_u0);
    _ubv_limit = (drive + p.f) / p.f;
    const bool kernels = sys.u_op->bounded_kernel() && sys.v_op->bounded_kernel();
    if (!kernels && sys.d_u != sys.d_v)
        _ubv_limit = std::numeric_limits<double>::infinity();

    const double delta = std::max(_sup_u0 - 1.0, 0.0);
    const double eps = p.f + p.kappa - (1.0 + delta) * _v0;
    if (eps >= 0.0)
        _epsilon = eps;

    const double dd = sys.d_u - sys.d_v;
    _c2 = sys.d_u * sys.d_v / (1.0 + dd * dd);
    const double nu = norm(initial.u, NormKind::L2);
    const double nh = norm(initial.u + initial.v, NormKind::L2);
    _energy0 = nu * nu + _c2 * nh * nh;
}

double AprioriBounds::ubu(double t) const noexcept {
    return 1.0 + std::exp(-_f * (t - _t0)) * std::max(_sup_u0 - 1.0, 0.0);
}

double AprioriBounds::ubv(double t) const noexcept {
    if (!std::isfinite(_ubv_limit))
        return _ubv_limit;
    const double e = std::exp(-_f * (t - _t0));
    return e * _sup_h0 + (1.0 - e) * _ubv_limit;
}

double AprioriBounds::decay(double t) const noexcept {
    return _epsilon ? std::exp(-*_epsilon * (t - _t0)) * _v0 : std::numeric_limits<double>::infinity();
}

std::optional<double> AprioriBounds::energy(double t) const noexcept {
    if (!_energy_valid)
        return std::nullopt;
    const double e = std::exp(-_f * (t - _t0));
    const double combined = e * _energy0 + (1.0 + _c2) * _domain * (1.0 - e);
    return std::max(3.0, 2.0 / _c2) * combined;
}

std::array<double, 2> AprioriBounds::box() const noexcept {
    return {std::max(1.0, _sup_u0), std::max(_sup_h0, _ubv_limit)};
}

double reaction_lipschitz(const ModelParams& p, const std::array<double, 2>& box) {
    const double U = box[0];
    const double V = box[1];
    const double fk = p.f + p.kappa;
    // Row sums are monotone in u and v except |2uv - (f+kappa)|, whose max is at a corner.
    const double row1 = V * V + p.f + 2.0 * U * V;
    const double row2 = V * V + std::max(2.0 * U * V - fk, fk);
    return std::max(row1, row2);
}

double stability_bound(const ModelParams& p, double gamma_inf, const std::array<double, 2>& box, double safety) {
    if (!(safety > 0.0))
        throw std::invalid_argument("stability safety factor must be positive");
    return safety / (2.0 * std::max(p.d1, p.d2) * gamma_inf + reaction_lipschitz(p, box));
}

double stability_bound(const ModelParams& p, const DiffusionSystem& sys, const std::array<double, 2>& box,
                       double safety) {
    if (!(safety > 0.0))
        throw std::invalid_argument("stability safety factor must be positive");
    const double rate = std::max(sys.d_u * sys.u_op->sup_norm_bound(), sys.d_v * sys.v_op->sup_norm_bound());
    return safety / (rate + reaction_lipschitz(p, box));
}

namespace {

/// Exponential time differencing RK4 weights for a scalar linear rate c,
/// evaluated by contour averaging to avoid cancellation for small c dt.
struct EtdCoefficients {
    double E, E2, Q, f1, f2, f3;

    EtdCoefficients(double c, double dt) {
        const double z = c * dt;
        E = std::exp(z);
        E2 = std::exp(z / 2.0);
        constexpr int points = 32;
        std::complex<double> q{}, a{}, b{}, g{};
        for (int k = 0; k < points; ++k) {
            const double theta = std::numbers::pi * (k + 0.5) / points;
            const std::complex<double> w = z + std::polar(1.0, theta);
            const std::complex<double> ew = std::exp(w);
            const std::complex<double> w3 = w * w * w;
            q += (std::exp(w / 2.0) - 1.0) / w;
            a += (-4.0 - w + ew * (4.0 - 3.0 * w + w * w)) / w3;
            b += (2.0 + w + ew * (w - 2.0)) / w3;
            g += (-4.0 - 3.0 * w - w * w + ew * (4.0 - w)) / w3;
        }
        // Upper half circle only; conjugate symmetry makes the mean real.
        Q = dt * q.real() / points;
        f1 = dt * a.real() / points;
        f2 = dt * b.real() / points;
        f3 = dt * g.real() / points;
    }
};

class Stepper {
public:
    Stepper(const Grid& grid, const ModelParams& p, const DiffusionSystem& sys, const IntegratorConfig& config)
        : _p{p}
        , _sys{sys}
        , _scheme{config.scheme}
        , _dt{config.dt}
        , _au{grid}
        , _av{grid}
        , _k{Field{grid}, Field{grid}, Field{grid}, Field{grid}, Field{grid}, Field{grid}, Field{grid}, Field{grid}}
        , _su{grid}
        , _sv{grid}
        , _tu{grid}
        , _tv{grid}
        , _etd_u{-p.f, config.dt}
        , _etd_v{-(p.f + p.kappa), config.dt} {}

    void advance(Field& u, Field& v) {
        if (_scheme == Scheme::rk4_explicit)
            rk4(u, v);
        else
            etdrk4(u, v);
    }

private:
    /// gu = d_u A_u u + F1 - lin_u u, and likewise for v.
    void rhs(const Field& u, const Field& v, Field& gu, Field& gv, double lin_u, double lin_v) {
        _sys.u_op->apply(u, _au);
        _sys.v_op->apply(v, _av);
        const double fk = _p.f + _p.kappa;
        for (std::size_t i = 0; i < u.size(); ++i) {
            const double uv2 = u[i] * v[i] * v[i];
            gu[i] = _sys.d_u * _au[i] - uv2 + _p.f * (1.0 - u[i]) - lin_u * u[i];
            gv[i] = _sys.d_v * _av[i] + uv2 - fk * v[i] - lin_v * v[i];
        }
    }

    void rk4(Field& u, Field& v) {
        auto& [k1u, k1v, k2u, k2v, k3u, k3v, k4u, k4v] = _k;
        const double h = _dt;
        const std::size_t n = u.size();
        rhs(u, v, k1u, k1v, 0.0, 0.0);
        for (std::size_t i = 0; i < n; ++i) {
            _su[i] = u[i] + 0.5 * h * k1u[i];
            _sv[i] = v[i] + 0.5 * h * k1v[i];
        }
        rhs(_su, _sv, k2u, k2v, 0.0, 0.0);
        for (std::size_t i = 0; i < n; ++i) {
            _su[i] = u[i] + 0.5 * h * k2u[i];
            _sv[i] = v[i] + 0.5 * h * k2v[i];
        }
        rhs(_su, _sv, k3u, k3v, 0.0, 0.0);
        for (std::size_t i = 0; i < n; ++i) {
            _su[i] = u[i] + h * k3u[i];
            _sv[i] = v[i] + h * k3v[i];
        }
        rhs(_su, _sv, k4u, k4v, 0.0, 0.0);
        for (std::size_t i = 0; i < n; ++i) {
            u[i] += h / 6.0 * (k1u[i] + 2.0 * k2u[i] + 2.0 * k3u[i] + k4u[i]);
            v[i] += h / 6.0 * (k1v[i] + 2.0 * k2v[i] + 2.0 * k3v[i] + k4v[i]);
        }
    }

    // Cox-Matthews ETDRK4 with the linear decays -f u and -(f + kappa) v
    // integrated exactly.
    void etdrk4(Field& u, Field& v) {
        auto& [nu, nv, nau, nav, nbu, nbv, ncu, ncv] = _k;
        const double lu = -_p.f;
        const double lv = -(_p.f + _p.kappa);
        const auto& cu = _etd_u;
        const auto& cv = _etd_v;
        const std::size_t n = u.size();

        rhs(u, v, nu, nv, lu, lv);
        for (std::size_t i = 0; i < n; ++i) {
            _su[i] = cu.E2 * u[i] + cu.Q * nu[i];
            _sv[i] = cv.E2 * v[i] + cv.Q * nv[i];
        }
        rhs(_su, _sv, nau, nav, lu, lv);
        for (std::size_t i = 0; i < n; ++i) {
            _tu[i] = cu.E2 * u[i] + cu.Q * nau[i];
            _tv[i] = cv.E2 * v[i] + cv.Q * nav[i];
        }
        rhs(_tu, _tv, nbu, nbv, lu, lv);
        for (std::size_t i = 0; i < n; ++i) {
            _su[i] = cu.E2 * _su[i] + cu.Q * (2.0 * nbu[i] - nu[i]);
            _sv[i] = cv.E2 * _sv[i] + cv.Q * (2.0 * nbv[i] - nv[i]);
        }
        rhs(_su, _sv, ncu, ncv, lu, lv);
        for (std::size_t i = 0; i < n; ++i) {
            u[i] = cu.E * u[i] + cu.f1 * nu[i] + 2.0 * cu.f2 * (nau[i] + nbu[i]) + cu.f3 * ncu[i];
            v[i] = cv.E * v[i] + cv.f1 * nv[i] + 2.0 * cv.f2 * (nav[i] + nbv[i]) + cv.f3 * ncv[i];
        }
    }

    const ModelParams& _p;
    const DiffusionSystem& _sys;
    Scheme _scheme;
    double _dt;
    Field _au, _av;
    std::tuple<Field, Field, Field, Field, Field, Field, Field, Field> _k;
    Field _su, _sv, _tu, _tv;
    EtdCoefficients _etd_u, _etd_v;
};

void check_system(const State& s, const DiffusionSystem& sys) {
    if (!sys.u_op || !sys.v_op)
        throw std::invalid_argument("diffusion system needs an operator for each species");
    require_same_grid(s.u.grid(), s.v.grid());
    require_same_grid(s.u.grid(), sys.u_op->grid());
    require_same_grid(s.u.grid(), sys.v_op->grid());
}

bool finite(const State& s) { return s.u.all_finite() && s.v.all_finite(); }

class MonitorRecorder {
public:
    MonitorRecorder(const State& initial, const ModelParams& p, const DiffusionSystem& sys,
                    const IntegratorConfig& config, Trajectory& out)
        : _bounds{initial, p, sys}
        , _sys{sys}
        , _config{config}
        , _out{out} {}

    void sample(const State& s) {
        const MonitorSet& m = _config.monitors;
        MonitorRow row;
        row.t = s.t;
        row.sup_u = norm(s.u, NormKind::sup);
        row.sup_v = norm(s.v, NormKind::sup);
        row.L1_u = norm(s.u, NormKind::L1);
        row.L1_v = norm(s.v, NormKind::L1);
        row.L2sq_u = inner(s.u, s.u);
        row.L2sq_v = inner(s.v, s.v);
        row.Y_u = _sys.u_op->dissipation(s.u);
        row.Y_v = _sys.v_op->dissipation(s.v);
        row.min_u = s.u.min();
        row.min_v = s.v.min();

        const Grid& g = s.u.grid();
        std::size_t arg_u = 0, arg_h = 0, min_u = 0, min_v = 0;
        double max_u = -std::numeric_limits<double>::infinity();
        double max_h = max_u;
        for (std::size_t i = 0; i < g.size(); ++i) {
            if (s.u[i] > max_u) {
                max_u = s.u[i];
                arg_u = i;
            }
            const double h = s.u[i] + s.v[i];
            if (h > max_h) {
                max_h = h;
                arg_h = i;
            }
            if (s.u[i] < s.u[min_u])
                min_u = i;
            if (s.v[i] < s.v[min_v])
                min_v = i;
        }

        const double ubu = _bounds.ubu(s.t);
        const double ubv = _bounds.ubv(s.t);
        row.ubu_slack = max_u - ubu;
        row.ubv_slack = max_h - ubv;
        row.decay_slack = _bounds.decay_rate() ? row.sup_v - _bounds.decay(s.t)
                                               : std::numeric_limits<double>::quiet_NaN();
        const auto energy = _bounds.energy(s.t);
        row.energy_slack = energy ? row.L2sq_u + row.L2sq_v - *energy : std::numeric_limits<double>::quiet_NaN();

        if (m.positivity) {
            if (s.u[min_u] < -_config.postol)
                flag(s.t, "positivity_u", min_u, g, s.u[min_u], -_config.postol);
            if (s.v[min_v] < -_config.postol)
                flag(s.t, "positivity_v", min_v, g, s.v[min_v], -_config.postol);
        }
        if (m.ubu && row.ubu_slack > _config.montol)
            flag(s.t, "ubu", arg_u, g, max_u, ubu);
        if (m.ubv && row.ubv_slack > _config.montol)
            flag(s.t, "ubv", arg_h, g, max_h, ubv);
        if (m.decay && _bounds.decay_rate() && row.decay_slack > _config.montol) {
            std::size_t arg_v = 0;
            for (std::size_t i = 0; i < g.size(); ++i)
                if (std::abs(s.v[i]) > std::abs(s.v[arg_v]))
                    arg_v = i;
            flag(s.t, "decay", arg_v, g, row.sup_v, _bounds.decay(s.t));
        }
        if (m.energy && energy && row.energy_slack > _config.montol)
            flag(s.t, "energy", 0, g, row.L2sq_u + row.L2sq_v, *energy);
        _out.monitors.push_back(row);
    }

    const AprioriBounds& bounds() const noexcept { return _bounds; }

private:
    void flag(double t, const char* what, std::size_t cell, const Grid& g, double value, double bound) {
        ++_out.violation_count;
        if (_out.violations.size() < 100)
            _out.violations.push_back({t, what, cell, g.position(cell), value, bound});
    }

    AprioriBounds _bounds;
    const DiffusionSystem& _sys;
    const IntegratorConfig& _config;
    Trajectory& _out;
};

} // namespace

State step(const State& s, const ModelParams& p, const DiffusionSystem& sys, const IntegratorConfig& config) {
    check_system(s, sys);
    Stepper stepper{s.u.grid(), p, sys, config};
    State next = s;
    stepper.advance(next.u, next.v);
    next.t = s.t + config.dt;
    if (!finite(next))
        throw NonFiniteError{"non-finite value produced at t = " + std::to_string(next.t), s};
    return next;
}

Trajectory integrate(const State& initial, const ModelParams& p, const DiffusionSystem& sys,
                     const IntegratorConfig& config, const StepObserver& observer) {
    p.validate();
    check_system(initial, sys);
    if (!finite(initial))
        throw std::invalid_argument("initial data contain non-finite values");
    if (initial.u.min() < 0.0 || initial.v.min() < 0.0)
        throw std::invalid_argument("initial data must be non-negative");
    if (!(config.dt > 0.0) || !(config.t_end >= initial.t))
        throw std::invalid_argument("need dt > 0 and t_end >= initial time");
    if (config.monitor_every == 0)
        throw std::invalid_argument("monitor_every must be at least 1");

    Trajectory traj;
    MonitorRecorder recorder{initial, p, sys, config, traj};
    const auto box = config.box_bounds.value_or(recorder.bounds().box());
    if (!std::isfinite(box[1]))
        throw std::invalid_argument("no a-priori bound on v for stencil operators with d1 != d2; "
                                    "set integrator.box_bounds");
    traj.dt = config.dt;
    traj.dt_max = stability_bound(p, sys, box, config.safety);
    if (config.dt > traj.dt_max * (1.0 + 1e-12))
        throw std::invalid_argument("dt = " + format_double(config.dt) + " exceeds the stability bound " +
                                    format_double(traj.dt_max));

    const double span = config.t_end - initial.t;
    const auto steps = static_cast<std::size_t>(std::llround(span / config.dt));
    if (std::abs(static_cast<double>(steps) * config.dt - span) > 1e-9 * std::max(1.0, config.t_end))
        throw std::invalid_argument("t_end - t0 must be an integer multiple of dt");
    traj.steps = steps;

    Stepper stepper{initial.u.grid(), p, sys, config};
    State current = initial;
    traj.snapshots.push_back(current);
    recorder.sample(current);

    State previous = current;
    for (std::size_t k = 1; k <= steps; ++k) {
        previous.t = current.t;
        std::copy(current.u.values().begin(), current.u.values().end(), previous.u.values().begin());
        std::copy(current.v.values().begin(), current.v.values().end(), previous.v.values().begin());
        stepper.advance(current.u, current.v);
        current.t = initial.t + static_cast<double>(k) * config.dt;
        if (!finite(current))
            throw NonFiniteError{"non-finite value produced at t = " + std::to_string(current.t), previous};
        if (observer)
            observer(previous, current);
        const bool last_step = k == steps;
        if (last_step || k % config.monitor_every == 0)
            recorder.sample(current);
        if (last_step || (config.snapshot_every > 0 && k % config.snapshot_every == 0))
            traj.snapshots.push_back(current);
    }
    return traj;
}

} // namespace nlgs
