#ifndef NLGS_INTEGRATOR_HPP
#define NLGS_INTEGRATOR_HPP

#include <array>
#include <cstddef>
#include <functional>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "nlgs/gray_scott.hpp"
#include "nlgs/grid.hpp"
#include "nlgs/spatial_operator.hpp"

namespace nlgs {

struct State {
    double t = 0.0;
    Field u;
    Field v;
};

/// A = 0, for reaction-only runs.
class ZeroOperator final : public SpatialOperator {
public:
    explicit ZeroOperator(const Grid& grid)
        : _grid{grid} {}
    const Grid& grid() const noexcept override { return _grid; }
    void apply(const Field&, Field& out) const override;
    double sup_norm_bound() const noexcept override { return 0.0; }
    double row_mass_bound() const noexcept override { return 0.0; }
    double dissipation(const Field&) const override { return 0.0; }

private:
    Grid _grid;
};

/// Linear part of du/dt = d_u A_u u + F1, dv/dt = d_v A_v v + F2.
struct DiffusionSystem {
    const SpatialOperator* u_op = nullptr;
    const SpatialOperator* v_op = nullptr;
    double d_u = 1.0;
    double d_v = 1.0;
    /// sup_x of the L1 distance between the two kernels' rows (0 for a shared kernel).
    double kernel_difference_mass = 0.0;

    bool shared_operator() const noexcept { return u_op == v_op; }
    double gamma_inf() const noexcept;
};

/// Both species diffuse with `op`, scaled by d1 and d2.
DiffusionSystem make_system(const SpatialOperator& op, const ModelParams& p);
DiffusionSystem make_system(const SpatialOperator& op, double d_u, double d_v);

enum class Scheme { rk4_explicit, imex_linear_decay };
std::string to_string(Scheme s);
Scheme scheme_from_string(const std::string& s);

struct MonitorSet {
    bool positivity = true;
    bool ubu = true;
    bool ubv = true;
    bool decay = true;
    bool energy = true;
    friend bool operator==(const MonitorSet&, const MonitorSet&) = default;
};

struct IntegratorConfig {
    Scheme scheme = Scheme::rk4_explicit;
    double dt = 1e-3;
    double t_end = 1.0;
    std::size_t snapshot_every = 0; ///< steps between snapshots; 0 keeps first and last only
    std::size_t monitor_every = 1;  ///< steps between monitor samples
    double postol = 1e-10;
    double montol = 1e-6;
    double safety = 0.5;
    /// Replaces the a-priori (sup u, sup v) box in the step-size bound.
    std::optional<std::array<double, 2>> box_bounds;
    MonitorSet monitors;
    friend bool operator==(const IntegratorConfig&, const IntegratorConfig&) = default;
};

/// One monitor sample. Slacks are value - bound; positive means violated.
struct MonitorRow {
    double t = 0.0;
    double sup_u = 0.0, sup_v = 0.0;
    double L1_u = 0.0, L1_v = 0.0;
    double L2sq_u = 0.0, L2sq_v = 0.0;
    double Y_u = 0.0, Y_v = 0.0;
    double ubu_slack = 0.0, ubv_slack = 0.0;
    double decay_slack = 0.0; ///< NaN when the decay hypothesis does not hold
    double min_u = 0.0, min_v = 0.0;
    double energy_slack = 0.0; ///< NaN when the species use different operators
};

struct Violation {
    double t = 0.0;
    std::string invariant;
    std::size_t cell = 0;
    std::array<double, 2> x{};
    double value = 0.0;
    double bound = 0.0;
};

struct Trajectory {
    std::vector<State> snapshots;
    std::vector<MonitorRow> monitors;
    std::vector<Violation> violations; ///< first 100 recorded in full
    std::size_t violation_count = 0;
    std::size_t steps = 0;
    double dt = 0.0;
    double dt_max = 0.0;

    const State& final_state() const { return snapshots.back(); }
    bool ok() const noexcept { return violation_count == 0; }
};

/// Thrown when a step produces NaN/Inf; carries the last finite state.
class NonFiniteError : public std::runtime_error {
public:
    NonFiniteError(const std::string& what, State last_valid)
        : std::runtime_error{what}
        , last_valid_state{std::move(last_valid)} {}
    State last_valid_state;
};

/// Bounds of the a-priori estimates along a trajectory started at (u0, v0).
class AprioriBounds {
public:
    AprioriBounds(const State& initial, const ModelParams& p, const DiffusionSystem& sys);

    /// 1 + e^{-f t} (sup u0 - 1)_+
    double ubu(double t) const noexcept;
    /// e^{-f t} sup(u0+v0) + (1 - e^{-f t})/f [2(|d_u-d_v| gamma_inf + m d_v)(1 + sup u0) + f]
    double ubv(double t) const noexcept;
    /// Largest admissible decay rate for sup v, if the decay hypothesis holds.
    std::optional<double> decay_rate() const noexcept { return _epsilon; }
    double decay(double t) const noexcept;
    /// Bound on |u|_2^2 + |v|_2^2 from the Gronwall argument; needs a shared operator.
    std::optional<double> energy(double t) const noexcept;
    /// (sup over t of ubu, sup over t of ubv)
    std::array<double, 2> box() const noexcept;

private:
    double _t0, _f, _sup_u0, _sup_h0, _v0, _ubv_limit;
    std::optional<double> _epsilon;
    bool _energy_valid;
    double _c2, _energy0, _domain;
};

/// Sup over the box [0, U] x [0, V] of the absolute row sums of the reaction Jacobian.
double reaction_lipschitz(const ModelParams& p, const std::array<double, 2>& box);

/// safety / (2 d_max gamma_inf + L_F).
double stability_bound(const ModelParams& p, double gamma_inf, const std::array<double, 2>& box,
                       double safety = 0.5);
/// safety / (max_l d_l |A_l| + L_F), which covers stencil operators too.
double stability_bound(const ModelParams& p, const DiffusionSystem& sys, const std::array<double, 2>& box,
                       double safety = 0.5);

/// Advances one step of size config.dt.
State step(const State& s, const ModelParams& p, const DiffusionSystem& sys, const IntegratorConfig& config);

using StepObserver = std::function<void(const State& before, const State& after)>;

/// Integrates from `initial` to config.t_end. Throws std::invalid_argument if
/// dt exceeds the stability bound or the initial data are negative.
/// Invariant violations are recorded in the trajectory and do not stop the run.
Trajectory integrate(const State& initial, const ModelParams& p, const DiffusionSystem& sys,
                     const IntegratorConfig& config, const StepObserver& observer = {});

} // namespace nlgs

#endif
