#include "nlgs/simulation.hpp"

#include <cstdio>
#include <fstream>

#include "nlgs/io.hpp"
#include "nlgs/local_reference.hpp"
#include "nlgs/nonlocal_operator.hpp"

namespace nlgs {

using nlohmann::json;

namespace {

std::string snapshot_name(char species, std::size_t k) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%c_%06zu.bin", species, k);
    return buf;
}

json violation_json(const Violation& v) {
    return {{"t", v.t}, {"invariant", v.invariant}, {"cell", v.cell}, {"x", v.x}, {"value", v.value},
            {"bound", v.bound}};
}

void write_text(const std::filesystem::path& path, const std::string& text) {
    std::ofstream os{path};
    if (!(os << text))
        throw std::runtime_error("cannot write " + path.string());
}

} // namespace

AssembledOperator assemble_operator(const RunConfig& c) {
    const Grid grid = c.space.make();
    const RadialProfile profile = c.op.profile.make();
    if (c.op.kind == OperatorSpec::Kind::nonlocal) {
        KernelSpec spec{profile, c.op.j, c.op.boundary_mode, 1.0};
        auto op = std::make_shared<NonlocalOperator>(cached_kernel_table(spec, grid));
        return {op, c.model.d1, c.model.d2};
    }
    const double m2 = kernel_moments(profile, grid.dim()).m2;
    auto op = std::make_shared<DiscreteLaplacian>(grid, c.op.bc);
    return {op, effective_diffusivity(m2, c.model.d1, grid.dim()), effective_diffusivity(m2, c.model.d2, grid.dim())};
}

SimulationResult run_simulation(const RunConfig& requested, const std::optional<std::filesystem::path>& out_dir,
                                std::optional<std::uint64_t> seed) {
    // the echoed config must reproduce the run, so fold a seed override into it
    RunConfig config = requested;
    if (seed && !config.initial.from_snapshots() && config.initial.preset == "random_seeded")
        config.initial.params["seed"] = *seed;
    const Grid grid = config.space.make();
    const AssembledOperator assembled = assemble_operator(config);
    const DiffusionSystem sys = assembled.system();
    const State initial = make_initial(config.initial, grid, config.model);

    if (out_dir) {
        std::filesystem::create_directories(*out_dir / "snapshots");
        write_text(*out_dir / "config.json", to_json(config).dump(2) + "\n");
    }

    SimulationResult result;
    json& report = result.report;
    report["operator"] = config.op.kind == OperatorSpec::Kind::nonlocal ? "nonlocal" : "local";
    report["diffusivity"] = {assembled.d_u, assembled.d_v};
    if (const auto* nl = dynamic_cast<const NonlocalOperator*>(assembled.op.get()))
        report["kernel"] = kernel_summary(nl->table());

    try {
        result.trajectory = integrate(initial, config.model, sys, config.integrator);
    } catch (const NonFiniteError& e) {
        report["status"] = "non_finite";
        report["error"] = e.what();
        report["last_valid_t"] = e.last_valid_state.t;
        if (out_dir) {
            write_snapshot(*out_dir / "snapshots" / "u_last_valid.bin", e.last_valid_state.u, e.last_valid_state.t, "u");
            write_snapshot(*out_dir / "snapshots" / "v_last_valid.bin", e.last_valid_state.v, e.last_valid_state.t, "v");
            write_text(*out_dir / "report.json", report.dump(2) + "\n");
        }
        result.exit_code = exit_non_finite;
        return result;
    }

    const Trajectory& traj = result.trajectory;
    report["status"] = traj.ok() ? "ok" : "violation";
    report["steps"] = traj.steps;
    report["dt"] = traj.dt;
    report["dt_max"] = traj.dt_max;
    report["t_final"] = traj.final_state().t;
    report["violation_count"] = traj.violation_count;
    report["violations"] = json::array();
    for (const Violation& v : traj.violations)
        report["violations"].push_back(violation_json(v));
    const State& last = traj.final_state();
    report["final"] = {{"sup_u", norm(last.u, NormKind::sup)}, {"sup_v", norm(last.v, NormKind::sup)},
                       {"min_u", last.u.min()},                 {"min_v", last.v.min()},
                       {"L2_u", norm(last.u, NormKind::L2)},    {"L2_v", norm(last.v, NormKind::L2)}};
    json snapshots = json::array();
    for (std::size_t k = 0; k < traj.snapshots.size(); ++k)
        snapshots.push_back({{"t", traj.snapshots[k].t}, {"u", snapshot_name('u', k)}, {"v", snapshot_name('v', k)}});
    report["snapshots"] = snapshots;
    result.exit_code = traj.ok() ? exit_ok : exit_violation;

    if (out_dir) {
        for (std::size_t k = 0; k < traj.snapshots.size(); ++k) {
            const State& s = traj.snapshots[k];
            write_snapshot(*out_dir / "snapshots" / snapshot_name('u', k), s.u, s.t, "u");
            write_snapshot(*out_dir / "snapshots" / snapshot_name('v', k), s.v, s.t, "v");
        }
        {
            std::ofstream os{*out_dir / "monitor.csv"};
            write_monitor_csv(os, traj.monitors);
        }
        const auto* nl = dynamic_cast<const NonlocalOperator*>(assembled.op.get());
        if (nl && nl->mode() == BoundaryMode::neumann_nonlocal) {
            std::ofstream os{*out_dir / "diagnostics.csv"};
            write_diagnostics_csv(os, traj.snapshots, *nl, rho_from_profile(nl->table().spec.profile, grid.dim()));
        }
        write_text(*out_dir / "report.json", report.dump(2) + "\n");
    }
    return result;
}

} // namespace nlgs
