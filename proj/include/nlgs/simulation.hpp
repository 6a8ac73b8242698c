#ifndef NLGS_SIMULATION_HPP
#define NLGS_SIMULATION_HPP

#include <cstdint>
#include <filesystem>
#include <memory>
#include <optional>

#include <json.hpp>

#include "nlgs/config.hpp"
#include "nlgs/integrator.hpp"

namespace nlgs {

/// Spatial operator assembled from a run configuration, with the
/// diffusivities that multiply it.
struct AssembledOperator {
    std::shared_ptr<const SpatialOperator> op;
    double d_u = 1.0;
    double d_v = 1.0;

    DiffusionSystem system() const { return make_system(*op, d_u, d_v); }
};

AssembledOperator assemble_operator(const RunConfig& config);

/// Exit codes of the command-line front end.
enum ExitCode : int { exit_ok = 0, exit_error = 1, exit_violation = 2, exit_non_finite = 3 };

struct SimulationResult {
    Trajectory trajectory;
    nlohmann::json report;
    int exit_code = exit_ok;
};

/// Runs one configuration. When `out_dir` is set, writes config.json (the
/// resolved config), monitor.csv, diagnostics.csv for Neumann nonlocal runs,
/// snapshots/{u,v}_NNNNNN.bin and report.json. Configuration and stability
/// errors throw before any step is taken.
SimulationResult run_simulation(const RunConfig& config, const std::optional<std::filesystem::path>& out_dir,
                                std::optional<std::uint64_t> seed = std::nullopt);

} // namespace nlgs

#endif
