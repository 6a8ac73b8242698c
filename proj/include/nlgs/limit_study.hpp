#ifndef NLGS_LIMIT_STUDY_HPP
#define NLGS_LIMIT_STUDY_HPP

#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "nlgs/config.hpp"

namespace nlgs {

/// Nonlocal runs over a ladder of scales j against one local reference run,
/// all on the same grid with the same dt.
struct LimitStudyConfig {
    ModelParams model;
    GridSpec space;
    ProfileSpec profile;
    std::vector<int> j_ladder{4, 8, 16};
    double T = 1.0;
    std::optional<double> dt; ///< defaults to the tightest stability bound, rounded so dt divides T
    double safety = 0.5;
    Scheme scheme = Scheme::rk4_explicit;
    BoundaryMode boundary_mode = BoundaryMode::neumann_nonlocal;
    InitialSpec initial{"gaussian_bump", nlohmann::json::object(), "", ""};
    std::size_t monitor_every = 10;
    unsigned workers = 1;

    /// Throws ConfigError on a non-increasing ladder or a j failing the resolution guard.
    void validate() const;
};

LimitStudyConfig parse_limit_study_config(const std::string& text);
LimitStudyConfig load_limit_study_config(const std::string& path);
nlohmann::json to_json(const LimitStudyConfig& config);

struct LimitRun {
    int j = 0;
    double err_u = 0.0; ///< sqrt(sum_k dt sum_x |cell| (u_j - u)^2) over the step times
    double err_v = 0.0;
    double final_err_u = 0.0; ///< L2 error at t = T
    double final_err_v = 0.0;
    double wall_clock_s = 0.0;
    std::size_t violation_count = 0;
    double gamma_inf = 0.0;
};

struct LimitStudyReport {
    std::string status = "ok"; ///< ok, violation or failed
    std::string error;
    double m2 = 0.0;
    double D1 = 0.0;
    double D2 = 0.0;
    double dt = 0.0;
    std::size_t steps = 0;
    double local_wall_clock_s = 0.0;
    std::size_t local_violation_count = 0;
    std::vector<LimitRun> runs; ///< in ladder order; shorter than the ladder after a failure
    bool monotone_u = false;
    bool monotone_v = false;
    double reduction_u = 0.0; ///< err(j_max) / err(j_min)
    double reduction_v = 0.0;

    bool ok() const noexcept { return status == "ok"; }
};

nlohmann::json to_json(const LimitStudyReport& report);

/// Runs the study. With `out_dir`, writes report.json, errors.csv and
/// runs/<name>/{monitor.csv, u_final.bin, v_final.bin}. A failing sub-run
/// stops the study; the report keeps the runs finished so far.
LimitStudyReport run_limit_study(const LimitStudyConfig& config,
                                 const std::optional<std::filesystem::path>& out_dir = std::nullopt);

/// D = m2 d / (2n) with m2 from kernel_moments.
double effective_diffusivity(const RadialProfile& profile, double d, int n);

} // namespace nlgs

#endif
