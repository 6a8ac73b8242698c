// nlgs: command-line front end for the nonlocal Gray-Scott solver.
#include <cstdint>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "nlgs/config.hpp"
#include "nlgs/gray_scott.hpp"
#include "nlgs/io.hpp"
#include "nlgs/kernels.hpp"
#include "nlgs/limit_study.hpp"
#include "nlgs/parallel.hpp"
#include "nlgs/simulation.hpp"
#include "nlgs/verify.hpp"

using nlohmann::json;

namespace {

int cmd_simulate(const std::string& config_path, const std::string& out, std::optional<std::uint64_t> seed) {
    const nlgs::RunConfig config = nlgs::load_run_config(config_path);
    const std::filesystem::path dir = std::filesystem::path{out.empty() ? config.output_dir : out};
    const nlgs::SimulationResult result = nlgs::run_simulation(config, dir, seed);
    const json& report = result.report;
    if (result.exit_code == nlgs::exit_violation) {
        const nlgs::Violation& v = result.trajectory.violations.front();
        std::cerr << "invariant violation: " << v.invariant << " at t = " << nlgs::format_double(v.t) << ", x = ("
                  << nlgs::format_double(v.x[0]) << ", " << nlgs::format_double(v.x[1])
                  << "), value = " << nlgs::format_double(v.value) << ", bound = " << nlgs::format_double(v.bound)
                  << " (" << result.trajectory.violation_count << " violations in total)\n";
    } else if (result.exit_code == nlgs::exit_non_finite) {
        std::cerr << "run stopped: " << report.value("error", std::string{}) << '\n';
    }
    std::cout << json{{"status", report["status"]}, {"out", dir.string()}, {"steps", report.value("steps", 0)},
                      {"dt", report.value("dt", 0.0)}}
                     .dump()
              << '\n';
    return result.exit_code;
}

int cmd_limit_study(const std::string& config_path, const std::string& out) {
    const nlgs::LimitStudyConfig config =
        config_path.empty() ? nlgs::LimitStudyConfig{} : nlgs::load_limit_study_config(config_path);
    const std::optional<std::filesystem::path> dir =
        out.empty() ? std::nullopt : std::optional<std::filesystem::path>{out};
    if (dir) {
        std::filesystem::create_directories(*dir);
        std::ofstream{*dir / "config.json"} << nlgs::to_json(config).dump(2) << '\n';
    }
    const nlgs::LimitStudyReport report = nlgs::run_limit_study(config, dir);
    std::cout << nlgs::to_json(report).dump(2) << '\n';
    if (!report.ok()) {
        std::cerr << "limit study failed: " << report.error << '\n';
        return nlgs::exit_violation;
    }
    return nlgs::exit_ok;
}

int cmd_steady_states(double f, double kappa) {
    nlgs::ModelParams p;
    p.f = f;
    p.kappa = kappa;
    p.validate();
    const nlgs::SteadyStateReport rep = nlgs::steady_states(p);
    json states = json::array();
    for (const nlgs::HomogeneousState& s : rep.states) {
        const nlgs::StabilityReport st = nlgs::classify_stability_homogeneous(p, s);
        json eig = json::array();
        for (const auto& e : st.eigenvalues)
            eig.push_back({e.real(), e.imag()});
        states.push_back({{"u", s.u}, {"v", s.v}, {"stability", nlgs::to_string(st.stability)}, {"eigenvalues", eig}});
    }
    std::cout << json{{"f", f},
                      {"kappa", kappa},
                      {"regime", nlgs::to_string(rep.regime)},
                      {"discriminant", rep.discriminant},
                      {"states", states}}
                     .dump(2)
              << '\n';
    return nlgs::exit_ok;
}

int cmd_kernel_info(const std::string& profile, double radius, int j, int dim, const std::vector<std::size_t>& counts,
                    const std::vector<double>& extents, const std::string& boundary) {
    const nlgs::Grid grid = nlgs::make_grid(dim, extents, counts);
    const nlgs::KernelSpec spec{nlgs::profile_by_name(profile, radius), j, nlgs::boundary_mode_from_string(boundary),
                                1.0};
    std::cout << nlgs::kernel_summary(nlgs::build_kernel_table(spec, grid)).dump(2) << '\n';
    return nlgs::exit_ok;
}

int cmd_verify(const std::string& suite) {
    const std::vector<int> ids = nlgs::suite_criteria(suite);
    json results = json::array();
    bool all = true;
    for (int id : ids) {
        const nlgs::CriterionResult r = nlgs::run_criterion(id);
        std::cerr << nlgs::summary_line(r) << '\n';
        results.push_back(nlgs::to_json(r));
        all = all && r.passed();
    }
    std::cout << json{{"suite", suite}, {"passed", all}, {"criteria", results}}.dump(2) << '\n';
    return all ? nlgs::exit_ok : nlgs::exit_error;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Nonlocal Gray-Scott solver"};
    app.require_subcommand(1);
    unsigned threads = 0;
    std::optional<std::uint64_t> seed;
    app.add_option("--threads", threads, "worker threads (default: NLGS_THREADS or 1)")->check(CLI::PositiveNumber);
    app.add_option("--seed", seed, "seed for the random_seeded preset");

    std::string config_path, out;
    CLI::App* simulate = app.add_subcommand("simulate", "integrate one configuration");
    simulate->add_option("--config", config_path, "run configuration (JSON)")->required()->check(CLI::ExistingFile);
    simulate->add_option("--out", out, "output directory (default: output.dir of the config)");

    CLI::App* limit = app.add_subcommand("limit-study", "nonlocal runs over a ladder of j against the local limit");
    limit->add_option("--config", config_path, "study configuration (JSON); defaults to the built-in study")
        ->check(CLI::ExistingFile);
    limit->add_option("--out", out, "output directory");

    double f = 0.04, kappa = 0.01;
    CLI::App* steady = app.add_subcommand("steady-states", "homogeneous steady states and their ODE stability");
    steady->add_option("--f", f, "feed rate")->required();
    steady->add_option("--kappa", kappa, "kill rate")->required();

    std::string profile = "bump", boundary = "neumann_nonlocal";
    double radius = 1.0;
    int j = 8, dim = 2;
    std::vector<std::size_t> counts{64, 64};
    std::vector<double> extents{1.0, 1.0};
    CLI::App* info = app.add_subcommand("kernel-info", "moments and quadrature table summary of a scaled kernel");
    info->add_option("--profile", profile, "bump or indicator");
    info->add_option("--radius", radius, "profile support radius");
    info->add_option("--j", j, "kernel scale")->check(CLI::PositiveNumber);
    info->add_option("--dim", dim, "1 or 2");
    info->add_option("--counts", counts, "cells per axis");
    info->add_option("--extents", extents, "box side lengths");
    info->add_option("--boundary", boundary, "neumann_nonlocal or dirichlet_extension");

    std::string suite;
    CLI::App* verify = app.add_subcommand("verify", "run an acceptance suite");
    verify->add_option("suite", suite, "operator, dirichlet, bounds, decay, steady, limit or all")->required();

    CLI11_PARSE(app, argc, argv);
    if (threads > 0)
        nlgs::set_thread_count(threads);

    try {
        if (*simulate)
            return cmd_simulate(config_path, out, seed);
        if (*limit)
            return cmd_limit_study(config_path, out);
        if (*steady)
            return cmd_steady_states(f, kappa);
        if (*info) {
            if (dim == 1 && counts.size() == 2 && extents.size() == 2) {
                counts.resize(1);
                extents.resize(1);
            }
            return cmd_kernel_info(profile, radius, j, dim, counts, extents, boundary);
        }
        if (*verify) {
            try {
                (void)nlgs::suite_criteria(suite);
            } catch (const std::invalid_argument& e) {
                std::cerr << e.what() << '\n' << app.help() << '\n';
                return nlgs::exit_error;
            }
            return cmd_verify(suite);
        }
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return nlgs::exit_error;
    }
    return nlgs::exit_error;
}
