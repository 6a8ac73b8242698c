#include "nlgs/limit_study.hpp"

#include <atomic>
#include <chrono>
#include <cmath>
#include <exception>
#include <fstream>
#include <sstream>
#include <thread>

#include "nlgs/io.hpp"
#include "nlgs/local_reference.hpp"
#include "nlgs/nonlocal_operator.hpp"

namespace nlgs {

using nlohmann::json;

namespace {

template <class T>
T field(const json& obj, const char* key, T fallback) {
    const auto it = obj.find(key);
    if (it == obj.end())
        return fallback;
    try {
        return it->get<T>();
    } catch (const json::exception& e) {
        throw ConfigError(std::string{"limit study config ."} + key + ": " + e.what());
    }
}

double squared_difference(const Field& a, const Field& b) {
    const auto x = a.values();
    const auto y = b.values();
    double s = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        const double d = x[i] - y[i];
        s += d * d;
    }
    return s * a.grid().cell_measure();
}

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point start) {
    return std::chrono::duration<double>(Clock::now() - start).count();
}

void persist_run(const std::filesystem::path& dir, const Trajectory& traj) {
    std::filesystem::create_directories(dir);
    std::ofstream os{dir / "monitor.csv"};
    write_monitor_csv(os, traj.monitors);
    const State& last = traj.final_state();
    write_snapshot(dir / "u_final.bin", last.u, last.t, "u");
    write_snapshot(dir / "v_final.bin", last.v, last.t, "v");
}

KernelSpec kernel_for(const LimitStudyConfig& c, int j) {
    return KernelSpec{c.profile.make(), j, c.boundary_mode, 1.0};
}

} // namespace

double effective_diffusivity(const RadialProfile& profile, double d, int n) {
    return effective_diffusivity(kernel_moments(profile, n).m2, d, n);
}

void LimitStudyConfig::validate() const {
    try {
        model.validate();
    } catch (const std::exception& e) {
        throw ConfigError(std::string{"model: "} + e.what());
    }
    if (j_ladder.empty())
        throw ConfigError("j_ladder must not be empty");
    for (std::size_t k = 0; k < j_ladder.size(); ++k) {
        if (j_ladder[k] < 1 || (k > 0 && j_ladder[k] <= j_ladder[k - 1]))
            throw ConfigError("j_ladder must be strictly increasing positive integers");
    }
    if (!(T > 0.0) || !(safety > 0.0) || (dt && !(*dt > 0.0)) || monitor_every == 0 || workers == 0)
        throw ConfigError("limit study needs T > 0, safety > 0, dt > 0, monitor_every >= 1 and workers >= 1");
    const Grid grid = space.make();
    for (int j : j_ladder) {
        const KernelSpec spec = kernel_for(*this, j);
        if (spec.support_radius() < 4.0 * grid.max_spacing() * (1.0 - 1e-12)) {
            throw ConfigError("j = " + std::to_string(j) + " fails the kernel resolution guard; need at least " +
                              std::to_string(minimum_cells_per_axis(spec, space.extents[0])) + " cells per axis");
        }
    }
}

LimitStudyConfig parse_limit_study_config(const std::string& text) {
    json root;
    try {
        root = json::parse(text);
    } catch (const json::parse_error& e) {
        std::size_t line = 1, column = 1;
        for (std::size_t i = 0; i + 1 < e.byte && i < text.size(); ++i) {
            column = text[i] == '\n' ? 1 : column + 1;
            line += text[i] == '\n';
        }
        throw ConfigError("limit study config parse error at line " + std::to_string(line) + ", column " +
                          std::to_string(column) + ": " + e.what());
    }
    require_keys(root,
                 {"model", "space", "profile", "j_ladder", "T", "dt", "safety", "scheme", "boundary", "initial",
                  "monitor_every", "workers"},
                 "limit study config");
    LimitStudyConfig c;
    if (root.contains("model"))
        c.model = parse_model(root["model"]);
    if (root.contains("space"))
        c.space = parse_grid(root["space"]);
    if (root.contains("profile"))
        c.profile = parse_profile(root["profile"]);
    c.j_ladder = field(root, "j_ladder", c.j_ladder);
    c.T = field(root, "T", c.T);
    if (root.contains("dt") && !root["dt"].is_null())
        c.dt = field(root, "dt", 0.0);
    c.safety = field(root, "safety", c.safety);
    try {
        c.scheme = scheme_from_string(field<std::string>(root, "scheme", to_string(c.scheme)));
        c.boundary_mode = boundary_mode_from_string(field<std::string>(root, "boundary", to_string(c.boundary_mode)));
    } catch (const std::invalid_argument& e) {
        throw ConfigError(std::string{"limit study config: "} + e.what());
    }
    if (root.contains("initial"))
        c.initial = parse_initial(root["initial"]);
    c.monitor_every = field(root, "monitor_every", c.monitor_every);
    c.workers = field(root, "workers", c.workers);
    c.validate();
    return c;
}

LimitStudyConfig load_limit_study_config(const std::string& path) {
    std::ifstream is{path};
    if (!is)
        throw ConfigError("cannot open limit study config " + path);
    std::stringstream buf;
    buf << is.rdbuf();
    return parse_limit_study_config(buf.str());
}

json to_json(const LimitStudyConfig& c) {
    json j = {{"model", to_json(c.model)},
              {"space", to_json(c.space)},
              {"profile", to_json(c.profile)},
              {"j_ladder", c.j_ladder},
              {"T", c.T},
              {"safety", c.safety},
              {"scheme", to_string(c.scheme)},
              {"boundary", to_string(c.boundary_mode)},
              {"initial", to_json(c.initial)},
              {"monitor_every", c.monitor_every},
              {"workers", c.workers}};
    if (c.dt)
        j["dt"] = *c.dt;
    return j;
}

json to_json(const LimitStudyReport& r) {
    json runs = json::array();
    for (const LimitRun& run : r.runs) {
        runs.push_back({{"j", run.j},
                        {"spacetime_L2_err_u", run.err_u},
                        {"spacetime_L2_err_v", run.err_v},
                        {"final_L2_err_u", run.final_err_u},
                        {"final_L2_err_v", run.final_err_v},
                        {"wall_clock_s", run.wall_clock_s},
                        {"violation_count", run.violation_count},
                        {"gamma_inf", run.gamma_inf}});
    }
    json j = {{"status", r.status},
              {"m2", r.m2},
              {"D1", r.D1},
              {"D2", r.D2},
              {"dt", r.dt},
              {"steps", r.steps},
              {"local", {{"wall_clock_s", r.local_wall_clock_s}, {"violation_count", r.local_violation_count}}},
              {"runs", runs},
              {"monotone_u", r.monotone_u},
              {"monotone_v", r.monotone_v},
              {"reduction_u", r.reduction_u},
              {"reduction_v", r.reduction_v}};
    if (!r.error.empty())
        j["error"] = r.error;
    return j;
}

LimitStudyReport run_limit_study(const LimitStudyConfig& config, const std::optional<std::filesystem::path>& out_dir) {
    config.validate();
    const Grid grid = config.space.make();
    const RadialProfile profile = config.profile.make();
    const int n = grid.dim();
    const State initial = make_initial(config.initial, grid, config.model);

    LimitStudyReport report;
    report.m2 = kernel_moments(profile, n).m2;
    report.D1 = effective_diffusivity(report.m2, config.model.d1, n);
    report.D2 = effective_diffusivity(report.m2, config.model.d2, n);

    const DiscreteLaplacian laplacian{grid, LaplacianBc::neumann};
    const DiffusionSystem local_sys = make_system(laplacian, report.D1, report.D2);
    std::vector<std::shared_ptr<const NonlocalOperator>> ops;
    for (int j : config.j_ladder)
        ops.push_back(std::make_shared<NonlocalOperator>(cached_kernel_table(kernel_for(config, j), grid)));

    // One dt for every run: the tightest stability bound, shrunk so it divides T.
    const auto box = AprioriBounds{initial, config.model, local_sys}.box();
    double dt_max = stability_bound(config.model, local_sys, box, config.safety);
    for (const auto& op : ops) {
        const DiffusionSystem sys = make_system(*op, config.model);
        dt_max = std::min(dt_max, stability_bound(config.model, sys, AprioriBounds{initial, config.model, sys}.box(),
                                                  config.safety));
    }
    double dt = config.dt.value_or(dt_max);
    const auto steps = static_cast<std::size_t>(std::ceil(config.T / dt - 1e-9));
    dt = config.T / static_cast<double>(steps);
    report.dt = dt;
    report.steps = steps;

    IntegratorConfig ic;
    ic.scheme = config.scheme;
    ic.dt = dt;
    ic.t_end = config.T;
    ic.monitor_every = config.monitor_every;
    ic.safety = config.safety;

    const auto finish = [&]() {
        if (out_dir) {
            std::filesystem::create_directories(*out_dir);
            std::ofstream{*out_dir / "report.json"} << to_json(report).dump(2) << '\n';
            std::ofstream csv{*out_dir / "errors.csv"};
            csv << "j,spacetime_L2_err_u,spacetime_L2_err_v,final_L2_err_u,final_L2_err_v,wall_clock_s\n";
            for (const LimitRun& r : report.runs) {
                csv << r.j << ',' << format_double(r.err_u) << ',' << format_double(r.err_v) << ','
                    << format_double(r.final_err_u) << ',' << format_double(r.final_err_v) << ','
                    << format_double(r.wall_clock_s) << '\n';
            }
        }
        return report;
    };

    try {
        const auto start = Clock::now();
        const Trajectory local = integrate(initial, config.model, local_sys, ic);
        report.local_wall_clock_s = seconds_since(start);
        report.local_violation_count = local.violation_count;
        if (out_dir)
            persist_run(*out_dir / "runs" / "local", local);
        if (!local.ok())
            throw std::runtime_error("local reference run flagged " + std::to_string(local.violation_count) +
                                     " invariant violations");
    } catch (const std::exception& e) {
        report.status = "failed";
        report.error = std::string{"local run: "} + e.what();
        return finish();
    }

    const std::size_t count = config.j_ladder.size();
    std::vector<LimitRun> results(count);
    std::vector<std::exception_ptr> failures(count);
    std::atomic<std::size_t> next{0};

    const auto run_one = [&](std::size_t k) {
        const int j = config.j_ladder[k];
        const NonlocalOperator& op = *ops[k];
        const DiffusionSystem sys = make_system(op, config.model);
        State reference = initial;
        double acc_u = 0.0, acc_v = 0.0;
        const StepObserver observer = [&](const State&, const State& after) {
            reference = step(reference, config.model, local_sys, ic);
            acc_u += dt * squared_difference(after.u, reference.u);
            acc_v += dt * squared_difference(after.v, reference.v);
        };
        const auto start = Clock::now();
        const Trajectory traj = integrate(initial, config.model, sys, ic, observer);
        LimitRun& r = results[k];
        r.j = j;
        r.wall_clock_s = seconds_since(start);
        r.err_u = std::sqrt(acc_u);
        r.err_v = std::sqrt(acc_v);
        r.final_err_u = std::sqrt(squared_difference(traj.final_state().u, reference.u));
        r.final_err_v = std::sqrt(squared_difference(traj.final_state().v, reference.v));
        r.violation_count = traj.violation_count;
        r.gamma_inf = op.table().gamma_inf;
        if (out_dir)
            persist_run(*out_dir / "runs" / ("j_" + std::to_string(j)), traj);
        if (!traj.ok())
            throw std::runtime_error("run j = " + std::to_string(j) + " flagged " +
                                     std::to_string(traj.violation_count) + " invariant violations");
    };
    const auto worker = [&]() {
        for (std::size_t k = next++; k < count; k = next++) {
            try {
                run_one(k);
            } catch (...) {
                failures[k] = std::current_exception();
            }
        }
    };
    {
        std::vector<std::jthread> pool;
        for (unsigned w = 1; w < std::min<std::size_t>(config.workers, count); ++w)
            pool.emplace_back(worker);
        worker();
    }

    for (std::size_t k = 0; k < count; ++k) {
        if (failures[k]) {
            report.status = "failed";
            try {
                std::rethrow_exception(failures[k]);
            } catch (const std::exception& e) {
                report.error += (report.error.empty() ? "" : "; ") + std::string{e.what()};
            }
            if (results[k].j != 0)
                report.runs.push_back(results[k]);
            continue;
        }
        report.runs.push_back(results[k]);
    }
    if (report.ok()) {
        report.monotone_u = report.monotone_v = true;
        for (std::size_t k = 1; k < report.runs.size(); ++k) {
            report.monotone_u = report.monotone_u && report.runs[k].err_u < report.runs[k - 1].err_u;
            report.monotone_v = report.monotone_v && report.runs[k].err_v < report.runs[k - 1].err_v;
        }
        report.reduction_u = report.runs.back().err_u / report.runs.front().err_u;
        report.reduction_v = report.runs.back().err_v / report.runs.front().err_v;
    }
    return finish();
}

} // namespace nlgs
