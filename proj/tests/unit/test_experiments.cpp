#include <doctest.h>

#include <filesystem>
#include <stdexcept>
#include <fstream>

#include "nlgs/io.hpp"
#include "nlgs/limit_study.hpp"
#include "nlgs/simulation.hpp"
#include "nlgs/verify.hpp"

using namespace nlgs;

namespace {

std::filesystem::path scratch(const std::string& name) {
    const auto dir = std::filesystem::temp_directory_path() / ("nlgs_test_" + name);
    std::filesystem::remove_all(dir);
    return dir;
}

RunConfig small_run() {
    RunConfig c = parse_run_config(R"({
      "model": {"d1": 1.0, "d2": 0.5, "f": 0.04, "kappa": 0.06},
      "space": {"dim": 2, "extents": [1.0, 1.0], "counts": [32, 32]},
      "kernel": {"type": "nonlocal", "j": 4},
      "integrator": {"dt": 0.02, "t_end": 2.0, "box_bounds": [1.0, 1.5]},
      "initial": {"preset": "random_seeded", "params": {"seed": 3}},
      "output": {"snapshot_every": 50, "monitor_every": 10}
    })");
    return c;
}

} // namespace

TEST_CASE("simulate writes the artifact set") {
    const auto dir = scratch("simulate");
    const SimulationResult r = run_simulation(small_run(), dir);
    CHECK(r.exit_code == exit_ok);
    for (const char* f : {"config.json", "monitor.csv", "diagnostics.csv", "report.json", "snapshots/u_000000.bin",
                          "snapshots/v_000002.bin"})
        CHECK(std::filesystem::exists(dir / f));
    std::ifstream cfg{dir / "config.json"};
    std::stringstream text;
    text << cfg.rdbuf();
    CHECK(parse_run_config(text.str()) == small_run());
    CHECK(r.report["status"] == "ok");
    CHECK(r.report["kernel"]["j"] == 4);
    std::filesystem::remove_all(dir);
}

TEST_CASE("restart from a snapshot continues bit for bit") {
    const auto dir = scratch("restart");
    const RunConfig full = small_run();
    const SimulationResult a = run_simulation(full, dir);
    REQUIRE(a.exit_code == exit_ok);
    RunConfig restart = full;
    restart.initial = InitialSpec{"", nlohmann::json::object(), (dir / "snapshots/u_000001.bin").string(),
                                  (dir / "snapshots/v_000001.bin").string()};
    const SimulationResult b = run_simulation(restart, std::nullopt);
    REQUIRE(b.exit_code == exit_ok);
    CHECK(b.trajectory.steps == 50);
    const State& x = a.trajectory.final_state();
    const State& y = b.trajectory.final_state();
    for (std::size_t i = 0; i < x.u.size(); ++i) {
        REQUIRE(x.u[i] == y.u[i]);
        REQUIRE(x.v[i] == y.v[i]);
    }
    std::filesystem::remove_all(dir);
}

TEST_CASE("oversized dt is rejected before stepping") {
    RunConfig c = small_run();
    c.integrator.dt = 0.5;
    CHECK_THROWS_AS(run_simulation(c, std::nullopt), std::invalid_argument);
}

TEST_CASE("violations give exit code 2") {
    RunConfig c = small_run();
    c.integrator.montol = -10.0;
    const SimulationResult r = run_simulation(c, std::nullopt);
    CHECK(r.exit_code == exit_violation);
    CHECK(r.report["violations"].size() > 0);
}

TEST_CASE("local operator uses D = m2 d / (2n)") {
    RunConfig c = small_run();
    c.op.kind = OperatorSpec::Kind::local;
    c.model.d2 = 1.0;
    c.integrator.box_bounds.reset();
    c.integrator.dt = 0.001;
    c.integrator.t_end = 0.1;
    const AssembledOperator a = assemble_operator(c);
    CHECK(a.d_u == doctest::Approx(kernel_moments(bump_profile(), 2).m2 / 4));
    CHECK(run_simulation(c, std::nullopt).exit_code == exit_ok);
    c.model.d2 = 0.5; // stencil with unequal diffusivities has no bound on v unless one is configured
    CHECK_THROWS_AS(run_simulation(c, std::nullopt), std::invalid_argument);
    c.integrator.box_bounds = std::array<double, 2>{1.0, 1.5};
    CHECK(run_simulation(c, std::nullopt).exit_code == exit_ok);
}

namespace {

LimitStudyConfig tiny_study() {
    LimitStudyConfig c;
    c.space.counts = {32, 32};
    c.j_ladder = {4, 8};
    c.T = 0.1;
    return c;
}

} // namespace

TEST_CASE("limit study: the shared steady state gives zero error") {
    LimitStudyConfig c = tiny_study();
    c.initial = InitialSpec{"semi_trivial", nlohmann::json::object(), "", ""};
    const LimitStudyReport r = run_limit_study(c);
    REQUIRE(r.ok());
    REQUIRE(r.runs.size() == 2);
    for (const LimitRun& run : r.runs) {
        CHECK(run.err_u == 0.0);
        CHECK(run.err_v == 0.0);
    }
}

TEST_CASE("limit study: homogeneous data agree with the local run") {
    LimitStudyConfig c = tiny_study();
    c.initial = InitialSpec{"homogeneous", {{"u0", 0.6}, {"v0", 0.4}}, "", ""};
    const LimitStudyReport r = run_limit_study(c);
    REQUIRE(r.ok());
    for (const LimitRun& run : r.runs)
        CHECK(run.err_u < 1e-13);
}

TEST_CASE("limit study: bump data, report and artifacts") {
    const auto dir = scratch("study");
    LimitStudyConfig c = tiny_study();
    c.workers = 2;
    const LimitStudyReport r = run_limit_study(c, dir);
    REQUIRE(r.ok());
    CHECK(r.m2 == doctest::Approx(0.121904914872034244).epsilon(1e-10));
    CHECK(r.D1 == doctest::Approx(r.m2 / 4));
    CHECK(r.runs[1].err_u < r.runs[0].err_u);
    CHECK(r.monotone_u);
    for (const char* f : {"report.json", "errors.csv", "runs/local/monitor.csv", "runs/j_4/u_final.bin",
                          "runs/j_8/monitor.csv"})
        CHECK(std::filesystem::exists(dir / f));
    // worker count does not change the numbers
    c.workers = 1;
    const LimitStudyReport serial = run_limit_study(c);
    CHECK(serial.runs[0].err_u == r.runs[0].err_u);
    CHECK(serial.runs[1].err_v == r.runs[1].err_v);
    std::filesystem::remove_all(dir);
}

TEST_CASE("limit study configuration checks") {
    LimitStudyConfig c = tiny_study();
    c.j_ladder = {8, 4};
    CHECK_THROWS_AS(c.validate(), ConfigError);
    c.j_ladder = {4, 16};
    CHECK_THROWS_WITH_AS(c.validate(), doctest::Contains("64 cells"), ConfigError);
    CHECK_THROWS_AS(parse_limit_study_config(R"({"j_ladder": [4, 8], "extra": 1})"), ConfigError);
    const LimitStudyConfig parsed = parse_limit_study_config(to_json(tiny_study()).dump());
    CHECK(parsed.j_ladder == tiny_study().j_ladder);
    CHECK(parsed.space == tiny_study().space);
}

TEST_CASE("verify suites") {
    CHECK(suite_criteria("operator") == std::vector<int>{1, 3, 9, 10});
    CHECK(suite_criteria("bounds") == std::vector<int>{4, 7});
    CHECK_THROWS_AS(suite_criteria("everything"), std::invalid_argument);
    const CriterionResult steady = run_criterion(6);
    CHECK(steady.passed());
    CHECK(summary_line(steady).rfind("PASS [6]", 0) == 0);
    const CriterionResult fast = run_criterion(10);
    CHECK(fast.passed());
    CHECK(to_json(fast)["checks"].size() == 4);
    CHECK_FALSE(check_at_most("x", 2.0, 1.0, 0.5).passed);
    CHECK(check_near("y", 1.0, 1.1, 0.2).passed);
}
