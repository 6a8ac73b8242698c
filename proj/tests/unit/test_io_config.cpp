#include <doctest.h>

#include <cmath>
#include <stdexcept>
#include <filesystem>
#include <sstream>

#include "nlgs/config.hpp"
#include "nlgs/io.hpp"

using namespace nlgs;

namespace {

const char* full_config = R"({
  "model": {"d1": 1.0, "d2": 0.5, "f": 0.03, "kappa": 0.06},
  "space": {"dim": 2, "extents": [1.0, 2.0], "counts": [32, 64]},
  "kernel": {"type": "nonlocal", "profile": {"name": "bump", "radius": 1.0}, "j": 4, "boundary": "dirichlet_extension"},
  "integrator": {"scheme": "imex_linear_decay", "dt": 0.01, "t_end": 2.0, "montol": 1e-7, "box_bounds": [1.5, 2.0]},
  "initial": {"preset": "gaussian_bump", "params": {"u_amp": -0.25, "center": [0.5, 1.0]}},
  "monitors": ["positivity", "ubu"],
  "output": {"dir": "somewhere", "snapshot_every": 10, "monitor_every": 2}
})";

} // namespace

TEST_CASE("snapshots round-trip bitwise") {
    const Grid g{2, {1.0, 2.0}, {5, 3}};
    Field z = sample(g, [](double x, double y) { return std::sin(x * 7.1) / (1.0 + y); });
    z[4] = -0.0;
    z[5] = 1e-310;
    std::stringstream buf;
    write_snapshot(buf, z, 0.125, "u");
    const Snapshot back = read_snapshot(buf);
    CHECK(back.time == 0.125);
    CHECK(back.name == "u");
    CHECK(back.field.grid() == g);
    for (std::size_t i = 0; i < z.size(); ++i)
        CHECK(std::bit_cast<std::uint64_t>(back.field[i]) == std::bit_cast<std::uint64_t>(z[i]));
    std::stringstream truncated{buf.str().substr(0, buf.str().size() - 3)};
    std::stringstream again;
    write_snapshot(again, z, 0.0, "v");
    const std::string text = again.str();
    std::stringstream cut{text.substr(0, text.size() - 4)};
    CHECK_THROWS(read_snapshot(cut));
}

TEST_CASE("payload is little-endian float64 after a one-line header") {
    const Grid g{1, {1.0, 1.0}, {2, 1}};
    std::stringstream buf;
    write_snapshot(buf, Field{g, std::vector<double>{1.0, -2.0}}, 0.0, "u");
    std::string header;
    std::getline(buf, header);
    CHECK(nlohmann::json::parse(header)["counts"] == nlohmann::json::array({2}));
    unsigned char bytes[16];
    buf.read(reinterpret_cast<char*>(bytes), 16);
    CHECK(bytes[7] == 0x3f);
    CHECK(bytes[6] == 0xf0);
    CHECK(bytes[15] == 0xc0);
}

TEST_CASE("config echo re-parses to an equal configuration") {
    const RunConfig a = parse_run_config(full_config);
    CHECK(a.model.d2 == 0.5);
    CHECK(a.op.boundary_mode == BoundaryMode::dirichlet_extension);
    CHECK(a.integrator.scheme == Scheme::imex_linear_decay);
    CHECK(a.integrator.box_bounds.value()[1] == 2.0);
    CHECK(a.integrator.monitors.positivity);
    CHECK_FALSE(a.integrator.monitors.energy);
    CHECK(a.integrator.snapshot_every == 10);
    const RunConfig b = parse_run_config(to_json(a).dump());
    CHECK(a == b);
    const RunConfig defaults = parse_run_config("{}");
    CHECK(parse_run_config(to_json(defaults).dump()) == defaults);
    RunConfig local = defaults;
    local.op.kind = OperatorSpec::Kind::local;
    local.op.bc = LaplacianBc::dirichlet;
    local.initial = InitialSpec{"", nlohmann::json::object(), "u.bin", "v.bin"};
    CHECK(parse_run_config(to_json(local).dump()) == local);
}

TEST_CASE("unknown keys and malformed JSON are rejected with a location") {
    CHECK_THROWS_WITH_AS(parse_run_config(R"({"model": {"f": 0.04, "feed": 1}})"),
                         doctest::Contains("unknown key 'feed' in model"), ConfigError);
    CHECK_THROWS_WITH_AS(parse_run_config(R"({"modle": {}})"), doctest::Contains("'modle'"), ConfigError);
    CHECK_THROWS_WITH_AS(parse_run_config("{\n  \"model\": {\n    \"f\": ,\n}}"), doctest::Contains("line 3"),
                         ConfigError);
    CHECK_THROWS_AS(parse_run_config(R"({"kernel": {"type": "local", "j": 4}})"), ConfigError);
    CHECK_THROWS_AS(parse_run_config(R"({"kernel": {"boundary": "periodic"}})"), ConfigError);
    CHECK_THROWS_AS(parse_run_config(R"({"monitors": ["entropy"]})"), ConfigError);
    CHECK_THROWS_AS(parse_run_config(R"({"model": {"f": -1}})"), ConfigError);
    CHECK_THROWS_AS(parse_run_config(R"({"integrator": {"dt": "fast"}})"), ConfigError);
    CHECK_THROWS_AS(parse_run_config(R"({"initial": {"snapshot_u": "a.bin"}})"), ConfigError);
}

TEST_CASE("initial presets") {
    const Grid g{2, {1.0, 1.0}, {32, 32}};
    const ModelParams p{1.0, 1.0, 0.04, 0.01};
    const auto make = [&](const char* preset, nlohmann::json params) {
        return make_initial(InitialSpec{preset, std::move(params), "", ""}, g, p);
    };
    const State trivial = make("semi_trivial", nlohmann::json::object());
    CHECK(trivial.u.min() == 1.0);
    CHECK(trivial.v.max() == 0.0);

    const State hom = make("homogeneous", {{"u0", 0.3}, {"v0", 0.7}});
    CHECK(hom.u.max() == 0.3);
    CHECK(hom.v.min() == 0.7);

    const State pert = make("perturbed_semi_trivial", {{"amplitude", 0.1}});
    CHECK(pert.v.max() == doctest::Approx(0.1));
    CHECK(pert.u.min() == 1.0);

    const State decay = make("thm12_decay", {{"delta", 0.2}});
    CHECK(decay.u.max() <= 1.2);
    CHECK(decay.v.max() == doctest::Approx(0.5 * 0.05 / 1.2).epsilon(1e-14));

    const State bump = make("gaussian_bump", {{"u_base", 1.0}, {"u_amp", 1.0}, {"v_amp", 0.25}});
    CHECK(bump.u.max() == doctest::Approx(2.0).epsilon(1e-15));
    CHECK_THROWS_AS(make("gaussian_bump", {{"u_amp", -2.0}}), ConfigError);

    const State r1 = make("random_seeded", {{"seed", 5}});
    const State r2 = make("random_seeded", {{"seed", 5}});
    const State r3 = make_initial(InitialSpec{"random_seeded", {{"seed", 5}}, "", ""}, g, p, 6);
    CHECK(r1.u[17] == r2.u[17]);
    CHECK(r1.u[17] != r3.u[17]);
    CHECK(r1.u.min() >= 0.0);
    CHECK(r1.v.max() <= 0.5);

    CHECK_THROWS_AS(make("checkerboard", nlohmann::json::object()), ConfigError);
    CHECK_THROWS_AS(make("homogeneous", {{"w0", 1}}), ConfigError);
}

TEST_CASE("snapshot initial data must match the grid") {
    const Grid g{2, {1.0, 1.0}, {8, 8}};
    const auto dir = std::filesystem::temp_directory_path() / "nlgs_test_snapshots";
    std::filesystem::create_directories(dir);
    write_snapshot(dir / "u.bin", Field{g, 0.5}, 3.0, "u");
    write_snapshot(dir / "v.bin", Field{g, 0.25}, 3.0, "v");
    const InitialSpec spec{"", nlohmann::json::object(), (dir / "u.bin").string(), (dir / "v.bin").string()};
    const State s = make_initial(spec, g, ModelParams{});
    CHECK(s.t == 3.0);
    CHECK(s.v[0] == 0.25);
    CHECK_THROWS_AS(make_initial(spec, Grid{2, {1.0, 1.0}, {8, 9}}, ModelParams{}), ConfigError);
    std::filesystem::remove_all(dir);
}
