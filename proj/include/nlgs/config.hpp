#ifndef NLGS_CONFIG_HPP
#define NLGS_CONFIG_HPP

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

#include "nlgs/gray_scott.hpp"
#include "nlgs/grid.hpp"
#include "nlgs/integrator.hpp"
#include "nlgs/kernels.hpp"
#include "nlgs/local_reference.hpp"

namespace nlgs {

/// Configuration error with a human-readable location.
class ConfigError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

struct GridSpec {
    int dim = 2;
    std::vector<double> extents{1.0, 1.0};
    std::vector<std::size_t> counts{64, 64};

    Grid make() const { return make_grid(dim, extents, counts); }
    friend bool operator==(const GridSpec&, const GridSpec&) = default;
};

struct ProfileSpec {
    std::string name = "bump";
    double radius = 1.0;

    RadialProfile make() const;
    friend bool operator==(const ProfileSpec&, const ProfileSpec&) = default;
};

/// Spatial operator choice: a scaled kernel or the classical Laplacian with
/// D_l = m2 d_l / (2n) matched to the same profile.
struct OperatorSpec {
    enum class Kind { nonlocal, local };
    Kind kind = Kind::nonlocal;
    ProfileSpec profile;
    int j = 8;
    BoundaryMode boundary_mode = BoundaryMode::neumann_nonlocal;
    LaplacianBc bc = LaplacianBc::neumann;

    friend bool operator==(const OperatorSpec&, const OperatorSpec&) = default;
};

/// Named preset (with its parameters) or a pair of snapshot files.
struct InitialSpec {
    std::string preset = "semi_trivial";
    nlohmann::json params = nlohmann::json::object();
    std::string snapshot_u;
    std::string snapshot_v;

    bool from_snapshots() const noexcept { return !snapshot_u.empty(); }
    friend bool operator==(const InitialSpec&, const InitialSpec&) = default;
};

struct RunConfig {
    ModelParams model;
    GridSpec space;
    OperatorSpec op;
    IntegratorConfig integrator;
    InitialSpec initial;
    std::string output_dir = "out";

    friend bool operator==(const RunConfig& a, const RunConfig& b);
};

/// Parses a run configuration; unknown keys and malformed JSON throw
/// ConfigError naming the offending key or line/column.
RunConfig parse_run_config(const std::string& text);
RunConfig load_run_config(const std::string& path);
nlohmann::json to_json(const RunConfig& config);

/// Rejects keys of `obj` outside `allowed`; `where` prefixes the message.
void require_keys(const nlohmann::json& obj, std::initializer_list<const char*> allowed, const std::string& where);

ModelParams parse_model(const nlohmann::json& j);
nlohmann::json to_json(const ModelParams& p);
GridSpec parse_grid(const nlohmann::json& j);
nlohmann::json to_json(const GridSpec& g);
ProfileSpec parse_profile(const nlohmann::json& j);
nlohmann::json to_json(const ProfileSpec& p);
InitialSpec parse_initial(const nlohmann::json& j);
nlohmann::json to_json(const InitialSpec& s);

/// Builds initial fields. Presets: semi_trivial, perturbed_semi_trivial,
/// thm12_decay, homogeneous, random_seeded, gaussian_bump. `seed`
/// overrides the random_seeded preset's own seed when set.
State make_initial(const InitialSpec& spec, const Grid& grid, const ModelParams& p,
                   std::optional<std::uint64_t> seed = std::nullopt);

/// Gaussian exp(-|x - c|^2 / (2 w^2)) sampled on the grid and scaled to unit maximum.
Field gaussian_bump(const Grid& grid, double width, std::array<double, 2> center);

} // namespace nlgs

#endif
