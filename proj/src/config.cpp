#include "nlgs/config.hpp"

#include <cmath>
#include <fstream>
#include <random>
#include <sstream>

#include "nlgs/io.hpp"

namespace nlgs {

using nlohmann::json;

namespace {

std::string location_of(const std::string& text, std::size_t byte) {
    std::size_t line = 1, column = 1;
    for (std::size_t i = 0; i < std::min(byte, text.size()); ++i) {
        if (text[i] == '\n') {
            ++line;
            column = 1;
        } else {
            ++column;
        }
    }
    return "line " + std::to_string(line) + ", column " + std::to_string(column);
}

template <class T>
T get_or(const json& obj, const char* key, T fallback, const std::string& where) {
    const auto it = obj.find(key);
    if (it == obj.end())
        return fallback;
    try {
        return it->get<T>();
    } catch (const json::exception& e) {
        throw ConfigError(where + "." + key + ": " + e.what());
    }
}

void require_object(const json& j, const std::string& where) {
    if (!j.is_object())
        throw ConfigError(where + " must be a JSON object");
}

const char* monitor_names[] = {"positivity", "ubu", "ubv", "decay", "energy"};

bool* monitor_flag(MonitorSet& m, const std::string& name) {
    if (name == "positivity")
        return &m.positivity;
    if (name == "ubu")
        return &m.ubu;
    if (name == "ubv")
        return &m.ubv;
    if (name == "decay")
        return &m.decay;
    if (name == "energy")
        return &m.energy;
    return nullptr;
}

double param(const json& params, const char* key, double fallback) {
    return get_or<double>(params, key, fallback, "initial.params");
}

std::array<double, 2> center_param(const json& params, const Grid& g) {
    std::array<double, 2> c{0.5 * g.extents()[0], g.dim() == 2 ? 0.5 * g.extents()[1] : 0.0};
    if (const auto it = params.find("center"); it != params.end()) {
        const auto v = it->get<std::vector<double>>();
        if (v.size() != static_cast<std::size_t>(g.dim()))
            throw ConfigError("initial.params.center needs " + std::to_string(g.dim()) + " coordinates");
        c[0] = v[0];
        if (g.dim() == 2)
            c[1] = v[1];
    }
    return c;
}

double unit_uniform(std::uint64_t bits) { return static_cast<double>(bits >> 11) * 0x1.0p-53; }

} // namespace

RadialProfile ProfileSpec::make() const { return profile_by_name(name, radius); }

bool operator==(const RunConfig& a, const RunConfig& b) {
    return a.model == b.model && a.space == b.space && a.op == b.op && a.integrator == b.integrator &&
           a.initial == b.initial && a.output_dir == b.output_dir;
}

void require_keys(const json& obj, std::initializer_list<const char*> allowed, const std::string& where) {
    require_object(obj, where);
    for (const auto& [key, value] : obj.items()) {
        bool known = false;
        for (const char* a : allowed)
            known = known || key == a;
        if (!known) {
            std::string list;
            for (const char* a : allowed)
                list += (list.empty() ? "" : ", ") + std::string{a};
            throw ConfigError("unknown key '" + key + "' in " + where + " (allowed: " + list + ")");
        }
    }
}

ModelParams parse_model(const json& j) {
    require_keys(j, {"d1", "d2", "f", "kappa"}, "model");
    ModelParams p;
    p.d1 = get_or(j, "d1", p.d1, "model");
    p.d2 = get_or(j, "d2", p.d2, "model");
    p.f = get_or(j, "f", p.f, "model");
    p.kappa = get_or(j, "kappa", p.kappa, "model");
    try {
        p.validate();
    } catch (const std::exception& e) {
        throw ConfigError(std::string{"model: "} + e.what());
    }
    return p;
}

json to_json(const ModelParams& p) { return {{"d1", p.d1}, {"d2", p.d2}, {"f", p.f}, {"kappa", p.kappa}}; }

GridSpec parse_grid(const json& j) {
    require_keys(j, {"dim", "extents", "counts"}, "space");
    GridSpec g;
    g.dim = get_or(j, "dim", g.dim, "space");
    if (g.dim == 1) {
        g.extents = {1.0};
        g.counts = {64};
    }
    g.extents = get_or(j, "extents", g.extents, "space");
    g.counts = get_or(j, "counts", g.counts, "space");
    try {
        (void)g.make();
    } catch (const std::exception& e) {
        throw ConfigError(std::string{"space: "} + e.what());
    }
    return g;
}

json to_json(const GridSpec& g) { return {{"dim", g.dim}, {"extents", g.extents}, {"counts", g.counts}}; }

ProfileSpec parse_profile(const json& j) {
    require_keys(j, {"name", "radius"}, "kernel.profile");
    ProfileSpec p;
    p.name = get_or(j, "name", p.name, "kernel.profile");
    p.radius = get_or(j, "radius", p.radius, "kernel.profile");
    try {
        (void)p.make();
    } catch (const std::exception& e) {
        throw ConfigError(std::string{"kernel.profile: "} + e.what());
    }
    return p;
}

json to_json(const ProfileSpec& p) { return {{"name", p.name}, {"radius", p.radius}}; }

InitialSpec parse_initial(const json& j) {
    require_keys(j, {"preset", "params", "snapshot_u", "snapshot_v"}, "initial");
    InitialSpec s;
    s.preset = get_or(j, "preset", s.preset, "initial");
    s.params = get_or(j, "params", s.params, "initial");
    require_object(s.params, "initial.params");
    s.snapshot_u = get_or(j, "snapshot_u", s.snapshot_u, "initial");
    s.snapshot_v = get_or(j, "snapshot_v", s.snapshot_v, "initial");
    if (s.snapshot_u.empty() != s.snapshot_v.empty())
        throw ConfigError("initial: snapshot_u and snapshot_v must be given together");
    if (s.from_snapshots() && j.contains("preset"))
        throw ConfigError("initial: give either a preset or snapshot files, not both");
    if (s.from_snapshots()) {
        s.preset.clear();
        s.params = json::object();
    }
    return s;
}

json to_json(const InitialSpec& s) {
    if (s.from_snapshots())
        return {{"snapshot_u", s.snapshot_u}, {"snapshot_v", s.snapshot_v}};
    return {{"preset", s.preset}, {"params", s.params}};
}

RunConfig parse_run_config(const std::string& text) {
    json root;
    try {
        root = json::parse(text);
    } catch (const json::parse_error& e) {
        throw ConfigError("config parse error at " + location_of(text, e.byte == 0 ? 0 : e.byte - 1) + ": " +
                          e.what());
    }
    require_keys(root, {"model", "space", "kernel", "integrator", "initial", "monitors", "output"}, "config");

    RunConfig c;
    if (root.contains("model"))
        c.model = parse_model(root["model"]);
    if (root.contains("space"))
        c.space = parse_grid(root["space"]);

    if (root.contains("kernel")) {
        const json& k = root["kernel"];
        require_object(k, "kernel");
        const std::string type = get_or<std::string>(k, "type", "nonlocal", "kernel");
        if (type == "nonlocal") {
            require_keys(k, {"type", "profile", "j", "boundary"}, "kernel");
            c.op.kind = OperatorSpec::Kind::nonlocal;
            c.op.j = get_or(k, "j", c.op.j, "kernel");
            if (c.op.j < 1)
                throw ConfigError("kernel.j must be a positive integer");
            try {
                c.op.boundary_mode = boundary_mode_from_string(
                    get_or<std::string>(k, "boundary", to_string(c.op.boundary_mode), "kernel"));
            } catch (const std::invalid_argument& e) {
                throw ConfigError(std::string{"kernel.boundary: "} + e.what());
            }
        } else if (type == "local") {
            require_keys(k, {"type", "profile", "bc"}, "kernel");
            c.op.kind = OperatorSpec::Kind::local;
            try {
                c.op.bc = laplacian_bc_from_string(get_or<std::string>(k, "bc", to_string(c.op.bc), "kernel"));
            } catch (const std::invalid_argument& e) {
                throw ConfigError(std::string{"kernel.bc: "} + e.what());
            }
        } else {
            throw ConfigError("kernel.type must be 'nonlocal' or 'local', got '" + type + "'");
        }
        if (k.contains("profile"))
            c.op.profile = parse_profile(k["profile"]);
    }

    if (root.contains("integrator")) {
        const json& in = root["integrator"];
        require_keys(in, {"scheme", "dt", "t_end", "postol", "montol", "safety", "box_bounds"}, "integrator");
        IntegratorConfig& ic = c.integrator;
        try {
            ic.scheme = scheme_from_string(get_or<std::string>(in, "scheme", to_string(ic.scheme), "integrator"));
        } catch (const std::invalid_argument& e) {
            throw ConfigError(std::string{"integrator.scheme: "} + e.what());
        }
        ic.dt = get_or(in, "dt", ic.dt, "integrator");
        ic.t_end = get_or(in, "t_end", ic.t_end, "integrator");
        ic.postol = get_or(in, "postol", ic.postol, "integrator");
        ic.montol = get_or(in, "montol", ic.montol, "integrator");
        ic.safety = get_or(in, "safety", ic.safety, "integrator");
        if (in.contains("box_bounds") && !in["box_bounds"].is_null())
            ic.box_bounds = get_or<std::array<double, 2>>(in, "box_bounds", {}, "integrator");
        if (!(ic.dt > 0.0) || !(ic.t_end >= 0.0) || !(ic.safety > 0.0))
            throw ConfigError("integrator: need dt > 0, t_end >= 0 and safety > 0");
    }

    if (root.contains("monitors")) {
        const auto names = get_or<std::vector<std::string>>(root, "monitors", {}, "config");
        c.integrator.monitors = MonitorSet{false, false, false, false, false};
        for (const std::string& name : names) {
            bool* flag = monitor_flag(c.integrator.monitors, name);
            if (!flag)
                throw ConfigError("unknown monitor '" + name + "' (allowed: positivity, ubu, ubv, decay, energy)");
            *flag = true;
        }
    }

    if (root.contains("initial"))
        c.initial = parse_initial(root["initial"]);

    if (root.contains("output")) {
        const json& o = root["output"];
        require_keys(o, {"dir", "snapshot_every", "monitor_every"}, "output");
        c.output_dir = get_or(o, "dir", c.output_dir, "output");
        c.integrator.snapshot_every = get_or(o, "snapshot_every", c.integrator.snapshot_every, "output");
        c.integrator.monitor_every = get_or(o, "monitor_every", c.integrator.monitor_every, "output");
        if (c.integrator.monitor_every == 0)
            throw ConfigError("output.monitor_every must be at least 1");
    }
    return c;
}

RunConfig load_run_config(const std::string& path) {
    std::ifstream is{path};
    if (!is)
        throw ConfigError("cannot open config file " + path);
    std::stringstream buf;
    buf << is.rdbuf();
    return parse_run_config(buf.str());
}

json to_json(const RunConfig& c) {
    json kernel;
    if (c.op.kind == OperatorSpec::Kind::nonlocal) {
        kernel = {{"type", "nonlocal"},
                  {"profile", to_json(c.op.profile)},
                  {"j", c.op.j},
                  {"boundary", to_string(c.op.boundary_mode)}};
    } else {
        kernel = {{"type", "local"}, {"profile", to_json(c.op.profile)}, {"bc", to_string(c.op.bc)}};
    }
    const IntegratorConfig& ic = c.integrator;
    json integrator = {{"scheme", to_string(ic.scheme)}, {"dt", ic.dt},         {"t_end", ic.t_end},
                       {"postol", ic.postol},            {"montol", ic.montol}, {"safety", ic.safety}};
    if (ic.box_bounds)
        integrator["box_bounds"] = *ic.box_bounds;
    json monitors = json::array();
    MonitorSet m = ic.monitors;
    for (const char* name : monitor_names) {
        if (*monitor_flag(m, name))
            monitors.push_back(name);
    }
    return {{"model", to_json(c.model)},
            {"space", to_json(c.space)},
            {"kernel", kernel},
            {"integrator", integrator},
            {"initial", to_json(c.initial)},
            {"monitors", monitors},
            {"output",
             {{"dir", c.output_dir}, {"snapshot_every", ic.snapshot_every}, {"monitor_every", ic.monitor_every}}}};
}

Field gaussian_bump(const Grid& grid, double width, std::array<double, 2> center) {
    if (!(width > 0.0))
        throw std::invalid_argument("bump width must be positive");
    const bool two_d = grid.dim() == 2;
    Field g = sample(grid, [&](double x, double y) {
        const double dx = x - center[0];
        const double dy = two_d ? y - center[1] : 0.0;
        return std::exp(-(dx * dx + dy * dy) / (2.0 * width * width));
    });
    g *= 1.0 / g.max();
    return g;
}

State make_initial(const InitialSpec& spec, const Grid& grid, const ModelParams& p,
                   std::optional<std::uint64_t> seed) {
    if (spec.from_snapshots()) {
        Snapshot su = read_snapshot(spec.snapshot_u);
        Snapshot sv = read_snapshot(spec.snapshot_v);
        if (!(su.field.grid() == grid) || !(sv.field.grid() == grid))
            throw ConfigError("initial snapshots do not match the configured grid");
        if (su.time != sv.time)
            throw ConfigError("initial snapshots carry different times");
        return State{su.time, std::move(su.field), std::move(sv.field)};
    }

    const json& q = spec.params;
    const std::string& name = spec.preset;
    const auto allow = [&](std::initializer_list<const char*> keys) { require_keys(q, keys, "initial.params"); };

    if (name == "semi_trivial") {
        allow({});
        return State{0.0, Field{grid, 1.0}, Field{grid, 0.0}};
    }
    if (name == "homogeneous") {
        allow({"u0", "v0"});
        return State{0.0, Field{grid, param(q, "u0", 1.0)}, Field{grid, param(q, "v0", 0.0)}};
    }
    if (name == "perturbed_semi_trivial") {
        allow({"amplitude", "width", "center"});
        Field v = param(q, "amplitude", 0.25) * gaussian_bump(grid, param(q, "width", 0.1), center_param(q, grid));
        return State{0.0, Field{grid, 1.0}, std::move(v)};
    }
    if (name == "thm12_decay") {
        // sup u0 = 1 + delta at the corners, sup v0 = fraction (f + kappa) / (1 + delta) at the bump
        allow({"delta", "v_fraction", "u_dip", "width", "center"});
        const double delta = param(q, "delta", 0.0);
        const double fraction = param(q, "v_fraction", 0.5);
        const double dip = param(q, "u_dip", 0.5);
        if (delta < 0.0 || fraction < 0.0 || dip < 0.0 || dip > 1.0 + delta)
            throw ConfigError("thm12_decay needs delta >= 0, v_fraction >= 0 and 0 <= u_dip <= 1 + delta");
        const Field g = gaussian_bump(grid, param(q, "width", 0.1), center_param(q, grid));
        Field u = Field{grid, 1.0 + delta} - dip * g;
        Field v = (fraction * (p.f + p.kappa) / (1.0 + delta)) * g;
        return State{0.0, std::move(u), std::move(v)};
    }
    if (name == "gaussian_bump") {
        allow({"u_base", "u_amp", "v_base", "v_amp", "width", "center"});
        const Field g = gaussian_bump(grid, param(q, "width", 0.1), center_param(q, grid));
        Field u = Field{grid, param(q, "u_base", 1.0)} + param(q, "u_amp", -0.5) * g;
        Field v = Field{grid, param(q, "v_base", 0.0)} + param(q, "v_amp", 0.25) * g;
        if (u.min() < 0.0 || v.min() < 0.0)
            throw ConfigError("gaussian_bump parameters produce negative initial data");
        return State{0.0, std::move(u), std::move(v)};
    }
    if (name == "random_seeded") {
        allow({"seed", "u_max", "v_max"});
        const std::uint64_t s = seed ? *seed : get_or<std::uint64_t>(q, "seed", 0, "initial.params");
        const double u_max = param(q, "u_max", 1.0);
        const double v_max = param(q, "v_max", 0.5);
        if (u_max < 0.0 || v_max < 0.0)
            throw ConfigError("random_seeded needs non-negative u_max and v_max");
        std::mt19937_64 rng{s};
        Field u{grid}, v{grid};
        for (std::size_t i = 0; i < grid.size(); ++i) {
            u[i] = u_max * unit_uniform(rng());
            v[i] = v_max * unit_uniform(rng());
        }
        return State{0.0, std::move(u), std::move(v)};
    }
    throw ConfigError("unknown initial preset '" + name +
                      "' (expected semi_trivial, perturbed_semi_trivial, thm12_decay, homogeneous, "
                      "random_seeded or gaussian_bump)");
}

} // namespace nlgs
