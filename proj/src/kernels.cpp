#include "nlgs/kernels.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <mutex>
#include <stdexcept>
#include <tuple>

namespace nlgs {

RadialProfile bump_profile(double radius) {
    if (!(radius > 0.0))
        throw std::invalid_argument("bump profile radius must be positive");
    return RadialProfile{"bump", radius, [radius](double r) {
                             const double s = r / radius;
                             if (s >= 1.0)
                                 return 0.0;
                             return std::exp(-1.0 / (1.0 - s * s));
                         }};
}

RadialProfile indicator_profile(double radius) {
    if (!(radius > 0.0))
        throw std::invalid_argument("indicator profile radius must be positive");
    return RadialProfile{"indicator", radius, [](double) { return 1.0; }};
}

RadialProfile profile_by_name(const std::string& name, double radius) {
    if (name == "bump")
        return bump_profile(radius);
    if (name == "indicator")
        return indicator_profile(radius);
    throw std::invalid_argument("unknown kernel profile '" + name + "' (expected bump or indicator)");
}

void validate_profile(const RadialProfile& profile) {
    if (!(profile.radius > 0.0) || !profile.eval)
        throw std::invalid_argument("profile '" + profile.name + "' needs a positive radius and an evaluator");
    constexpr int samples = 1024;
    double previous = profile(0.0);
    for (int k = 0; k <= samples; ++k) {
        const double r = profile.radius * k / samples;
        const double value = profile(r);
        if (!std::isfinite(value) || value < 0.0)
            throw std::invalid_argument("profile '" + profile.name + "' is negative or non-finite at r = " +
                                        std::to_string(r));
        if (value > previous)
            throw std::invalid_argument("profile '" + profile.name + "' is not non-increasing at r = " +
                                        std::to_string(r));
        previous = value;
    }
}

KernelMoments kernel_moments(const RadialProfile& profile, int dim, std::size_t resolution) {
    if (dim != 1 && dim != 2)
        throw std::invalid_argument("kernel moments need dim 1 or 2");
    if (resolution < 64)
        throw std::invalid_argument("kernel moments need at least 64 quadrature points per axis");
    const double R = profile.radius;
    const double h = 2.0 * R / static_cast<double>(resolution);
    const auto coord = [&](std::size_t i) { return -R + (static_cast<double>(i) + 0.5) * h; };

    KernelMoments m;
    const auto accumulate = [&](double r2, double cell) {
        const double value = profile(std::sqrt(r2));
        if (!std::isfinite(value))
            throw std::invalid_argument("profile '" + profile.name + "' returned a non-finite value");
        m.M0 += value * cell;
        m.m2 += r2 * value * cell;
    };
    if (dim == 1) {
        for (std::size_t i = 0; i < resolution; ++i) {
            const double x = coord(i);
            accumulate(x * x, h);
        }
    } else {
        for (std::size_t i = 0; i < resolution; ++i) {
            const double x = coord(i);
            for (std::size_t k = 0; k < resolution; ++k) {
                const double y = coord(k);
                accumulate(x * x + y * y, h * h);
            }
        }
    }
    return m;
}

std::string to_string(BoundaryMode mode) {
    return mode == BoundaryMode::neumann_nonlocal ? "neumann_nonlocal" : "dirichlet_extension";
}

BoundaryMode boundary_mode_from_string(const std::string& s) {
    if (s == "neumann_nonlocal")
        return BoundaryMode::neumann_nonlocal;
    if (s == "dirichlet_extension")
        return BoundaryMode::dirichlet_extension;
    throw std::invalid_argument("unknown boundary mode '" + s + "'");
}

double KernelTable::offset_length(std::size_t k) const noexcept {
    const double a = offsets[k][0] * grid.spacing()[0];
    const double b = offsets[k][1] * grid.spacing()[1];
    return std::sqrt(a * a + b * b);
}

std::size_t minimum_cells_per_axis(const KernelSpec& spec, double extent) {
    return static_cast<std::size_t>(std::ceil(4.0 * extent / spec.support_radius() - 1e-12));
}

namespace {

KernelMoments moments_for(const RadialProfile& profile, int dim) {
    static std::mutex mutex;
    static std::map<std::tuple<std::string, double, int>, KernelMoments> cache;
    const auto key = std::make_tuple(profile.name, profile.radius, dim);
    {
        std::lock_guard lock{mutex};
        if (auto it = cache.find(key); it != cache.end())
            return it->second;
    }
    const KernelMoments m = kernel_moments(profile, dim, 1024);
    std::lock_guard lock{mutex};
    cache.emplace(key, m);
    return m;
}

} // namespace

KernelTable build_kernel_table(const KernelSpec& spec, const Grid& grid) {
    if (spec.scale_j < 1)
        throw std::invalid_argument("kernel scale j must be a positive integer");
    validate_profile(spec.profile);

    const double support = spec.support_radius();
    if (support < 4.0 * grid.max_spacing() * (1.0 - 1e-12)) {
        std::string need;
        for (int a = 0; a < grid.dim(); ++a) {
            if (a)
                need += " x ";
            need += std::to_string(minimum_cells_per_axis(spec, grid.extents()[static_cast<std::size_t>(a)]));
        }
        throw std::invalid_argument("kernel support radius/j = " + std::to_string(support) +
                                    " is below 4 grid spacings; need at least " + need + " cells");
    }

    KernelTable t{grid, spec, {}, {}, 0.0, 0.0, 0.0, 0.0, 0.0, {}, {}};
    const int n = grid.dim();
    const double scale = std::pow(static_cast<double>(spec.scale_j), n + 2);
    const auto h = grid.spacing();
    const int r0 = static_cast<int>(std::ceil(support / h[0]));
    const int r1 = n == 2 ? static_cast<int>(std::ceil(support / h[1])) : 0;

    for (int o0 = -r0; o0 <= r0; ++o0) {
        for (int o1 = -r1; o1 <= r1; ++o1) {
            const double a = o0 * h[0];
            const double b = o1 * h[1];
            const double dist = std::sqrt(a * a + b * b);
            if (dist >= support)
                continue;
            const double w = scale * spec.profile(spec.scale_j * dist) * grid.cell_measure();
            if (w <= 0.0)
                continue;
            t.offsets.push_back({o0, o1});
            t.weights.push_back(w);
        }
    }

    for (std::size_t k = 0; k < t.weights.size(); ++k) {
        t.row_mass_interior += t.weights[k];
        const double len = t.offset_length(k);
        t.discrete_m2 += t.weights[k] * len * len;
    }
    t.gamma_inf = t.row_mass_interior;

    const KernelMoments m = moments_for(spec.profile, n);
    t.M0 = m.M0;
    t.m2 = m.m2;

    const auto counts = grid.counts();
    t.row_mass.assign(grid.size(), 0.0);
    t.exterior_mass.assign(grid.size(), 0.0);
    for (std::size_t i0 = 0; i0 < counts[0]; ++i0) {
        for (std::size_t i1 = 0; i1 < counts[1]; ++i1) {
            const std::size_t c = grid.index(i0, i1);
            for (std::size_t k = 0; k < t.offsets.size(); ++k) {
                const auto y0 = static_cast<long>(i0) + t.offsets[k][0];
                const auto y1 = static_cast<long>(i1) + t.offsets[k][1];
                const bool inside = y0 >= 0 && y0 < static_cast<long>(counts[0]) && y1 >= 0 &&
                                    y1 < static_cast<long>(counts[1]);
                (inside ? t.row_mass[c] : t.exterior_mass[c]) += t.weights[k];
            }
        }
    }
    return t;
}

std::shared_ptr<const KernelTable> cached_kernel_table(const KernelSpec& spec, const Grid& grid) {
    using Key = std::tuple<std::string, double, int, int, double, double, std::size_t, std::size_t, int>;
    static std::mutex mutex;
    static std::map<Key, std::shared_ptr<const KernelTable>> cache;
    const Key key{spec.profile.name, spec.profile.radius, spec.scale_j, static_cast<int>(spec.boundary_mode),
                  grid.extents()[0],  grid.extents()[1],   grid.counts()[0], grid.counts()[1],
                  grid.dim()};
    {
        std::lock_guard lock{mutex};
        if (auto it = cache.find(key); it != cache.end()) {
            if (it->second->spec.diffusivity == spec.diffusivity)
                return it->second;
        }
    }
    auto table = std::make_shared<const KernelTable>(build_kernel_table(spec, grid));
    std::lock_guard lock{mutex};
    cache[key] = table;
    return table;
}

nlohmann::json kernel_summary(const KernelTable& table) {
    return {{"profile", table.spec.profile.name},
            {"radius", table.spec.profile.radius},
            {"j", table.spec.scale_j},
            {"boundary_mode", to_string(table.spec.boundary_mode)},
            {"M0", table.M0},
            {"m2", table.m2},
            {"discrete_m2", table.discrete_m2},
            {"gamma_inf", table.gamma_inf},
            {"offset_count", table.offsets.size()}};
}

} // namespace nlgs
