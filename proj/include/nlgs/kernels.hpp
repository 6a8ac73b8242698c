#ifndef NLGS_KERNELS_HPP
#define NLGS_KERNELS_HPP

#include <array>
#include <cstddef>
#include <functional>
#include <memory>
#include <string>
#include <vector>

#include <json.hpp>

#include "nlgs/grid.hpp"

namespace nlgs {

/// Radial profile r -> phi(r) of a compactly supported interaction kernel.
struct RadialProfile {
    std::string name;
    double radius = 1.0;
    std::function<double(double)> eval;

    double operator()(double r) const { return r >= radius ? 0.0 : eval(r); }
};

/// phi(x) = exp(-1 / (1 - |x/radius|^2)) inside the ball, unnormalized.
RadialProfile bump_profile(double radius = 1.0);
/// Indicator of the ball of the given radius (M0 = pi r^2, m2 = pi r^4 / 2 in 2D).
RadialProfile indicator_profile(double radius = 1.0);
/// "bump" or "indicator".
RadialProfile profile_by_name(const std::string& name, double radius);

/// Throws std::invalid_argument unless the profile is finite, non-negative,
/// non-increasing on [0, radius] and vanishes at the radius.
void validate_profile(const RadialProfile& profile);

struct KernelMoments {
    double M0 = 0.0; ///< integral of phi over R^n
    double m2 = 0.0; ///< integral of |x|^2 phi over R^n
};

/// Midpoint rule on the support box [-radius, radius]^dim with
/// `resolution` points per axis (at least 64).
KernelMoments kernel_moments(const RadialProfile& profile, int dim, std::size_t resolution = 1024);

enum class BoundaryMode { neumann_nonlocal, dirichlet_extension };

std::string to_string(BoundaryMode mode);
BoundaryMode boundary_mode_from_string(const std::string& s);

/// Scaled kernel chi_j(x, y) = j^(n+2) phi(j (x - y)).
struct KernelSpec {
    RadialProfile profile;
    int scale_j = 1;
    BoundaryMode boundary_mode = BoundaryMode::neumann_nonlocal;
    double diffusivity = 1.0;

    double support_radius() const noexcept { return profile.radius / scale_j; }
};

/// Quadrature weights of chi_j on a uniform grid.
///
/// weights[k] = chi_j(0, offsets[k] h) * cell_measure, offsets sorted
/// lexicographically and restricted to |offset h| < radius / j. The offset
/// list is symmetric under negation and includes the zero offset so that the
/// full row mass reproduces j^2 M0 up to quadrature error.
struct KernelTable {
    Grid grid;
    KernelSpec spec;
    std::vector<std::array<int, 2>> offsets;
    std::vector<double> weights;
    double row_mass_interior = 0.0; ///< sum of all weights
    double gamma_inf = 0.0;         ///< row-mass bound; equals row_mass_interior
    double M0 = 0.0;                ///< profile mass
    double m2 = 0.0;                ///< profile second moment
    double discrete_m2 = 0.0;       ///< sum of weights |offset h|^2
    std::vector<double> row_mass;   ///< per cell, weights whose target lies in the box
    std::vector<double> exterior_mass; ///< per cell, weights whose target lies outside

    double offset_length(std::size_t k) const noexcept;
};

/// Smallest per-axis cell count that passes the resolution guard.
std::size_t minimum_cells_per_axis(const KernelSpec& spec, double extent);

/// Builds the table; throws std::invalid_argument when radius/j < 4 max(h).
KernelTable build_kernel_table(const KernelSpec& spec, const Grid& grid);

/// Memoized build_kernel_table keyed by profile, scale, mode and grid.
std::shared_ptr<const KernelTable> cached_kernel_table(const KernelSpec& spec, const Grid& grid);

/// {profile, radius, j, M0, m2, gamma_inf, offset_count}
nlohmann::json kernel_summary(const KernelTable& table);

} // namespace nlgs

#endif
