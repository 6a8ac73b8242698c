#ifndef NLGS_LOCAL_REFERENCE_HPP
#define NLGS_LOCAL_REFERENCE_HPP

#include <array>
#include <functional>
#include <string>

#include "nlgs/gray_scott.hpp"
#include "nlgs/integrator.hpp"
#include "nlgs/spatial_operator.hpp"

namespace nlgs {

enum class LaplacianBc { neumann, dirichlet };
std::string to_string(LaplacianBc bc);
LaplacianBc laplacian_bc_from_string(const std::string& s);

/// Second-order (2n+1)-point Laplacian on the cell-centered grid. Neumann
/// reflects the boundary cell into the ghost (zero flux); Dirichlet uses a
/// zero ghost value. The operator carries no diffusivity.
class DiscreteLaplacian final : public SpatialOperator {
public:
    DiscreteLaplacian(const Grid& grid, LaplacianBc bc);

    LaplacianBc bc() const noexcept { return _bc; }

    const Grid& grid() const noexcept override { return _grid; }
    void apply(const Field& z, Field& out) const override;
    /// sum over axes of 4 / h^2
    double sup_norm_bound() const noexcept override;
    double row_mass_bound() const noexcept override { return 0.5 * sup_norm_bound(); }
    bool bounded_kernel() const noexcept override { return false; }
    /// -2 (z, L z)
    double dissipation(const Field& z) const override;

private:
    Grid _grid;
    LaplacianBc _bc;
};

Field apply_laplacian(const DiscreteLaplacian& L, const Field& z);

/// D = m2 d / (2n).
double effective_diffusivity(double m2, double d, int n);

struct LocalSpec {
    LaplacianBc bc = LaplacianBc::neumann;
    double m2 = 0.0; ///< second moment of the kernel profile being matched
};

/// Classical Gray-Scott run with D_l = m2 d_l / (2n).
Trajectory integrate_local(const State& initial, const ModelParams& p, const LocalSpec& spec,
                           const IntegratorConfig& config, const StepObserver& observer = {});

/// Test function theta with its gradient, evaluated pointwise.
struct TestFunction {
    std::function<double(double, double)> value;
    std::function<std::array<double, 2>(double, double)> gradient;
};

enum class Species { u, v };

/// Largest |weak-form defect| over the stored snapshot times:
///   (z(t) - z0, theta) + D int_0^t (grad z, grad theta) - int_0^t (F, theta)
/// with midpoint quadrature in space (cell-face differences of z against the
/// exact gradient of theta at face centers) and the trapezoid rule in time.
/// Needs a Neumann trajectory with at least 8 snapshots per unit time.
double weak_residual(const Trajectory& trajectory, const ModelParams& p, double diffusivity,
                     const TestFunction& theta, Species component);

} // namespace nlgs

#endif
