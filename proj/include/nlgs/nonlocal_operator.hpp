#ifndef NLGS_NONLOCAL_OPERATOR_HPP
#define NLGS_NONLOCAL_OPERATOR_HPP

#include <memory>

#include "nlgs/kernels.hpp"
#include "nlgs/spatial_operator.hpp"

namespace nlgs {

/// Gamma z(x) = sum_y chi(x, y) (z(y) - z(x)) |cell|.
///
/// neumann_nonlocal drops neighbours outside the box. dirichlet_extension
/// treats them as zero-valued, which adds an absorption term -m_out(x) z(x).
class NonlocalOperator final : public SpatialOperator {
public:
    explicit NonlocalOperator(std::shared_ptr<const KernelTable> table);
    NonlocalOperator(const KernelSpec& spec, const Grid& grid);

    const KernelTable& table() const noexcept { return *_table; }
    BoundaryMode mode() const noexcept { return _table->spec.boundary_mode; }

    const Grid& grid() const noexcept override { return _table->grid; }
    /// Stencil cross-correlation in fixed offset order, rows split across workers.
    void apply(const Field& z, Field& out) const override;
    double sup_norm_bound() const noexcept override { return _norm_estimate; }
    double row_mass_bound() const noexcept override { return _table->gamma_inf; }
    double dissipation(const Field& z) const override;

    /// Reference O(N^2) double loop that evaluates the kernel directly.
    Field apply_dense(const Field& z) const;

private:
    std::shared_ptr<const KernelTable> _table;
    double _norm_estimate;
};

/// 2 max_x (row mass at x); never exceeds 2 gamma_inf.
double operator_norm_estimate(const NonlocalOperator& op);

/// Y[z] = sum_x sum_y chi(x, y) (z(x) - z(y))^2 |cell|^2 over pairs inside the box.
double dissipation_Y(const NonlocalOperator& op, const Field& z);

/// Normalized profile rho(r) = r^2 phi(r) / m2 with unit mass.
struct RhoProfile {
    RadialProfile phi;
    double m2 = 0.0;

    double operator()(double r) const { return r * r * phi(r) / m2; }
};

RhoProfile rho_from_profile(const RadialProfile& phi, int dim);

/// Lambda_j(z) = sum |z(x) - z(y)|^p / |x - y|^p rho_j(x - y) |cell|^2 with
/// rho_j(x) = j^n rho(j x). Only p = 2 is supported.
double seminorm_Lambda(const RhoProfile& rho, int j, const Field& z, int p = 2);

/// sup over nodes farther than radius/j from the boundary of
/// |d Gamma W - D lap_W| with D = m2 d / (2n) and d the kernel diffusivity.
double laplacian_consistency(const NonlocalOperator& op, const Field& W, const Field& lap_W);

} // namespace nlgs

#endif
