#ifndef NLGS_SPATIAL_OPERATOR_HPP
#define NLGS_SPATIAL_OPERATOR_HPP

#include "nlgs/grid.hpp"

namespace nlgs {

/// Linear diffusion-type operator A acting on grid fields. Implementations
/// are immutable and may be shared across threads.
class SpatialOperator {
public:
    virtual ~SpatialOperator() = default;

    virtual const Grid& grid() const noexcept = 0;
    /// out = A z; `out` must live on the same grid.
    virtual void apply(const Field& z, Field& out) const = 0;
    /// Upper bound on the sup-norm operator norm of A.
    virtual double sup_norm_bound() const noexcept = 0;
    /// Row-mass constant entering the a-priori bound on u + v. For a kernel
    /// operator this is gamma_inf; for a stencil, half its sup-norm bound.
    virtual double row_mass_bound() const noexcept = 0;
    /// True for integral operators with a finite row mass. The a-priori bound
    /// on u + v for unequal diffusivities only holds for those.
    virtual bool bounded_kernel() const noexcept { return true; }
    /// Dissipation functional: Y_j for kernels, -2 (z, A z) for stencils.
    virtual double dissipation(const Field& z) const = 0;

    Field operator()(const Field& z) const {
        Field out{grid()};
        apply(z, out);
        return out;
    }
};

} // namespace nlgs

#endif
