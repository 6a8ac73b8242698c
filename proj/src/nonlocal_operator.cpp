#include "nlgs/nonlocal_operator.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "nlgs/parallel.hpp"

namespace nlgs {

namespace {

struct OffsetRange {
    long lo0, hi0, lo1, hi1;
};

/// Rows/columns i such that i + o stays inside [0, n).
OffsetRange valid_range(const std::array<int, 2>& o, const std::array<std::size_t, 2>& counts) {
    const auto n0 = static_cast<long>(counts[0]);
    const auto n1 = static_cast<long>(counts[1]);
    return {std::max(0L, -static_cast<long>(o[0])), std::min(n0, n0 - o[0]), std::max(0L, -static_cast<long>(o[1])),
            std::min(n1, n1 - o[1])};
}

} // namespace

NonlocalOperator::NonlocalOperator(std::shared_ptr<const KernelTable> table)
    : _table{std::move(table)}
    , _norm_estimate{0.0} {
    if (!_table)
        throw std::invalid_argument("nonlocal operator needs a kernel table");
    // Dirichlet rows count their mass over all of R^n.
    double max_mass = _table->gamma_inf;
    if (_table->spec.boundary_mode == BoundaryMode::neumann_nonlocal)
        max_mass = *std::max_element(_table->row_mass.begin(), _table->row_mass.end());
    _norm_estimate = 2.0 * max_mass;
}

NonlocalOperator::NonlocalOperator(const KernelSpec& spec, const Grid& grid)
    : NonlocalOperator{cached_kernel_table(spec, grid)} {}

void NonlocalOperator::apply(const Field& z, Field& out) const {
    const KernelTable& t = *_table;
    require_same_grid(z.grid(), t.grid);
    require_same_grid(out.grid(), t.grid);
    const auto counts = t.grid.counts();
    const std::size_t n1 = counts[1];
    const double* zv = z.values().data();
    double* ov = out.values().data();

    parallel_for(counts[0], [&](std::size_t row_begin, std::size_t row_end) {
        std::fill(ov + row_begin * n1, ov + row_end * n1, 0.0);
        for (std::size_t k = 0; k < t.offsets.size(); ++k) {
            const auto& o = t.offsets[k];
            if (o[0] == 0 && o[1] == 0)
                continue;
            const double w = t.weights[k];
            const OffsetRange r = valid_range(o, counts);
            const long i0_begin = std::max(r.lo0, static_cast<long>(row_begin));
            const long i0_end = std::min(r.hi0, static_cast<long>(row_end));
            const long shift = static_cast<long>(o[0]) * static_cast<long>(n1) + o[1];
            for (long i0 = i0_begin; i0 < i0_end; ++i0) {
                const long base = i0 * static_cast<long>(n1);
                double* __restrict dst = ov + base;
                const double* __restrict self = zv + base;
                const double* __restrict other = zv + base + shift;
                for (long i1 = r.lo1; i1 < r.hi1; ++i1)
                    dst[i1] += w * (other[i1] - self[i1]);
            }
        }
        if (t.spec.boundary_mode == BoundaryMode::dirichlet_extension) {
            for (std::size_t c = row_begin * n1; c < row_end * n1; ++c)
                ov[c] -= t.exterior_mass[c] * zv[c];
        }
    });
}

Field NonlocalOperator::apply_dense(const Field& z) const {
    const KernelTable& t = *_table;
    require_same_grid(z.grid(), t.grid);
    const Grid& g = t.grid;
    const int n = g.dim();
    const double scale = std::pow(static_cast<double>(t.spec.scale_j), n + 2);
    const double support = t.spec.support_radius();
    const auto kernel = [&](double dist) {
        return dist < support ? scale * t.spec.profile(t.spec.scale_j * dist) * g.cell_measure() : 0.0;
    };

    Field out{g};
    const auto counts = g.counts();
    const auto h = g.spacing();
    const long reach0 = static_cast<long>(std::ceil(support / h[0]));
    const long reach1 = n == 2 ? static_cast<long>(std::ceil(support / h[1])) : 0;
    for (std::size_t x = 0; x < g.size(); ++x) {
        const auto px = g.position(x);
        double acc = 0.0;
        for (std::size_t y = 0; y < g.size(); ++y) {
            const auto py = g.position(y);
            const double dist = std::hypot(py[0] - px[0], py[1] - px[1]);
            const double w = kernel(dist);
            if (w != 0.0)
                acc += w * (z[y] - z[x]);
        }
        if (t.spec.boundary_mode == BoundaryMode::dirichlet_extension) {
            const auto x0 = static_cast<long>(x / counts[1]);
            const auto x1 = static_cast<long>(x % counts[1]);
            for (long o0 = -reach0; o0 <= reach0; ++o0) {
                for (long o1 = -reach1; o1 <= reach1; ++o1) {
                    const long y0 = x0 + o0;
                    const long y1 = x1 + o1;
                    const bool inside = y0 >= 0 && y0 < static_cast<long>(counts[0]) && y1 >= 0 &&
                                        y1 < static_cast<long>(counts[1]);
                    if (inside)
                        continue;
                    acc -= kernel(std::hypot(o0 * h[0], o1 * h[1])) * z[x];
                }
            }
        }
        out[x] = acc;
    }
    return out;
}

double NonlocalOperator::dissipation(const Field& z) const { return dissipation_Y(*this, z); }

double operator_norm_estimate(const NonlocalOperator& op) {
    const double estimate = op.sup_norm_bound();
    if (estimate > 2.0 * op.table().gamma_inf * (1.0 + 1e-12))
        throw std::logic_error("row mass exceeds gamma_inf");
    return estimate;
}

double dissipation_Y(const NonlocalOperator& op, const Field& z) {
    const KernelTable& t = op.table();
    require_same_grid(z.grid(), t.grid);
    const auto counts = t.grid.counts();
    const std::size_t n1 = counts[1];
    const double* zv = z.values().data();
    double total = 0.0;
    for (std::size_t k = 0; k < t.offsets.size(); ++k) {
        const auto& o = t.offsets[k];
        if (o[0] == 0 && o[1] == 0)
            continue;
        const OffsetRange r = valid_range(o, counts);
        const long shift = static_cast<long>(o[0]) * static_cast<long>(n1) + o[1];
        double partial = 0.0;
        for (long i0 = r.lo0; i0 < r.hi0; ++i0) {
            const long base = i0 * static_cast<long>(n1);
            for (long i1 = r.lo1; i1 < r.hi1; ++i1) {
                const double d = zv[base + i1] - zv[base + i1 + shift];
                partial += d * d;
            }
        }
        total += t.weights[k] * partial;
    }
    return total * t.grid.cell_measure();
}

RhoProfile rho_from_profile(const RadialProfile& phi, int dim) {
    return RhoProfile{phi, kernel_moments(phi, dim).m2};
}

double seminorm_Lambda(const RhoProfile& rho, int j, const Field& z, int p) {
    if (p != 2)
        throw std::invalid_argument("seminorm_Lambda supports p = 2 only");
    if (j < 1)
        throw std::invalid_argument("seminorm_Lambda needs j >= 1");
    const Grid& g = z.grid();
    const int n = g.dim();
    const auto counts = g.counts();
    const auto h = g.spacing();
    const double support = rho.phi.radius / j;
    const double scale = std::pow(static_cast<double>(j), n);
    const long reach0 = static_cast<long>(std::ceil(support / h[0]));
    const long reach1 = n == 2 ? static_cast<long>(std::ceil(support / h[1])) : 0;
    const double cm = g.cell_measure();

    double total = 0.0;
    for (long o0 = -reach0; o0 <= reach0; ++o0) {
        for (long o1 = -reach1; o1 <= reach1; ++o1) {
            if (o0 == 0 && o1 == 0)
                continue;
            const double dist = std::hypot(o0 * h[0], o1 * h[1]);
            if (dist >= support)
                continue;
            const double weight = scale * rho(j * dist) * cm * cm / (dist * dist);
            double partial = 0.0;
            for (long i0 = std::max(0L, -o0); i0 < std::min<long>(counts[0], counts[0] - o0); ++i0) {
                for (long i1 = std::max(0L, -o1); i1 < std::min<long>(counts[1], counts[1] - o1); ++i1) {
                    const double d = z[g.index(i0, i1)] - z[g.index(i0 + o0, i1 + o1)];
                    partial += d * d;
                }
            }
            total += weight * partial;
        }
    }
    return total;
}

double laplacian_consistency(const NonlocalOperator& op, const Field& W, const Field& lap_W) {
    const KernelTable& t = op.table();
    require_same_grid(W.grid(), t.grid);
    require_same_grid(lap_W.grid(), t.grid);
    const double d = t.spec.diffusivity;
    const double D = t.m2 * d / (2.0 * t.grid.dim());
    const Field gamma_W = op(W);
    const double support = t.spec.support_radius();
    double worst = 0.0;
    for (std::size_t c = 0; c < t.grid.size(); ++c) {
        if (t.grid.distance_to_boundary(c) <= support)
            continue;
        worst = std::max(worst, std::abs(d * gamma_W[c] - D * lap_W[c]));
    }
    return worst;
}

} // namespace nlgs
