#include "nlgs/local_reference.hpp"

#include <cmath>
#include <stdexcept>

#include "nlgs/parallel.hpp"

namespace nlgs {

std::string to_string(LaplacianBc bc) { return bc == LaplacianBc::neumann ? "neumann" : "dirichlet"; }

LaplacianBc laplacian_bc_from_string(const std::string& s) {
    if (s == "neumann")
        return LaplacianBc::neumann;
    if (s == "dirichlet")
        return LaplacianBc::dirichlet;
    throw std::invalid_argument("unknown Laplacian boundary condition '" + s + "'");
}

DiscreteLaplacian::DiscreteLaplacian(const Grid& grid, LaplacianBc bc)
    : _grid{grid}
    , _bc{bc} {}

void DiscreteLaplacian::apply(const Field& z, Field& out) const {
    require_same_grid(z.grid(), _grid);
    require_same_grid(out.grid(), _grid);
    const auto counts = _grid.counts();
    const auto h = _grid.spacing();
    const std::size_t n0 = counts[0];
    const std::size_t n1 = counts[1];
    const double inv0 = 1.0 / (h[0] * h[0]);
    const double inv1 = 1.0 / (h[1] * h[1]);
    const bool neumann = _bc == LaplacianBc::neumann;
    const bool two_d = _grid.dim() == 2;

    parallel_for(n0, [&](std::size_t row_begin, std::size_t row_end) {
        for (std::size_t i0 = row_begin; i0 < row_end; ++i0) {
            for (std::size_t i1 = 0; i1 < n1; ++i1) {
                const std::size_t c = i0 * n1 + i1;
                const double zc = z[c];
                const double ghost = neumann ? zc : 0.0;
                const double up = i0 > 0 ? z[c - n1] : ghost;
                const double down = i0 + 1 < n0 ? z[c + n1] : ghost;
                double acc = (up - 2.0 * zc + down) * inv0;
                if (two_d) {
                    const double left = i1 > 0 ? z[c - 1] : ghost;
                    const double right = i1 + 1 < n1 ? z[c + 1] : ghost;
                    acc += (left - 2.0 * zc + right) * inv1;
                }
                out[c] = acc;
            }
        }
    });
}

double DiscreteLaplacian::sup_norm_bound() const noexcept {
    const auto h = _grid.spacing();
    double b = 4.0 / (h[0] * h[0]);
    if (_grid.dim() == 2)
        b += 4.0 / (h[1] * h[1]);
    return b;
}

double DiscreteLaplacian::dissipation(const Field& z) const { return -2.0 * inner(z, (*this)(z)); }

Field apply_laplacian(const DiscreteLaplacian& L, const Field& z) { return L(z); }

double effective_diffusivity(double m2, double d, int n) {
    if (n < 1)
        throw std::invalid_argument("effective diffusivity needs n >= 1");
    return m2 * d / (2.0 * n);
}

Trajectory integrate_local(const State& initial, const ModelParams& p, const LocalSpec& spec,
                           const IntegratorConfig& config, const StepObserver& observer) {
    if (!(spec.m2 > 0.0))
        throw std::invalid_argument("local reference needs a positive second moment m2");
    const DiscreteLaplacian L{initial.u.grid(), spec.bc};
    const int n = initial.u.grid().dim();
    const DiffusionSystem sys =
        make_system(L, effective_diffusivity(spec.m2, p.d1, n), effective_diffusivity(spec.m2, p.d2, n));
    return integrate(initial, p, sys, config, observer);
}

namespace {

/// sum over interior faces of (dz/h) * dtheta(face) * |cell|
double gradient_pairing(const Field& z, const TestFunction& theta) {
    const Grid& g = z.grid();
    const auto counts = g.counts();
    const auto h = g.spacing();
    double total = 0.0;
    for (std::size_t i0 = 0; i0 + 1 < counts[0]; ++i0) {
        const double xf = (static_cast<double>(i0) + 1.0) * h[0];
        for (std::size_t i1 = 0; i1 < counts[1]; ++i1) {
            const double y = g.dim() == 2 ? g.node(1, i1) : 0.0;
            const double dz = (z[g.index(i0 + 1, i1)] - z[g.index(i0, i1)]) / h[0];
            total += dz * theta.gradient(xf, y)[0];
        }
    }
    if (g.dim() == 2) {
        for (std::size_t i0 = 0; i0 < counts[0]; ++i0) {
            const double x = g.node(0, i0);
            for (std::size_t i1 = 0; i1 + 1 < counts[1]; ++i1) {
                const double yf = (static_cast<double>(i1) + 1.0) * h[1];
                const double dz = (z[g.index(i0, i1 + 1)] - z[g.index(i0, i1)]) / h[1];
                total += dz * theta.gradient(x, yf)[1];
            }
        }
    }
    return total * g.cell_measure();
}

} // namespace

double weak_residual(const Trajectory& trajectory, const ModelParams& p, double diffusivity,
                     const TestFunction& theta, Species component) {
    const auto& snaps = trajectory.snapshots;
    if (snaps.size() < 2)
        throw std::invalid_argument("weak residual needs at least two snapshots");
    for (std::size_t k = 1; k < snaps.size(); ++k) {
        if (snaps[k].t - snaps[k - 1].t > 0.125 * (1.0 + 1e-9))
            throw std::invalid_argument("weak residual needs at least 8 snapshots per unit time");
    }
    const Grid& g = snaps.front().u.grid();
    const Field th = sample(g, theta.value);
    const auto pick = [component](const State& s) -> const Field& { return component == Species::u ? s.u : s.v; };
    const auto source = [&](const State& s) {
        const auto [F1, F2] = reaction(s.u, s.v, p);
        return inner(component == Species::u ? F1 : F2, th);
    };
    const auto integrand = [&](const State& s) { return diffusivity * gradient_pairing(pick(s), theta) - source(s); };

    const Field& z0 = pick(snaps.front());
    double previous = integrand(snaps.front());
    double accumulated = 0.0;
    double worst = 0.0;
    for (std::size_t k = 1; k < snaps.size(); ++k) {
        const double current = integrand(snaps[k]);
        accumulated += 0.5 * (snaps[k].t - snaps[k - 1].t) * (previous + current);
        previous = current;
        const double defect = inner(pick(snaps[k]) - z0, th) + accumulated;
        worst = std::max(worst, std::abs(defect));
    }
    return worst;
}

} // namespace nlgs
