#ifndef NLGS_GRAY_SCOTT_HPP
#define NLGS_GRAY_SCOTT_HPP

#include <array>
#include <complex>
#include <string>
#include <utility>
#include <vector>

#include "nlgs/grid.hpp"

namespace nlgs {

/// (d1, d2, f, kappa), all strictly positive.
struct ModelParams {
    double d1 = 1.0;
    double d2 = 1.0;
    double f = 0.04;
    double kappa = 0.01;

    void validate() const;
    friend bool operator==(const ModelParams&, const ModelParams&) = default;
};

/// F1 = -u v^2 + f (1 - u), F2 = u v^2 - (f + kappa) v.
std::pair<double, double> reaction(double u, double v, const ModelParams& p) noexcept;
std::pair<Field, Field> reaction(const Field& u, const Field& v, const ModelParams& p);

enum class Regime { s1, s2, s3 };
std::string to_string(Regime r);

struct HomogeneousState {
    double u = 1.0;
    double v = 0.0;
};

struct SteadyStateReport {
    Regime regime = Regime::s1;
    std::vector<HomogeneousState> states; ///< (1,0) first, then (u+,v+), (u-,v-)
    double discriminant = 0.0;            ///< f^2 - 4 f (f + kappa)^2
};

/// Regime from the sign of the discriminant. |disc| below 64 eps f^2 counts
/// as the double-root case s2.
SteadyStateReport steady_states(const ModelParams& p);

enum class Stability { stable, unstable, marginal };
std::string to_string(Stability s);

struct StabilityReport {
    Stability stability = Stability::stable;
    std::array<std::complex<double>, 2> eigenvalues;
};

/// Eigenvalues of the reaction Jacobian at a homogeneous state. This is the
/// zero-diffusion ODE classification; only (1, 0) is known to carry over to
/// the spatial problem.
StabilityReport classify_stability_homogeneous(const ModelParams& p, const HomogeneousState& s);

/// Jacobian [[dF1/du, dF1/dv], [dF2/du, dF2/dv]].
std::array<std::array<double, 2>, 2> reaction_jacobian(double u, double v, const ModelParams& p) noexcept;

} // namespace nlgs

#endif
