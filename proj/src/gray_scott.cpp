#include "nlgs/gray_scott.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

namespace nlgs {

void ModelParams::validate() const {
    const auto ok = [](double x) { return std::isfinite(x) && x > 0.0; };
    if (!ok(d1) || !ok(d2) || !ok(f) || !ok(kappa))
        throw std::invalid_argument("model parameters (d1, d2, f, kappa) must all be positive and finite");
}

std::pair<double, double> reaction(double u, double v, const ModelParams& p) noexcept {
    const double uv2 = u * v * v;
    return {-uv2 + p.f * (1.0 - u), uv2 - (p.f + p.kappa) * v};
}

std::pair<Field, Field> reaction(const Field& u, const Field& v, const ModelParams& p) {
    require_same_grid(u.grid(), v.grid());
    Field F1{u.grid()};
    Field F2{u.grid()};
    for (std::size_t i = 0; i < u.size(); ++i) {
        const auto [a, b] = reaction(u[i], v[i], p);
        F1[i] = a;
        F2[i] = b;
    }
    return {std::move(F1), std::move(F2)};
}

std::string to_string(Regime r) {
    switch (r) {
    case Regime::s1: return "s1";
    case Regime::s2: return "s2";
    case Regime::s3: return "s3";
    }
    return "?";
}

SteadyStateReport steady_states(const ModelParams& p) {
    p.validate();
    const double f = p.f;
    const double fk = p.f + p.kappa;
    SteadyStateReport report;
    report.discriminant = f * f - 4.0 * f * fk * fk;
    report.states.push_back({1.0, 0.0});

    const double tol = 64.0 * std::numeric_limits<double>::epsilon() * f * f;
    if (std::abs(report.discriminant) <= tol) {
        report.regime = Regime::s2;
        report.states.push_back({0.5, 2.0 * fk});
    } else if (report.discriminant > 0.0) {
        report.regime = Regime::s3;
        // f - s = 4 f (f+kappa)^2 / (f + s) avoids cancellation in the minus branch.
        const double s = std::sqrt(report.discriminant);
        const double fs = f + s;
        report.states.push_back({2.0 * fk * fk / fs, fs / (2.0 * fk)});
        report.states.push_back({fs / (2.0 * f), 2.0 * f * fk / fs});
    } else {
        report.regime = Regime::s1;
    }
    return report;
}

std::string to_string(Stability s) {
    switch (s) {
    case Stability::stable: return "stable";
    case Stability::unstable: return "unstable";
    case Stability::marginal: return "marginal";
    }
    return "?";
}

std::array<std::array<double, 2>, 2> reaction_jacobian(double u, double v, const ModelParams& p) noexcept {
    return {{{-v * v - p.f, -2.0 * u * v}, {v * v, 2.0 * u * v - (p.f + p.kappa)}}};
}

StabilityReport classify_stability_homogeneous(const ModelParams& p, const HomogeneousState& s) {
    p.validate();
    const auto J = reaction_jacobian(s.u, s.v, p);
    const double tr = J[0][0] + J[1][1];
    const double det = J[0][0] * J[1][1] - J[0][1] * J[1][0];
    const std::complex<double> root = std::sqrt(std::complex<double>{tr * tr - 4.0 * det, 0.0});
    StabilityReport r;
    r.eigenvalues = {(tr + root) / 2.0, (tr - root) / 2.0};

    const double scale = std::abs(J[0][0]) + std::abs(J[0][1]) + std::abs(J[1][0]) + std::abs(J[1][1]);
    const double tol = 1e-10 * scale * scale;
    if (std::abs(det) <= tol)
        r.stability = Stability::marginal;
    else if (det < 0.0)
        r.stability = Stability::unstable;
    else if (std::abs(tr) <= 1e-10 * scale)
        r.stability = Stability::marginal;
    else
        r.stability = tr < 0.0 ? Stability::stable : Stability::unstable;
    return r;
}

} // namespace nlgs
