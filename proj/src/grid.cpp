#include "nlgs/grid.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

namespace nlgs {

Grid::Grid(int dim, std::array<double, 2> extents, std::array<std::size_t, 2> counts)
    : _dim{dim}
    , _extents{extents}
    , _counts{counts} {
    if (dim != 1 && dim != 2)
        throw std::invalid_argument("grid dimension must be 1 or 2, got " + std::to_string(dim));
    if (dim == 1) {
        _extents[1] = 1.0;
        _counts[1] = 1;
    }
    for (int a = 0; a < dim; ++a) {
        const auto axis = static_cast<std::size_t>(a);
        if (!(_extents[axis] > 0.0) || !std::isfinite(_extents[axis]))
            throw std::invalid_argument("grid extent along axis " + std::to_string(a) + " must be positive");
        if (_counts[axis] < 2)
            throw std::invalid_argument("grid count along axis " + std::to_string(a) + " must be at least 2");
    }
    _spacing = {_extents[0] / static_cast<double>(_counts[0]), _extents[1] / static_cast<double>(_counts[1])};
    _cell_measure = dim == 1 ? _spacing[0] : _spacing[0] * _spacing[1];
}

double Grid::domain_measure() const noexcept {
    return _dim == 1 ? _extents[0] : _extents[0] * _extents[1];
}

double Grid::max_spacing() const noexcept {
    return _dim == 1 ? _spacing[0] : std::max(_spacing[0], _spacing[1]);
}

std::array<double, 2> Grid::position(std::size_t flat) const noexcept {
    const std::size_t i0 = flat / _counts[1];
    const std::size_t i1 = flat % _counts[1];
    return {node(0, i0), _dim == 1 ? 0.0 : node(1, i1)};
}

double Grid::distance_to_boundary(std::size_t flat) const noexcept {
    const auto x = position(flat);
    double d = std::min(x[0], _extents[0] - x[0]);
    if (_dim == 2)
        d = std::min({d, x[1], _extents[1] - x[1]});
    return d;
}

Grid make_grid(int dim, std::span<const double> extents, std::span<const std::size_t> counts) {
    if (dim != 1 && dim != 2)
        throw std::invalid_argument("grid dimension must be 1 or 2, got " + std::to_string(dim));
    const auto n = static_cast<std::size_t>(dim);
    if (extents.size() != n || counts.size() != n)
        throw std::invalid_argument("grid needs exactly " + std::to_string(dim) + " extents and counts");
    std::array<double, 2> e{1.0, 1.0};
    std::array<std::size_t, 2> c{1, 1};
    for (std::size_t a = 0; a < n; ++a) {
        e[a] = extents[a];
        c[a] = counts[a];
    }
    return Grid{dim, e, c};
}

Field::Field(const Grid& grid, double value)
    : _grid{grid}
    , _values(grid.size(), value) {}

Field::Field(const Grid& grid, std::vector<double> values)
    : _grid{grid}
    , _values{std::move(values)} {
    if (_values.size() != grid.size())
        throw std::invalid_argument("field length " + std::to_string(_values.size()) +
                                    " does not match grid size " + std::to_string(grid.size()));
}

bool Field::all_finite() const noexcept {
    return std::all_of(_values.begin(), _values.end(), [](double v) { return std::isfinite(v); });
}

double Field::min() const noexcept { return *std::min_element(_values.begin(), _values.end()); }
double Field::max() const noexcept { return *std::max_element(_values.begin(), _values.end()); }

Field& Field::operator+=(const Field& other) {
    require_same_grid(_grid, other._grid);
    for (std::size_t i = 0; i < _values.size(); ++i)
        _values[i] += other._values[i];
    return *this;
}

Field& Field::operator-=(const Field& other) {
    require_same_grid(_grid, other._grid);
    for (std::size_t i = 0; i < _values.size(); ++i)
        _values[i] -= other._values[i];
    return *this;
}

Field& Field::operator*=(double c) noexcept {
    for (double& v : _values)
        v *= c;
    return *this;
}

Field operator+(Field a, const Field& b) { return a += b; }
Field operator-(Field a, const Field& b) { return a -= b; }
Field operator*(double c, Field a) { return a *= c; }

Field sample(const Grid& grid, const std::function<double(double, double)>& fn) {
    Field z{grid};
    for (std::size_t i = 0; i < grid.size(); ++i) {
        const auto x = grid.position(i);
        z[i] = fn(x[0], x[1]);
    }
    return z;
}

double norm(const Field& z, NormKind kind) {
    const auto v = z.values();
    switch (kind) {
    case NormKind::sup: {
        double m = 0.0;
        for (double x : v)
            m = std::max(m, std::abs(x));
        return m;
    }
    case NormKind::L1: {
        double s = 0.0;
        for (double x : v)
            s += std::abs(x);
        return s * z.grid().cell_measure();
    }
    case NormKind::L2: {
        double s = 0.0;
        for (double x : v)
            s += x * x;
        return std::sqrt(s * z.grid().cell_measure());
    }
    }
    return 0.0;
}

double integral(const Field& z) {
    double s = 0.0;
    for (double x : z.values())
        s += x;
    return s * z.grid().cell_measure();
}

double inner(const Field& a, const Field& b) {
    require_same_grid(a.grid(), b.grid());
    double s = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i)
        s += a[i] * b[i];
    return s * a.grid().cell_measure();
}

void require_same_grid(const Grid& a, const Grid& b) {
    if (!(a == b))
        throw std::invalid_argument("fields live on different grids");
}

} // namespace nlgs
