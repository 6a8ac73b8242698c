#ifndef NLGS_GRID_HPP
#define NLGS_GRID_HPP

#include <array>
#include <cstddef>
#include <functional>
#include <span>
#include <vector>

namespace nlgs {

/// Uniform cell-centered grid on the axis-aligned box [0, L_0] x [0, L_1].
///
/// One-dimensional grids are stored with a trailing unit axis
/// (counts[1] == 1, extents[1] == 1) so that every field is a dense
/// row-major array indexed as i0 * counts[1] + i1.
class Grid {
public:
    Grid(int dim, std::array<double, 2> extents, std::array<std::size_t, 2> counts);

    int dim() const noexcept { return _dim; }
    const std::array<double, 2>& extents() const noexcept { return _extents; }
    const std::array<std::size_t, 2>& counts() const noexcept { return _counts; }
    const std::array<double, 2>& spacing() const noexcept { return _spacing; }

    std::size_t size() const noexcept { return _counts[0] * _counts[1]; }
    double cell_measure() const noexcept { return _cell_measure; }
    double domain_measure() const noexcept;
    double max_spacing() const noexcept;

    std::size_t index(std::size_t i0, std::size_t i1) const noexcept { return i0 * _counts[1] + i1; }
    /// Cell-center coordinate along `axis`: (i + 1/2) h.
    double node(int axis, std::size_t i) const noexcept {
        return (static_cast<double>(i) + 0.5) * _spacing[static_cast<std::size_t>(axis)];
    }
    std::array<double, 2> position(std::size_t flat) const noexcept;
    /// Euclidean distance from cell `flat` to the boundary of the box.
    double distance_to_boundary(std::size_t flat) const noexcept;

    friend bool operator==(const Grid&, const Grid&) = default;

private:
    int _dim;
    std::array<double, 2> _extents;
    std::array<std::size_t, 2> _counts;
    std::array<double, 2> _spacing;
    double _cell_measure;
};

Grid make_grid(int dim, std::span<const double> extents, std::span<const std::size_t> counts);

/// Scalar grid function.
class Field {
public:
    explicit Field(const Grid& grid, double value = 0.0);
    Field(const Grid& grid, std::vector<double> values);

    const Grid& grid() const noexcept { return _grid; }
    std::size_t size() const noexcept { return _values.size(); }
    std::span<double> values() noexcept { return _values; }
    std::span<const double> values() const noexcept { return _values; }
    double& operator[](std::size_t i) noexcept { return _values[i]; }
    double operator[](std::size_t i) const noexcept { return _values[i]; }

    bool all_finite() const noexcept;
    double min() const noexcept;
    double max() const noexcept;

    Field& operator+=(const Field& other);
    Field& operator-=(const Field& other);
    Field& operator*=(double c) noexcept;

private:
    Grid _grid;
    std::vector<double> _values;
};

Field operator+(Field a, const Field& b);
Field operator-(Field a, const Field& b);
Field operator*(double c, Field a);

/// Samples `fn` at every cell center.
Field sample(const Grid& grid, const std::function<double(double, double)>& fn);

enum class NormKind { sup, L1, L2 };

/// Sup, L1 and L2 norms with midpoint quadrature. Summation runs in storage
/// order so results are bit-reproducible.
double norm(const Field& z, NormKind kind);
/// Midpoint integral of z over the box.
double integral(const Field& z);
/// Midpoint integral of a * b.
double inner(const Field& a, const Field& b);

void require_same_grid(const Grid& a, const Grid& b);

} // namespace nlgs

#endif
