#pragma once

#include <cstddef>
#include <utility>
#include <vector>

namespace dwlab {

/// Uniform symmetric grid x_i = -half_width + i * dx, i = 0 .. n-1.
struct Grid {
    double half_width = 0.0;
    std::size_t n = 0;
    double dx = 0.0;

    double x(std::size_t i) const { return -half_width + static_cast<double>(i) * dx; }
    bool operator==(const Grid& other) const = default;
};

/// Grid on [-half_width, half_width] with n >= 2 equally spaced points.
/// Throws std::invalid_argument for non-positive width or n < 2.
Grid make_grid(double half_width, std::size_t n);

/// Real-valued samples on a Grid.
struct GridFunction {
    Grid grid;
    std::vector<double> values;

    double x(std::size_t i) const { return grid.x(i); }
    std::size_t size() const { return values.size(); }
};

GridFunction zeros(const Grid& g);

template <class F>
GridFunction sample(const Grid& g, F&& f) {
    GridFunction out;
    out.grid = g;
    out.values.resize(g.n);
    for (std::size_t i = 0; i < g.n; ++i) out.values[i] = f(g.x(i));
    return out;
}

/// Throws std::invalid_argument when two functions live on different grids.
void require_same_grid(const GridFunction& a, const GridFunction& b);

GridFunction add(const GridFunction& a, const GridFunction& b);
GridFunction sub(const GridFunction& a, const GridFunction& b);
GridFunction scale(const GridFunction& a, double c);
/// a += c * b
void axpy(GridFunction& a, double c, const GridFunction& b);

/// Index range [first, last] outside of which |f| <= tol * max|f|.
/// Returns {1, 0} (empty) for an identically small function.
std::pair<std::size_t, std::size_t> support_range(const GridFunction& f, double tol = 1e-14);

/// Outermost |x| where |f| exceeds tol * max|f|; 0 for a vanishing f.
double support_radius(const GridFunction& f, double tol = 1e-14);

}  // namespace dwlab
