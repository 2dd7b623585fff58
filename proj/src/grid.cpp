#include "dwlab/grid.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace dwlab {

Grid make_grid(double half_width, std::size_t n) {
    if (!(half_width > 0.0) || !std::isfinite(half_width))
        throw std::invalid_argument("make_grid: half_width must be positive and finite");
    if (n < 2) throw std::invalid_argument("make_grid: need at least 2 points");
    Grid g;
    g.half_width = half_width;
    g.n = n;
    g.dx = 2.0 * half_width / static_cast<double>(n - 1);
    return g;
}

GridFunction zeros(const Grid& g) {
    GridFunction out;
    out.grid = g;
    out.values.assign(g.n, 0.0);
    return out;
}

void require_same_grid(const GridFunction& a, const GridFunction& b) {
    if (!(a.grid == b.grid))
        throw std::invalid_argument("grid mismatch between operands");
}

GridFunction add(const GridFunction& a, const GridFunction& b) {
    require_same_grid(a, b);
    GridFunction out = a;
    for (std::size_t i = 0; i < out.size(); ++i) out.values[i] += b.values[i];
    return out;
}

GridFunction sub(const GridFunction& a, const GridFunction& b) {
    require_same_grid(a, b);
    GridFunction out = a;
    for (std::size_t i = 0; i < out.size(); ++i) out.values[i] -= b.values[i];
    return out;
}

GridFunction scale(const GridFunction& a, double c) {
    GridFunction out = a;
    for (double& v : out.values) v *= c;
    return out;
}

void axpy(GridFunction& a, double c, const GridFunction& b) {
    require_same_grid(a, b);
    for (std::size_t i = 0; i < a.size(); ++i) a.values[i] += c * b.values[i];
}

std::pair<std::size_t, std::size_t> support_range(const GridFunction& f, double tol) {
    double peak = 0.0;
    for (double v : f.values) peak = std::max(peak, std::abs(v));
    if (peak <= 0.0) return {1, 0};
    const double cut = tol * peak;
    std::size_t lo = 0, hi = f.size() - 1;
    while (lo < f.size() && std::abs(f.values[lo]) <= cut) ++lo;
    while (hi > lo && std::abs(f.values[hi]) <= cut) --hi;
    if (lo >= f.size()) return {1, 0};
    return {lo, hi};
}

double support_radius(const GridFunction& f, double tol) {
    auto [lo, hi] = support_range(f, tol);
    if (lo > hi) return 0.0;
    return std::max(std::abs(f.x(lo)), std::abs(f.x(hi)));
}

}  // namespace dwlab
