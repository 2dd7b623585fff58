#pragma once

#include <cstddef>
#include <vector>

#include "dwlab/grid.hpp"

namespace dwlab {

/// Composite trapezoid integral of f over its grid.
double integrate(const GridFunction& f);

/// Running trapezoid antiderivative P(x_i) = integral of f from -half_width to x_i.
GridFunction prefix_integral(const GridFunction& f);

/// Second-order spatial derivative: centered in the interior, one-sided
/// three-point stencils at the two boundary nodes.
GridFunction derivative(const GridFunction& f);

/// Higher-order derivative at the nodes via the natural cubic spline; used
/// where the second-order stencil error would dominate a tolerance budget.
GridFunction spline_derivative(const GridFunction& f);

/// Piecewise-linear point evaluation; zero outside the grid.
double eval_linear(const GridFunction& f, double x);

/// Piecewise-linear evaluation clamped to the boundary values outside the
/// grid. For antiderivatives, which are constant past the support.
double eval_linear_clamped(const GridFunction& f, double x);

/// Samples of f(. - shift) on the same grid, by linear interpolation.
GridFunction translate(const GridFunction& f, double shift);

/// Natural cubic spline through uniform-grid samples (C^2, zero curvature at
/// the ends). Evaluates to 0 outside the grid, matching the compact-support
/// convention used throughout.
class CubicSpline {
  public:
    CubicSpline() = default;
    explicit CubicSpline(const GridFunction& f);

    double operator()(double x) const;
    /// Value at left-edge-index cell + fraction s in [0, dx], no bounds check.
    double eval_cell(std::size_t cell, double s) const {
        return ((d_[cell] * s + c_[cell]) * s + b_[cell]) * s + a_[cell];
    }
    /// Spline evaluated at every cell's left edge + offset s, s in [0, dx].
    /// Output k corresponds to x_k + s; length n-1.
    std::vector<double> eval_all_cells(double s) const;

    /// First derivative of the spline at grid node k.
    double node_derivative(std::size_t k) const {
        if (k < b_.size()) return b_[k];
        const std::size_t c = b_.size() - 1;
        return (3.0 * d_[c] * dx_ + 2.0 * c_[c]) * dx_ + b_[c];
    }

    std::size_t cells() const { return a_.size(); }
    double x0() const { return x0_; }
    double dx() const { return dx_; }

  private:
    double x0_ = 0.0, dx_ = 1.0;
    std::vector<double> a_, b_, c_, d_;
};

/// L^1, L^p, W^{1,1}, W^{1,p} and sup norms of a grid function.
/// W^{1,q} = ||f||_q + ||f'||_q with f' the second-order difference derivative.
struct NormReport {
    double l1 = 0.0;
    double lp = 0.0;
    double w11 = 0.0;
    double w1p = 0.0;
    double linf = 0.0;
    double p = 2.0;
};

/// Throws std::invalid_argument for p < 1.
NormReport norms(const GridFunction& f, double p);

double norm_l1(const GridFunction& f);
double norm_lp(const GridFunction& f, double p);
double norm_linf(const GridFunction& f);

/// One-dimensional product inequality ||  |f|^p ||_p <= ||f||_p ||f'||_1^{p-1}.
struct GNReport {
    double lhs = 0.0;
    double rhs = 0.0;
    bool holds = false;
};

GNReport gn_check(const GridFunction& f, double p);

/// sqrt(1 + s^2)
double bracket(double s);

}  // namespace dwlab
