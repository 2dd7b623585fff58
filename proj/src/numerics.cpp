#include "dwlab/numerics.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace dwlab {

double integrate(const GridFunction& f) {
    const std::size_t n = f.size();
    if (n < 2) throw std::invalid_argument("integrate: need at least 2 samples");
    double s = 0.5 * (f.values[0] + f.values[n - 1]);
    for (std::size_t i = 1; i + 1 < n; ++i) s += f.values[i];
    return s * f.grid.dx;
}

GridFunction prefix_integral(const GridFunction& f) {
    GridFunction out = zeros(f.grid);
    const double h2 = 0.5 * f.grid.dx;
    for (std::size_t i = 1; i < f.size(); ++i)
        out.values[i] = out.values[i - 1] + h2 * (f.values[i - 1] + f.values[i]);
    return out;
}

GridFunction derivative(const GridFunction& f) {
    const std::size_t n = f.size();
    if (n < 3) throw std::invalid_argument("derivative: need at least 3 samples");
    GridFunction out = zeros(f.grid);
    const double h = f.grid.dx;
    const auto& v = f.values;
    out.values[0] = (-3.0 * v[0] + 4.0 * v[1] - v[2]) / (2.0 * h);
    for (std::size_t i = 1; i + 1 < n; ++i)
        out.values[i] = (v[i + 1] - v[i - 1]) / (2.0 * h);
    out.values[n - 1] = (3.0 * v[n - 1] - 4.0 * v[n - 2] + v[n - 3]) / (2.0 * h);
    return out;
}

GridFunction spline_derivative(const GridFunction& f) {
    CubicSpline s(f);
    GridFunction out = zeros(f.grid);
    for (std::size_t i = 0; i < f.size(); ++i) out.values[i] = s.node_derivative(i);
    return out;
}

double eval_linear(const GridFunction& f, double x) {
    const Grid& g = f.grid;
    const double s = (x + g.half_width) / g.dx;
    if (s < 0.0 || s > static_cast<double>(g.n - 1)) return 0.0;
    std::size_t i = static_cast<std::size_t>(s);
    if (i >= g.n - 1) i = g.n - 2;
    const double w = s - static_cast<double>(i);
    return (1.0 - w) * f.values[i] + w * f.values[i + 1];
}

double eval_linear_clamped(const GridFunction& f, double x) {
    const Grid& g = f.grid;
    if (x <= -g.half_width) return f.values.front();
    if (x >= g.half_width) return f.values.back();
    return eval_linear(f, x);
}

GridFunction translate(const GridFunction& f, double shift) {
    GridFunction out = zeros(f.grid);
    for (std::size_t i = 0; i < out.size(); ++i)
        out.values[i] = eval_linear(f, out.x(i) - shift);
    return out;
}

CubicSpline::CubicSpline(const GridFunction& f) {
    const std::size_t n = f.size();
    if (n < 3) throw std::invalid_argument("CubicSpline: need at least 3 samples");
    x0_ = -f.grid.half_width;
    dx_ = f.grid.dx;
    const double h = dx_;
    const auto& y = f.values;

    // Natural spline second derivatives m_i: tridiagonal Thomas solve.
    std::vector<double> m(n, 0.0), diag(n, 0.0), rhs(n, 0.0);
    for (std::size_t i = 1; i + 1 < n; ++i) {
        diag[i] = 2.0 * h / 3.0;
        rhs[i] = (y[i + 1] - 2.0 * y[i] + y[i - 1]) / h;
    }
    const double off = h / 6.0;
    for (std::size_t i = 2; i + 1 < n; ++i) {
        const double w = off / diag[i - 1];
        diag[i] -= w * off;
        rhs[i] -= w * rhs[i - 1];
    }
    for (std::size_t i = n - 2; i >= 1; --i) {
        m[i] = (rhs[i] - off * m[i + 1]) / diag[i];
        if (i == 1) break;
    }

    a_.resize(n - 1);
    b_.resize(n - 1);
    c_.resize(n - 1);
    d_.resize(n - 1);
    for (std::size_t i = 0; i + 1 < n; ++i) {
        a_[i] = y[i];
        b_[i] = (y[i + 1] - y[i]) / h - h * (2.0 * m[i] + m[i + 1]) / 6.0;
        c_[i] = 0.5 * m[i];
        d_[i] = (m[i + 1] - m[i]) / (6.0 * h);
    }
}

double CubicSpline::operator()(double x) const {
    const double s = (x - x0_) / dx_;
    const double ncell = static_cast<double>(cells());
    if (s < 0.0 || s > ncell) return 0.0;
    std::size_t i = static_cast<std::size_t>(s);
    if (i >= cells()) i = cells() - 1;
    return eval_cell(i, x - (x0_ + static_cast<double>(i) * dx_));
}

std::vector<double> CubicSpline::eval_all_cells(double s) const {
    std::vector<double> out(cells());
    for (std::size_t i = 0; i < cells(); ++i) out[i] = eval_cell(i, s);
    return out;
}

NormReport norms(const GridFunction& f, double p) {
    if (!(p >= 1.0)) throw std::invalid_argument("norms: p must be >= 1");
    NormReport r;
    r.p = p;
    r.l1 = norm_l1(f);
    r.lp = norm_lp(f, p);
    r.linf = norm_linf(f);
    const GridFunction df = derivative(f);
    r.w11 = r.l1 + norm_l1(df);
    r.w1p = r.lp + norm_lp(df, p);
    return r;
}

double norm_l1(const GridFunction& f) {
    GridFunction a = f;
    for (double& v : a.values) v = std::abs(v);
    return integrate(a);
}

double norm_lp(const GridFunction& f, double p) {
    if (!(p >= 1.0)) throw std::invalid_argument("norm_lp: p must be >= 1");
    GridFunction a = f;
    for (double& v : a.values) v = std::pow(std::abs(v), p);
    const double s = integrate(a);
    return std::pow(s, 1.0 / p);
}

double norm_linf(const GridFunction& f) {
    double m = 0.0;
    for (double v : f.values) m = std::max(m, std::abs(v));
    return m;
}

GNReport gn_check(const GridFunction& f, double p) {
    if (!(p > 1.0)) throw std::invalid_argument("gn_check: p must be > 1");
    GNReport r;
    GridFunction a = f;
    for (double& v : a.values) v = std::pow(std::abs(v), p);
    r.lhs = norm_lp(a, p);
    const GridFunction df = derivative(f);
    r.rhs = norm_lp(f, p) * std::pow(norm_l1(df), p - 1.0);
    r.holds = r.lhs <= r.rhs + 1e-12 * std::max(1.0, r.rhs);
    return r;
}

double bracket(double s) { return std::sqrt(1.0 + s * s); }

}  // namespace dwlab
