#include "dwlab/kernels.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "dwlab/special.hpp"

namespace dwlab {

namespace {

// Gauss-Legendre fractions on a unit cell.
const double kXiA = 0.5 * (1.0 - 1.0 / std::sqrt(3.0));
const double kXiB = 0.5 * (1.0 + 1.0 / std::sqrt(3.0));

void check_kernel_args(int j, double t) {
    if (j < 0 || j > 4) throw std::invalid_argument("kernel: index must be 0..4");
    if (!(t > 0.0) || !std::isfinite(t))
        throw std::invalid_argument("kernel: time must be positive and finite");
}

double kernel_inside(int j, double t, double y, double w) {
    const double E = std::exp(0.5 * (w - t));  // exponent <= 0 on the cone
    switch (j) {
        case 0:
            return 0.5 * E * bessel_i_scaled(0, 0.5 * w);
        case 1:
            return -0.25 * E * y * i1_over_z_scaled(w);
        case 2:
            return 0.25 * E * (t * i1_over_z_scaled(w) - bessel_i_scaled(0, 0.5 * w));
        case 3:
            return -0.125 * E * y * (t * i2_over_z2_scaled(w) - i1_over_z_scaled(w));
        default:
            return E * (0.125 * t * t * i2_over_z2_scaled(w) +
                        0.25 * (1.0 - t) * i1_over_z_scaled(w) +
                        0.125 * bessel_i_scaled(0, 0.5 * w));
    }
}

}  // namespace

double kernel(int j, double t, double y) {
    check_kernel_args(j, t);
    const double ay = std::abs(y);
    if (ay > t) return 0.0;
    const double w2 = std::max((t - ay) * (t + ay), 0.0);
    return kernel_inside(j, t, y, std::sqrt(w2));
}

double envelope_ratio(int j, double t, double y) {
    const double k = kernel(j, t, y);
    if (k == 0.0) return 0.0;
    const double weight = std::pow(bracket(t), 0.5 * (j + 1));
    return std::abs(k) * weight * std::exp(y * y / (8.0 * t));
}

double envelope_ratio_max(int j, double t, std::size_t y_resolution) {
    if (y_resolution < 2) throw std::invalid_argument("envelope_ratio_max: need >= 2 samples");
    double m = 0.0;
    const double step = 2.0 * t / static_cast<double>(y_resolution - 1);
    for (std::size_t i = 0; i < y_resolution; ++i) {
        const double y = -t + step * static_cast<double>(i);
        m = std::max(m, envelope_ratio(j, t, std::min(std::max(y, -t), t)));
    }
    return m;
}

EnvelopeFit verify_envelope(int j, const std::vector<double>& t_samples,
                            std::size_t y_resolution, double candidate_C) {
    if (t_samples.empty())
        throw std::invalid_argument("verify_envelope: need at least one time sample");
    EnvelopeFit fit;
    fit.j = j;
    for (double t : t_samples)
        fit.fitted_C = std::max(fit.fitted_C, envelope_ratio_max(j, t, y_resolution));
    fit.max_violation = candidate_C > 0.0 ? fit.fitted_C - candidate_C : 0.0;
    return fit;
}

ConvPlan make_conv_plan(int j, double t, double dx) {
    check_kernel_args(j, t);
    if (!(dx > 0.0)) throw std::invalid_argument("make_conv_plan: dx must be positive");
    ConvPlan plan;
    plan.j = j;
    plan.t = t;
    plan.dx = dx;

    // Full lattice cells inside (-t, t): e in [-m, m), with roundoff snapping
    // so t an exact multiple of dx produces no sliver cells.
    const double r = t / dx;
    long m = static_cast<long>(std::floor(r + 1e-9));
    double s = t - static_cast<double>(m) * dx;  // leftover at each cone end
    if (s < 1e-9 * dx) s = 0.0;

    plan.e_lo = -m;
    const std::size_t ncell = static_cast<std::size_t>(2 * m);
    plan.ka.resize(ncell);
    plan.kb.resize(ncell);
    const double w2 = 0.5 * dx;
    for (std::size_t c = 0; c < ncell; ++c) {
        const double e = static_cast<double>(plan.e_lo + static_cast<long>(c));
        plan.ka[c] = w2 * kernel(j, t, (e + kXiA) * dx);
        plan.kb[c] = w2 * kernel(j, t, (e + kXiB) * dx);
    }
    if (s > 0.0) {
        const double base = static_cast<double>(m) * dx;
        const double ws = 0.5 * s;
        for (double xi : {kXiA, kXiB}) {
            const double yr = base + xi * s;
            plan.partial.push_back({yr, ws * kernel(j, t, yr)});
            plan.partial.push_back({-yr, ws * kernel(j, t, -yr)});
        }
    }
    return plan;
}

void apply_conv_plan(const ConvPlan& plan, const CubicSpline& fhat,
                     GridFunction& out, std::size_t i_lo, std::size_t i_hi,
                     double x_offset, double weight) {
    const long ncell = static_cast<long>(plan.ka.size());
    const long cells = static_cast<long>(fhat.cells());
    const double h = plan.dx;

    if (x_offset == 0.0 && std::abs(fhat.dx() - h) < 1e-12 * h) {
        // On-lattice fast path: x_i - (e + xi) h lands in cell i - e - 1 at
        // fraction (1 - xi).
        const double sa = kXiB * h;  // mirrored fractions
        const double sb = kXiA * h;
        std::vector<double> Fa(fhat.cells()), Fb(fhat.cells());
        long s_lo = cells, s_hi = -1;  // cells where the spline is nonzero
        for (long c = 0; c < cells; ++c) {
            Fa[c] = fhat.eval_cell(c, sa);
            Fb[c] = fhat.eval_cell(c, sb);
            if (Fa[c] != 0.0 || Fb[c] != 0.0) {
                if (c < s_lo) s_lo = c;
                s_hi = c;
            }
        }
        for (std::size_t i = i_lo; i <= i_hi && i < out.size(); ++i) {
            const long li = static_cast<long>(i);
            // cell index c = i - e - 1 with e in [e_lo, e_lo + ncell)
            const long c_hi = std::min(s_hi, li - 1 - plan.e_lo);
            const long c_lo = std::max(s_lo, li - plan.e_lo - ncell);
            double acc = 0.0;
            for (long c = c_lo; c <= c_hi; ++c) {
                const std::size_t k = static_cast<std::size_t>(li - c - 1 - plan.e_lo);
                acc += plan.ka[k] * Fa[c] + plan.kb[k] * Fb[c];
            }
            for (const auto& nd : plan.partial) acc += nd.wk * fhat(out.x(i) - nd.y);
            out.values[i] += weight * acc;
        }
        return;
    }

    for (std::size_t i = i_lo; i <= i_hi && i < out.size(); ++i) {
        const double xi = out.x(i) + x_offset;
        double acc = 0.0;
        for (long c = 0; c < ncell; ++c) {
            const double e = static_cast<double>(plan.e_lo + c);
            acc += plan.ka[c] * fhat(xi - (e + kXiA) * h);
            acc += plan.kb[c] * fhat(xi - (e + kXiB) * h);
        }
        for (const auto& nd : plan.partial) acc += nd.wk * fhat(xi - nd.y);
        out.values[i] += weight * acc;
    }
}

GridFunction kernel_convolve(int j, double t, const GridFunction& f,
                             double x_offset, bool* truncated) {
    check_kernel_args(j, t);
    if (f.size() < 3) throw std::invalid_argument("kernel_convolve: need at least 3 samples");
    GridFunction out = zeros(f.grid);

    auto [lo, hi] = support_range(f);
    if (truncated) *truncated = (lo <= hi) && (lo == 0 || hi == f.size() - 1);
    if (lo > hi) return out;

    const ConvPlan plan = make_conv_plan(j, t, f.grid.dx);
    const CubicSpline fhat(f);

    // Output support: f's support widened by the cone radius.
    const double pad = t + std::abs(x_offset);
    const long shift = static_cast<long>(std::ceil(pad / f.grid.dx)) + 2;
    const long n = static_cast<long>(f.size());
    const long i_lo = std::max(0L, static_cast<long>(lo) - shift);
    const long i_hi = std::min(n - 1, static_cast<long>(hi) + shift);
    apply_conv_plan(plan, fhat, out, static_cast<std::size_t>(i_lo),
                    static_cast<std::size_t>(i_hi), x_offset);
    return out;
}

}  // namespace dwlab
