#include "dwlab/semigroup.hpp"

#include <cmath>
#include <stdexcept>

#include "dwlab/numerics.hpp"

namespace dwlab {

namespace {

void check_time(double t) {
    if (t < 0.0 || !std::isfinite(t))
        throw std::invalid_argument("semigroup: time must be finite and >= 0");
}

}  // namespace

GridFunction apply_S(double t, const GridFunction& f, double x_offset, bool* truncated) {
    check_time(t);
    if (truncated) *truncated = false;
    if (t == 0.0) return zeros(f.grid);
    return kernel_convolve(0, t, f, x_offset, truncated);
}

GridFunction apply_dS(Dt which, double t, const GridFunction& f, bool* truncated) {
    check_time(t);
    if (truncated) *truncated = false;

    if (t == 0.0) {
        switch (which) {
            case Dt::x: return zeros(f.grid);
            case Dt::t: return f;
            case Dt::tx: return spline_derivative(f);
            case Dt::tt: return scale(f, -1.0);
        }
    }

    const double damp = std::exp(-0.5 * t);
    const GridFunction fp = translate(f, -t);  // f(x + t)
    const GridFunction fm = translate(f, +t);  // f(x - t)
    GridFunction out = zeros(f.grid);

    switch (which) {
        case Dt::x: {
            for (std::size_t i = 0; i < out.size(); ++i)
                out.values[i] = 0.5 * damp * (fp.values[i] - fm.values[i]);
            if (t > 0.0) axpy(out, 1.0, kernel_convolve(1, t, f, 0.0, truncated));
            return out;
        }
        case Dt::t: {
            for (std::size_t i = 0; i < out.size(); ++i)
                out.values[i] = 0.5 * damp * (fp.values[i] + fm.values[i]);
            if (t > 0.0) axpy(out, 1.0, kernel_convolve(2, t, f, 0.0, truncated));
            return out;
        }
        case Dt::tx: {
            const GridFunction df = spline_derivative(f);
            const GridFunction dfp = translate(df, -t);
            const GridFunction dfm = translate(df, +t);
            const double c = damp * (t / 16.0 - 0.25);
            for (std::size_t i = 0; i < out.size(); ++i)
                out.values[i] = 0.5 * damp * (dfp.values[i] + dfm.values[i]) +
                                c * (fp.values[i] - fm.values[i]);
            if (t > 0.0) axpy(out, 1.0, kernel_convolve(3, t, f, 0.0, truncated));
            return out;
        }
        case Dt::tt: {
            const GridFunction df = spline_derivative(f);
            const GridFunction dfp = translate(df, -t);
            const GridFunction dfm = translate(df, +t);
            const double c = damp * (t / 16.0 - 0.5);
            for (std::size_t i = 0; i < out.size(); ++i)
                out.values[i] = 0.5 * damp * (dfp.values[i] - dfm.values[i]) +
                                c * (fp.values[i] + fm.values[i]);
            if (t > 0.0) axpy(out, 1.0, kernel_convolve(4, t, f, 0.0, truncated));
            return out;
        }
    }
    throw std::invalid_argument("apply_dS: unknown derivative selector");
}

FreeSolution free_solution(const GridFunction& u0, const GridFunction& u1,
                           double t, bool* truncated) {
    require_same_grid(u0, u1);
    check_time(t);
    if (truncated) *truncated = false;
    FreeSolution out;
    if (t == 0.0) {
        out.value = u0;
        out.dt_value = u1;
        return out;
    }
    const GridFunction sum01 = add(u0, u1);
    const bool sum_zero = norm_linf(sum01) == 0.0;
    bool trunc = false, t1 = false, t2 = false;

    out.value = apply_dS(Dt::t, t, u0, &t1);
    if (!sum_zero) axpy(out.value, 1.0, apply_S(t, sum01, 0.0, &t2));
    trunc = t1 || t2;

    out.dt_value = apply_dS(Dt::tt, t, u0, &t1);
    if (!sum_zero) axpy(out.dt_value, 1.0, apply_dS(Dt::t, t, sum01, &t2));
    trunc = trunc || t1 || t2;
    if (truncated) *truncated = trunc;
    return out;
}

double strans_residual(double t, const GridFunction& h, double dtau) {
    if (!(t > 0.0)) throw std::invalid_argument("strans_residual: need t > 0");
    if (!(dtau > 0.0) || dtau > t)
        throw std::invalid_argument("strans_residual: need 0 < dtau <= t");

    const std::size_t nstep = static_cast<std::size_t>(std::llround(t / dtau));
    const double dt = t / static_cast<double>(std::max<std::size_t>(nstep, 1));

    const GridFunction lhs = apply_S(t, h);

    GridFunction rhs = zeros(h.grid);
    const GridFunction ph = prefix_integral(h);
    const double damp = std::exp(-0.5 * t);
    for (std::size_t i = 0; i < rhs.size(); ++i) {
        const double x = rhs.x(i);
        rhs.values[i] = 0.5 * damp * (eval_linear_clamped(ph, x + t) -
                                      eval_linear_clamped(ph, x - t));
    }
    // tau = 0 contributes S(0) h = 0 and tau = t an empty window; interior
    // nodes carry full trapezoid weight dt.
    for (std::size_t k = 1; k < nstep; ++k) {
        const double tau = dt * static_cast<double>(k);
        const GridFunction p_slice = prefix_integral(apply_S(tau, h));
        const double w = 0.125 * dt * std::exp(0.5 * (tau - t));
        const double r = t - tau;
        for (std::size_t i = 0; i < rhs.size(); ++i) {
            const double x = rhs.x(i);
            rhs.values[i] += w * (eval_linear_clamped(p_slice, x + r) -
                                  eval_linear_clamped(p_slice, x - r));
        }
    }
    return norm_linf(sub(lhs, rhs));
}

MassGrowthReport mass_growth(const Trajectory& traj, double p) {
    if (traj.states.empty() || traj.sup_history.empty())
        throw std::invalid_argument("mass_growth: empty trajectory");
    const SolverState& first = traj.states.front();
    const double scale = std::max(norm_linf(first.u), norm_linf(first.ut));
    if (norm_linf(add(first.u, first.ut)) > 1e-10 * std::max(scale, 1.0))
        throw std::invalid_argument("mass_growth: requires data with u0 + u1 = 0");

    MassGrowthReport rep;
    const SolverState& last = traj.states.back();
    rep.lhs = integrate(add(last.u, last.ut));

    const double t_end = last.time;
    double acc = 0.0;
    const auto& hist = traj.sup_history;
    for (std::size_t k = 0; k + 1 < hist.size(); ++k) {
        if (hist[k + 1].time > t_end + 1e-12) break;
        const double w = 0.5 * (hist[k + 1].time - hist[k].time);
        acc += w * (std::pow(hist[k].lp, p) + std::pow(hist[k + 1].lp, p));
    }
    rep.rhs = acc;
    return rep;
}

}  // namespace dwlab
