#pragma once

#include "dwlab/grid.hpp"
#include "dwlab/kernels.hpp"
#include "dwlab/trajectory.hpp"

namespace dwlab {

/// Damped-wave propagator applied to data (0, f): the light-cone convolution
/// K_0(t, .) * f. S(0) f = 0. x_offset probes off-grid output points.
GridFunction apply_S(double t, const GridFunction& f, double x_offset = 0.0,
                     bool* truncated = nullptr);

enum class Dt { x, t, tx, tt };

/// First and mixed derivatives of S(t) f in closed form: exponentially damped
/// translation terms plus the matching light-cone kernel convolution.
///   x : e^{-t/2} (f(x+t) - f(x-t))/2                                 + K_1 * f
///   t : e^{-t/2} (f(x+t) + f(x-t))/2                                 + K_2 * f
///   tx: e^{-t/2} (f'(x+t) + f'(x-t))/2
///       + e^{-t/2} (t/16 - 1/4) (f(x+t) - f(x-t))                    + K_3 * f
///   tt: e^{-t/2} (f'(x+t) - f'(x-t))/2
///       + e^{-t/2} (t/16 - 1/2) (f(x+t) + f(x-t))                    + K_4 * f
/// f' is the cubic-spline node derivative; translations use linear
/// interpolation. At t = 0: x -> 0, t -> f, tx -> f', tt -> -f.
GridFunction apply_dS(Dt which, double t, const GridFunction& f,
                      bool* truncated = nullptr);

struct FreeSolution {
    GridFunction value;
    GridFunction dt_value;
};

/// Solution of the linear damped wave equation with data (u0, u1):
/// S(t)(u0 + u1) + d_t S(t) u0, together with its time derivative.
FreeSolution free_solution(const GridFunction& u0, const GridFunction& u1,
                           double t, bool* truncated = nullptr);

/// Sup-norm residual of the self-consistency identity
///   S(t) h = 1/8 int_0^t e^{(tau-t)/2} int_{x-t+tau}^{x+t-tau} S(tau) h  d(xi) d(tau)
///            + e^{-t/2}/2  int_{x-t}^{x+t} h,
/// with trapezoid time quadrature of step dtau (snapped to divide t).
double strans_residual(double t, const GridFunction& h, double dtau);

struct MassGrowthReport {
    double lhs = 0.0;  // integral of u + du/dt at the final stored time
    double rhs = 0.0;  // time integral of |u(tau)|_{L^p}^p
};

/// Mass production identity for data with u0 + u1 = 0:
///   int (u + d_t u)(T) dx = int_0^T |u(tau)|_{L^p}^p dtau.
/// Throws std::invalid_argument when the initial state violates u0 + u1 = 0.
MassGrowthReport mass_growth(const Trajectory& traj, double p);

}  // namespace dwlab
