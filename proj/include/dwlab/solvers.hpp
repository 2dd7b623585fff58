#pragma once

#include <cstddef>
#include <string>

#include "dwlab/grid.hpp"
#include "dwlab/trajectory.hpp"

namespace dwlab {

/// One nonlinear run: data, horizon, step, blowup threshold.
struct ProblemSpec {
    double p = 2.0;
    GridFunction u0;
    GridFunction u1;
    double t_end = 1.0;
    double dt = 0.01;
    double blowup_threshold = 1e6;
    /// Validation switch: drop the |u|^p source (the wave-form solver keeps
    /// its linear quarter-coupling term, so both switched solvers still
    /// march the same linear equation).
    bool nonlinear = true;
    /// States and full norm reports are stored every store_stride steps
    /// (plus step 0 and the final step). Sup-norm records are kept per step.
    std::size_t store_stride = 1;
};

/// Duhamel fixed-point marcher. Each step evaluates the free part plus the
/// history sum of kernel convolutions of |u|^p with product-trapezoid
/// weights; the time-derivative quadrature re-evaluates its newest node with
/// the freshly predicted value.
Trajectory solve_mild(const ProblemSpec& spec);

/// Backward-light-cone marcher on the exponentially weighted wave form:
/// data transport plus the running cone integral of (1/4)u + |u|^p,
/// accumulated through prefix integrals. No Bessel evaluations.
Trajectory solve_dalembert(const ProblemSpec& spec);

/// Explicit three-level centered scheme with symmetric damping term, on its
/// own grid of spacing ~dx (data resampled by cubic spline when needed).
/// Requires dt <= dx. periodic selects wrap-around instead of zero boundaries
/// (used by the spatially constant ODE-reduction validation).
Trajectory solve_fdtd(const ProblemSpec& spec, double dx, bool periodic = false);

struct LifespanEstimate {
    double t0 = 0.0;
    bool refined = false;
    /// True when the sup norm never crossed the threshold: t0 is then the
    /// final trajectory time, a lower bound only.
    bool censored = false;
};

/// First per-step time with sup norm >= threshold (raw crossing, no
/// refinement). Censored at the final time when there is no crossing.
LifespanEstimate detect_blowup(const Trajectory& traj, double threshold);

/// Non-positivity and two-sided envelope verdicts for a trajectory whose
/// data satisfies u0 <= 0 and u1 + u0/2 <= 0 pointwise.
struct AprioriReport {
    bool hypotheses_hold = false;
    bool nonpositive = false;
    bool envelope_ok = false;
    double max_positive_u = 0.0;      // sup over stored states of max(u, 0)
    double max_lower_violation = 0.0; // sup of (lower bound - u)
    double max_upper_violation = 0.0; // sup of (u - upper bound)
    double eps1 = 0.0;                // combined data norm
    double fitted_A = 0.0;            // max over stored t of tail norm / eps1
    double worst_time = 0.0;          // where the largest envelope defect sits
    double worst_x = 0.0;
    std::string message;
};

/// Checks, at every stored state: (a) u <= sign_tol everywhere, (b) the
/// two-sided bound  free-solution value <= u <= transported-data bound
/// within envelope_tol, (c) reports fitted_A = max tail-norm(t)/eps1 with
/// the tail norm measured from time zero and eps1 the combined data norm
/// max(W11,W1p)(u0) + max(L1,Lp)(u1). Data violating the sign hypotheses
/// short-circuits with hypotheses_hold = false.
AprioriReport sign_and_apriori_check(const Trajectory& traj, double envelope_tol,
                                     double sign_tol = 1e-12);

}  // namespace dwlab
