#pragma once

#include <cstddef>
#include <vector>

#include "dwlab/grid.hpp"
#include "dwlab/solvers.hpp"

namespace dwlab {

/// Initial-data families: class A pairs (eps f, eps f) have positive integral
/// sum; class B pairs (eps f, -eps f) cancel it identically.
enum class DataClass { A, B };

struct LifespanRecord {
    double eps = 0.0;
    double p = 2.0;
    DataClass data_class = DataClass::A;
    double t0 = 0.0;
    bool censored = true;
    bool refined = false;
    // solver metadata for reproducibility
    double dx = 0.0;
    double dt = 0.0;
    double half_width = 0.0;
    double threshold = 0.0;
    double t_end = 0.0;
};

struct ExponentPrediction {
    double classA = 0.0;
    double classB = 0.0;
    double R = 0.0;
};

struct FitReport {
    double slope = 0.0;
    double intercept = 0.0;
    double r_squared = 0.0;
    double eps_min = 0.0;  // window actually used by the regression
    double eps_max = 0.0;
    double p = 0.0;
    std::size_t used = 0;      // points entering the regression
    std::size_t censored = 0;  // excluded censored records
    bool loglog = false;       // critical scale: log log T0 against log eps
};

enum class SolverKind { mild, dalembert, fdtd };

/// Shared knobs for sweeps and error curves.
struct SweepConfig {
    SolverKind solver = SolverKind::fdtd;
    double dx = 0.05;
    double dt = 0.05;  // clamped to dx for the grid marcher
    double threshold = 1e6;
    double safety = 3.0;    // t_end = safety * model prediction
    double t_cap = 2500.0;  // ceiling on any single horizon; longer runs censor
    bool refine = true;     // one grid-and-step halving rerun near the crossing
    bool nonlinear = true;  // validation switch passed through to the solver
};

/// Model lifespan: eps^{-2(p-1)/(3-p)} below the critical exponent, and
/// exp(eps^{-2}) at p = 3 (overflowing to inf for very small eps: critical
/// work uses the logarithmic companion).
double lifespan_model(double p, double eps);

/// log of lifespan_model, finite for every admissible input.
double log_lifespan_model(double p, double eps);

/// Theoretical sweep exponents: classA = 2(p-1)/(3-p), classB = p * classA,
/// R = classB - classA. At p = 3 the same roles on the log-lifespan scale:
/// classA = 2, classB = 2p, R = 2(p-1).
ExponentPrediction predicted_exponents(double p);

/// The default bump profile exp(-1/(1-x^2)) on |x| < 1, sampled on g.
GridFunction default_profile(const Grid& g);

/// Builds (u0, u1) for the class at amplitude eps, resampling the profile
/// onto g (zero outside the profile's own domain).
void make_data(DataClass data_class, double eps, const GridFunction& profile,
               const Grid& g, GridFunction& u0, GridFunction& u1);

/// Domain sizing for a horizon: half-width covering the light cone of the
/// data support plus the kernel tail margin 6 sqrt(2 t_end).
double domain_half_width(double support_radius, double t_end);

/// Runs the configured solver and reads off the threshold crossing; when
/// refine is set and a crossing occurred, reruns once with grid spacing and
/// time step halved on a horizon trimmed to just past the coarse crossing.
/// dx is used by the grid marcher only.
LifespanEstimate estimate_lifespan(const ProblemSpec& spec, SolverKind solver,
                                   double dx, bool refine);

/// One record per eps: data built per class, horizon auto-sized as
/// safety * model (capped), domain per the sizing rule. Per-run failures or
/// missing crossings yield censored records; the sweep never aborts.
std::vector<LifespanRecord> sweep(double p, DataClass data_class,
                                  const std::vector<double>& eps_list,
                                  const GridFunction& profile,
                                  const SweepConfig& cfg);

/// Ordinary least squares of log T0 against log eps over the non-censored
/// records (log log T0 at p = 3). Requires >= 3 non-censored records spanning
/// a factor >= 4 in eps; with >= 5 usable points the largest eps is dropped
/// as pre-asymptotic. All records must share p and class.
FitReport fit_power_law(const std::vector<LifespanRecord>& records);

/// Measured lifespan-extension exponent |fitB.slope| - |fitA.slope|.
/// Fits from different p are rejected.
double extension_exponent(const FitReport& fitA, const FitReport& fitB);

struct ErrorPoint {
    double t = 0.0;
    double error = 0.0;  // L1 + Lp norm of u(t) - free flow of the data
};

struct ApproximationCurve {
    std::vector<ErrorPoint> points;
    double t1 = 0.0;            // horizon eps^{1-p}
    double eps = 0.0;
    double p = 2.0;
    double end_combined = 0.0;  // W11^W1p of u plus L1^Lp of du/dt at the end
    bool truncated_by_blowup = false;
};

/// Distance of the class-B solution from the transported free flow up to
/// T1 = eps^{1-p}, and the end-time combined norm whose eps^p scaling the
/// two-phase argument predicts. Blowup before T1 truncates the curve.
ApproximationCurve approximation_error_curve(double p, double eps,
                                             const GridFunction& profile,
                                             const SweepConfig& cfg);

}  // namespace dwlab
