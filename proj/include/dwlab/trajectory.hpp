#pragma once

#include <vector>

#include "dwlab/grid.hpp"
#include "dwlab/numerics.hpp"

namespace dwlab {

/// Solution snapshot: u and du/dt at one time.
struct SolverState {
    double time = 0.0;
    GridFunction u;
    GridFunction ut;
};

/// Full norm set for u and du/dt at one stored time.
struct StepNorms {
    double time = 0.0;
    NormReport u;
    NormReport ut;
};

/// Cheap per-step record used for blowup detection and mass bookkeeping.
struct SupEntry {
    double time = 0.0;
    double linf = 0.0;
    double l1 = 0.0;
    double lp = 0.0;
};

enum class RunStatus {
    completed,
    blowup,           // sup norm crossed the configured threshold (or went non-finite)
    truncated_domain  // the light cone or data support reached the grid boundary
};

/// Time-marched solution record. states and norm_history are stored at a
/// stride of the solver step; sup_history has one entry per step.
struct Trajectory {
    double dt = 0.0;
    double p = 2.0;
    std::vector<SolverState> states;
    std::vector<StepNorms> norm_history;
    std::vector<SupEntry> sup_history;
    RunStatus status = RunStatus::completed;
    double blowup_time = 0.0;  // first crossing time when status == blowup

    double final_time() const { return states.empty() ? 0.0 : states.back().time; }
};

/// sup over stored times tau <= t of
///   sum_{0<=k+l<=1} sum_{q in {1,p}} <tau>^{1+l+k/2+1/(2q')} |d_t^l d_x^k u|_{L^q},
/// 1/q' = 1 - 1/q. Derivative norms are recovered from the stored W^{1,q}
/// and L^q entries.
double x_norm(const Trajectory& traj, double t, double p);

/// Same sum with weights <tau - t1>^{l+k/2+1/(2q')} over stored times in [t1, t].
double y_norm(const Trajectory& traj, double t, double t1, double p);

}  // namespace dwlab
