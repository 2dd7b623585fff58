#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "dwlab/lifespan.hpp"
#include "dwlab/store.hpp"

namespace dwlab {

/// Resolved invocation. Zero-valued grid/horizon knobs mean "auto": dx and dt
/// fall back to per-command defaults, L to the light-cone domain rule, t_end
/// to 3 x the model lifespan (sweeps cap long horizons instead of growing
/// without bound).
struct RunConfig {
    std::string command;  // verify | solve | sweep | fit | global-check | help
    double p = 2.0;
    std::vector<double> eps_list;
    DataClass data_class = DataClass::B;
    double L = 0.0;
    std::size_t n_points = 0;
    double dx = 0.0;
    double dt = 0.0;
    double t_end = 0.0;
    double threshold = 1e6;
    SolverKind solver = SolverKind::fdtd;
    bool solver_given = false;
    std::string output_dir;
    std::uint64_t seed = 12345;
    double amp = 1.0;
    bool refine = true;
    std::string input;
    double envelope_tol = 1e-3;
    std::vector<double> snapshot_times;
    std::string config_file;
    std::string help_text;
};

/// Parses flags plus an optional plain key = value file (--config); flags
/// override file values. The output directory defaults to $DWLAB_OUT, then
/// "dwlab-out". Throws std::invalid_argument naming the offending key.
RunConfig parse_config(const std::vector<std::string>& args);
RunConfig parse_config(int argc, const char* const* argv);

/// One row of the verification table.
struct ResidualRow {
    std::string name;
    double value = 0.0;
    double tolerance = 0.0;
    bool pass = false;
};

/// The full residual suite: propagator mass identity, the self-consistency
/// time-splitting residual, finite-difference checks of the derivative
/// decompositions, and kernel envelope constants. h is the grid spacing of
/// the decomposition checks, fd_delta the time-difference step, dtau the
/// splitting quadrature step.
std::vector<ResidualRow> verify_residuals(double h, double fd_delta, double dtau);

/// Dispatches a parsed config: runs the command, writes artifacts and a
/// metadata document to the output directory, prints a summary.
/// Returns 0 on success, 1 on invalid configuration, 2 on a failed
/// numerical check.
int run(const RunConfig& cfg);

}  // namespace dwlab
