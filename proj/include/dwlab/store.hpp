#pragma once

#include <string>
#include <vector>

#include "dwlab/lifespan.hpp"
#include "dwlab/trajectory.hpp"

namespace dwlab {

/// 17-significant-digit decimal form; parses back to the identical double.
std::string format_g17(double v);

/// Shortest exact decimal form, used in file names.
std::string format_short(double v);

/// Directory of run artifacts. Each write goes through a temp file and a
/// rename, so a reader never sees a half-written table and a re-run with the
/// same content replaces files byte-for-byte.
class ResultStore {
  public:
    explicit ResultStore(std::string dir);
    const std::string& dir() const { return dir_; }

    /// Atomically (re)writes name inside the store. Returns the full path.
    std::string write_text(const std::string& name,
                           const std::string& content) const;

  private:
    std::string dir_;
};

/// Comma-separated table with header eps,t0,censored,class,p.
std::string lifespan_table(const std::vector<LifespanRecord>& records);

/// Reads a table written by lifespan_table. Only the five columns are
/// restored; solver metadata fields stay at their defaults.
std::vector<LifespanRecord> read_lifespan_table(const std::string& path);

/// Writes lifespan tables split one file per (class, p) pair:
/// lifespan_<class>_p<p>.csv. Empty input is rejected.
std::vector<std::string> emit_plot_data(const ResultStore& store,
                                        const std::vector<LifespanRecord>& records);

/// Writes error_curve_<class>_p<p>_eps<eps>.csv per curve with columns
/// t,error (class is always B for these curves).
std::vector<std::string> emit_plot_data(const ResultStore& store,
                                        const std::vector<ApproximationCurve>& curves);

/// Writes snapshot_<class>_p<p>_t<time>.csv per state with columns x,u,ut.
std::vector<std::string> emit_plot_data(const ResultStore& store,
                                        const std::vector<SolverState>& states,
                                        DataClass data_class, double p);

}  // namespace dwlab
