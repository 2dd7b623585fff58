#include "dwlab/cli.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <iostream>
#include <limits>
#include <set>
#include <sstream>
#include <stdexcept>

#include "dwlab/kernels.hpp"
#include "dwlab/numerics.hpp"
#include "dwlab/semigroup.hpp"
#include "dwlab/solvers.hpp"

namespace fs = std::filesystem;

namespace dwlab {

namespace {

constexpr const char* kVersion = "dwlab 1.0.0";

// grid with spacing exactly dx covering at least [-L, L]
Grid sized_grid(double L, double dx) {
    const auto cells = static_cast<std::size_t>(std::ceil(2.0 * L / dx - 1e-9));
    return make_grid(0.5 * dx * static_cast<double>(cells), cells + 1);
}

GridFunction bump_profile(double amp) {
    const GridFunction f = default_profile(make_grid(1.0, 401));
    return amp == 1.0 ? f : scale(f, amp);
}

double resolve(double v, double dflt) { return v > 0.0 ? v : dflt; }

const char* solver_name(SolverKind s) {
    switch (s) {
        case SolverKind::mild: return "mild";
        case SolverKind::dalembert: return "dalembert";
        default: return "fdtd";
    }
}

const char* status_name(RunStatus s) {
    switch (s) {
        case RunStatus::blowup: return "blowup";
        case RunStatus::truncated_domain: return "truncated_domain";
        default: return "completed";
    }
}

Trajectory dispatch_solver(const ProblemSpec& ps, SolverKind solver, double dx) {
    switch (solver) {
        case SolverKind::mild: return solve_mild(ps);
        case SolverKind::dalembert: return solve_dalembert(ps);
        default: return solve_fdtd(ps, dx);
    }
}

double rel_linf(const GridFunction& a, const GridFunction& b) {
    const double scale = norm_linf(b);
    return norm_linf(sub(a, b)) / (scale > 0.0 ? scale : 1.0);
}

std::string join_g17(const std::vector<double>& v) {
    std::string out;
    for (std::size_t i = 0; i < v.size(); ++i) {
        if (i) out += ',';
        out += format_g17(v[i]);
    }
    return out;
}

std::string metadata_text(const RunConfig& c) {
    std::ostringstream out;
    out << "command = " << c.command << '\n'
        << "version = " << kVersion << '\n'
        << "p = " << format_g17(c.p) << '\n'
        << "eps = " << join_g17(c.eps_list) << '\n'
        << "class = " << (c.data_class == DataClass::A ? "A" : "B") << '\n'
        << "L = " << (c.L > 0.0 ? format_g17(c.L) : "auto") << '\n'
        << "n = " << (c.n_points > 0 ? std::to_string(c.n_points) : "auto") << '\n'
        << "dx = " << format_g17(c.dx) << '\n'
        << "dt = " << format_g17(c.dt) << '\n'
        << "t-end = " << (c.t_end > 0.0 ? format_g17(c.t_end) : "auto") << '\n'
        << "M = " << format_g17(c.threshold) << '\n'
        << "solver = " << solver_name(c.solver) << '\n'
        << "out = " << c.output_dir << '\n'
        << "seed = " << c.seed << '\n'
        << "amp = " << format_g17(c.amp) << '\n'
        << "refine = " << (c.refine ? "true" : "false") << '\n'
        << "input = " << c.input << '\n'
        << "envelope-tol = " << format_g17(c.envelope_tol) << '\n'
        << "snapshot = " << join_g17(c.snapshot_times) << '\n'
        << "config = " << c.config_file << '\n';
    return out.str();
}

void write_metadata(const ResultStore& store, const RunConfig& resolved) {
    store.write_text(resolved.command + "_metadata.txt", metadata_text(resolved));
}

double solve_horizon(const RunConfig& cfg, double eps) {
    if (cfg.t_end > 0.0) return cfg.t_end;
    const double eps_eff =
        (cfg.data_class == DataClass::A) ? eps : std::pow(eps, cfg.p);
    const double log_t = log_lifespan_model(cfg.p, eps_eff);
    if (!(log_t <= std::log(1e5 / 3.0)))
        throw std::invalid_argument(
            "t-end: auto-sized horizon exceeds 1e5; pass --t-end");
    return 3.0 * std::exp(log_t);
}

int cmd_verify(const RunConfig& cfg, const ResultStore& store) {
    RunConfig resolved = cfg;
    resolved.dx = resolve(cfg.dx, 0.005);
    resolved.dt = resolve(cfg.dt, 0.01);
    const auto rows = verify_residuals(resolved.dx, 1e-3, resolved.dt);

    std::ostringstream table;
    table << "name,value,tolerance,pass\n";
    bool all = true;
    std::printf("%-18s %-14s %-10s %s\n", "check", "residual", "tolerance",
                "status");
    for (const auto& r : rows) {
        table << r.name << ',' << format_g17(r.value) << ','
              << format_g17(r.tolerance) << ',' << (r.pass ? "true" : "false")
              << '\n';
        std::printf("%-18s %-14.3e %-10.1e %s\n", r.name.c_str(), r.value,
                    r.tolerance, r.pass ? "ok" : "FAIL");
        all = all && r.pass;
    }
    store.write_text("verify_residuals.csv", table.str());
    write_metadata(store, resolved);
    std::printf("%s\n", all ? "verify: all residual checks passed"
                            : "verify: residual check failure");
    return all ? 0 : 2;
}

int cmd_solve(const RunConfig& cfg, const ResultStore& store) {
    RunConfig resolved = cfg;
    const double eps = cfg.eps_list.empty() ? 0.1 : cfg.eps_list[0];
    resolved.eps_list = {eps};
    resolved.dx = resolve(cfg.dx, 0.05);
    resolved.dt = resolve(cfg.dt, resolved.dx);
    resolved.t_end = solve_horizon(resolved, eps);

    const GridFunction profile = bump_profile(cfg.amp);
    resolved.L = cfg.L > 0.0
                     ? cfg.L
                     : domain_half_width(support_radius(profile), resolved.t_end);
    const Grid g = cfg.n_points > 0 ? make_grid(resolved.L, cfg.n_points)
                                    : sized_grid(resolved.L, resolved.dx);

    ProblemSpec ps;
    ps.p = cfg.p;
    make_data(cfg.data_class, eps, profile, g, ps.u0, ps.u1);
    ps.t_end = resolved.t_end;
    ps.dt = resolved.dt;
    ps.blowup_threshold = cfg.threshold;
    const auto nsteps = static_cast<std::size_t>(
        std::max<long>(1, std::llround(std::ceil(ps.t_end / ps.dt - 1e-9))));
    ps.store_stride = std::max<std::size_t>(1, nsteps / 400);

    const Trajectory traj = dispatch_solver(ps, cfg.solver, resolved.dx);

    std::vector<double> wanted = cfg.snapshot_times;
    if (wanted.empty()) wanted.push_back(traj.final_time());
    std::set<std::size_t> chosen;
    for (double tau : wanted) {
        std::size_t best = 0;
        for (std::size_t i = 1; i < traj.states.size(); ++i)
            if (std::abs(traj.states[i].time - tau) <
                std::abs(traj.states[best].time - tau))
                best = i;
        chosen.insert(best);
    }
    std::vector<SolverState> snaps;
    for (std::size_t i : chosen) snaps.push_back(traj.states[i]);
    const auto paths = emit_plot_data(store, snaps, cfg.data_class, cfg.p);
    write_metadata(store, resolved);

    std::printf("solve: %s with %s, t up to %s\n", status_name(traj.status),
                solver_name(cfg.solver), format_short(traj.final_time()).c_str());
    if (traj.status == RunStatus::blowup)
        std::printf("  threshold %s crossed at t0 = %s\n",
                    format_short(cfg.threshold).c_str(),
                    format_short(traj.blowup_time).c_str());
    std::printf("  final sup = %.6e\n", traj.sup_history.back().linf);
    for (const auto& p : paths) std::printf("  wrote %s\n", p.c_str());
    return 0;
}

int cmd_sweep(const RunConfig& cfg, const ResultStore& store) {
    RunConfig resolved = cfg;
    resolved.dx = resolve(cfg.dx, 0.05);
    resolved.dt = resolve(cfg.dt, resolved.dx);

    SweepConfig scfg;
    scfg.solver = cfg.solver;
    scfg.dx = resolved.dx;
    scfg.dt = resolved.dt;
    scfg.threshold = cfg.threshold;
    scfg.refine = cfg.refine;
    if (cfg.t_end > 0.0) {
        scfg.t_cap = cfg.t_end;  // fixed horizon for every run
        scfg.safety = 1e12;
    }

    const GridFunction profile = bump_profile(cfg.amp);
    const auto records =
        sweep(cfg.p, cfg.data_class, cfg.eps_list, profile, scfg);
    const auto paths = emit_plot_data(store, records);
    write_metadata(store, resolved);

    std::printf("sweep: %zu runs, class %s, p = %s, solver %s\n", records.size(),
                cfg.data_class == DataClass::A ? "A" : "B",
                format_short(cfg.p).c_str(), solver_name(cfg.solver));
    for (const auto& r : records)
        std::printf("  eps = %-10s t0 = %-12s %s%s\n",
                    format_short(r.eps).c_str(), format_short(r.t0).c_str(),
                    r.censored ? "censored" : "blowup",
                    r.refined ? " (refined)" : "");
    for (const auto& p : paths) std::printf("  wrote %s\n", p.c_str());

    try {
        const FitReport fit = fit_power_law(records);
        const ExponentPrediction pred = predicted_exponents(cfg.p);
        const double expected =
            cfg.data_class == DataClass::A ? pred.classA : pred.classB;
        std::printf(
            "  fit: slope = %.4f (model %.4f), r2 = %.5f, window [%s, %s]\n",
            fit.slope, -expected, fit.r_squared,
            format_short(fit.eps_min).c_str(), format_short(fit.eps_max).c_str());
    } catch (const std::exception& e) {
        std::printf("  fit skipped: %s\n", e.what());
    }
    return 0;
}

int fit_one(const std::string& path, const ResultStore& store) {
    const auto records = read_lifespan_table(path);
    const FitReport fit = fit_power_law(records);
    const char* cls = records.front().data_class == DataClass::A ? "A" : "B";

    std::ostringstream out;
    out << "source = " << path << '\n'
        << "class = " << cls << '\n'
        << "p = " << format_g17(fit.p) << '\n'
        << "slope = " << format_g17(fit.slope) << '\n'
        << "intercept = " << format_g17(fit.intercept) << '\n'
        << "r_squared = " << format_g17(fit.r_squared) << '\n'
        << "eps_min = " << format_g17(fit.eps_min) << '\n'
        << "eps_max = " << format_g17(fit.eps_max) << '\n'
        << "used = " << fit.used << '\n'
        << "censored = " << fit.censored << '\n'
        << "loglog = " << (fit.loglog ? "true" : "false") << '\n';
    store.write_text(std::string("fit_") + cls + "_p" + format_short(fit.p) +
                         ".txt",
                     out.str());

    std::printf("fit %s:\n", path.c_str());
    std::printf("  class %s, p = %s, %zu points (%zu censored excluded)\n", cls,
                format_short(fit.p).c_str(), fit.used, fit.censored);
    std::printf("  slope = %.6f  intercept = %.6f  r2 = %.6f%s\n", fit.slope,
                fit.intercept, fit.r_squared,
                fit.loglog ? "  [doubly logarithmic axis]" : "");
    return 0;
}

int cmd_fit(const RunConfig& cfg, const ResultStore& store) {
    std::vector<std::string> files;
    if (fs::is_directory(cfg.input)) {
        for (const auto& e : fs::directory_iterator(cfg.input)) {
            const std::string name = e.path().filename().string();
            if (name.rfind("lifespan_", 0) == 0 &&
                e.path().extension() == ".csv")
                files.push_back(e.path().string());
        }
        std::sort(files.begin(), files.end());
        if (files.empty())
            throw std::invalid_argument("input: no lifespan tables in " +
                                        cfg.input);
    } else {
        files.push_back(cfg.input);
    }
    for (const auto& f : files) fit_one(f, store);
    write_metadata(store, cfg);
    return 0;
}

int cmd_global_check(const RunConfig& cfg, const ResultStore& store) {
    RunConfig resolved = cfg;
    const double eps = cfg.eps_list.empty() ? -0.1 : cfg.eps_list[0];
    resolved.eps_list = {eps};
    resolved.dx = resolve(cfg.dx, 0.1);
    resolved.dt = resolve(cfg.dt, resolved.dx);
    resolved.t_end = resolve(cfg.t_end, 50.0);
    if (!cfg.solver_given) resolved.solver = SolverKind::dalembert;

    const GridFunction profile = bump_profile(cfg.amp);
    resolved.L = cfg.L > 0.0
                     ? cfg.L
                     : domain_half_width(support_radius(profile), resolved.t_end);
    const Grid g = cfg.n_points > 0 ? make_grid(resolved.L, cfg.n_points)
                                    : sized_grid(resolved.L, resolved.dx);

    // data (eps f, eps f): the sign of eps orients the pair, so a positive
    // amplitude exercises the hypothesis gate
    ProblemSpec ps;
    ps.p = cfg.p;
    make_data(DataClass::A, std::abs(eps), profile, g, ps.u0, ps.u1);
    if (eps < 0.0) {
        ps.u0 = scale(ps.u0, -1.0);
        ps.u1 = scale(ps.u1, -1.0);
    }
    ps.t_end = resolved.t_end;
    ps.dt = resolved.dt;
    ps.blowup_threshold = cfg.threshold;
    const auto nsteps = static_cast<std::size_t>(
        std::max<long>(1, std::llround(std::ceil(ps.t_end / ps.dt - 1e-9))));
    ps.store_stride = std::max<std::size_t>(1, nsteps / 200);

    const Trajectory traj = dispatch_solver(ps, resolved.solver, resolved.dx);
    const AprioriReport rep = sign_and_apriori_check(traj, cfg.envelope_tol);

    std::ostringstream out;
    out << "hypotheses_hold = " << (rep.hypotheses_hold ? "true" : "false") << '\n'
        << "nonpositive = " << (rep.nonpositive ? "true" : "false") << '\n'
        << "envelope_ok = " << (rep.envelope_ok ? "true" : "false") << '\n'
        << "max_positive_u = " << format_g17(rep.max_positive_u) << '\n'
        << "max_lower_violation = " << format_g17(rep.max_lower_violation) << '\n'
        << "max_upper_violation = " << format_g17(rep.max_upper_violation) << '\n'
        << "eps1 = " << format_g17(rep.eps1) << '\n'
        << "fitted_A = " << format_g17(rep.fitted_A) << '\n'
        << "worst_time = " << format_g17(rep.worst_time) << '\n'
        << "worst_x = " << format_g17(rep.worst_x) << '\n'
        << "message = " << rep.message << '\n';
    store.write_text("apriori_report.txt", out.str());
    write_metadata(store, resolved);

    if (!rep.hypotheses_hold) {
        std::printf("global-check: hypothesis violation: %s\n",
                    rep.message.c_str());
        return 1;
    }
    std::printf("global-check: %s over t in [0, %s]\n",
                rep.nonpositive && rep.envelope_ok ? "passed" : "FAILED",
                format_short(traj.final_time()).c_str());
    std::printf("  max positive value   %.3e\n", rep.max_positive_u);
    std::printf("  envelope violations  lower %.3e  upper %.3e (tol %.1e)\n",
                rep.max_lower_violation, rep.max_upper_violation,
                cfg.envelope_tol);
    std::printf("  eps1 = %.6f, fitted tail-norm constant A = %.4f\n", rep.eps1,
                rep.fitted_A);
    return rep.nonpositive && rep.envelope_ok ? 0 : 2;
}

}  // namespace

RunConfig parse_config(const std::vector<std::string>& args) {
    RunConfig cfg;
    std::string cls = "B", solver = "fdtd";

    CLI::App app{"numerical laboratory for the 1d damped wave equation "
                 "with power nonlinearity"};
    app.name("dwlab");
    app.option_defaults()->configurable(true);
    app.set_config("--config", "", "plain key = value configuration file");

    app.add_option("command", cfg.command,
                   "verify | solve | sweep | fit | global-check")
        ->required()
        ->check(CLI::IsMember(
            {"verify", "solve", "sweep", "fit", "global-check"}));
    auto* opt_p =
        app.add_option("--p", cfg.p, "nonlinearity exponent, in (1, 3]");
    app.add_option("--eps", cfg.eps_list,
                   "data amplitude(s), comma separated; sign orients "
                   "global-check data")
        ->delimiter(',');
    app.add_option("--class", cls, "data class")
        ->check(CLI::IsMember({"A", "B"}));
    app.add_option("--L", cfg.L, "domain half width (0: auto-sized)")
        ->check(CLI::NonNegativeNumber);
    app.add_option("--n", cfg.n_points, "grid point count (0: auto from dx)");
    app.add_option("--dx", cfg.dx, "grid spacing (0: command default)")
        ->check(CLI::NonNegativeNumber);
    app.add_option("--dt", cfg.dt, "time step (0: equals dx)")
        ->check(CLI::NonNegativeNumber);
    app.add_option("--t-end", cfg.t_end, "time horizon (0: auto-sized)")
        ->check(CLI::NonNegativeNumber);
    app.add_option("--M", cfg.threshold, "blowup detection threshold")
        ->check(CLI::PositiveNumber);
    auto* opt_solver = app.add_option("--solver", solver, "time marcher")
                           ->check(CLI::IsMember({"mild", "dalembert", "fdtd"}));
    app.add_option("--out", cfg.output_dir, "output directory")
        ->envname("DWLAB_OUT");
    app.add_option("--seed", cfg.seed, "seed for randomized property sampling");
    app.add_option("--amp", cfg.amp, "profile amplitude multiplier")
        ->check(CLI::PositiveNumber);
    app.add_flag("--refine,!--no-refine", cfg.refine,
                 "halved grid-and-step rerun near a blowup crossing");
    app.add_option("--input", cfg.input,
                   "fit: lifespan table or directory of tables");
    app.add_option("--envelope-tol", cfg.envelope_tol,
                   "global-check envelope tolerance")
        ->check(CLI::PositiveNumber);
    app.add_option("--snapshot", cfg.snapshot_times,
                   "solve: snapshot times, comma separated")
        ->delimiter(',');

    std::vector<std::string> rev(args.rbegin(), args.rend());
    try {
        app.parse(rev);
    } catch (const CLI::CallForHelp&) {
        cfg.command = "help";
        cfg.help_text = app.help();
        return cfg;
    } catch (const CLI::ParseError& e) {
        throw std::invalid_argument(e.what());
    }

    cfg.data_class = (cls == "A") ? DataClass::A : DataClass::B;
    cfg.solver = (solver == "mild")
                     ? SolverKind::mild
                     : (solver == "dalembert" ? SolverKind::dalembert
                                              : SolverKind::fdtd);
    cfg.solver_given = opt_solver->count() > 0;
    if (const auto* conf = app.get_config_ptr(); conf && conf->count() > 0)
        cfg.config_file = conf->as<std::string>();
    if (cfg.output_dir.empty()) cfg.output_dir = "dwlab-out";

    if (cfg.command == "sweep") {
        if (opt_p->count() == 0)
            throw std::invalid_argument("p: required for sweep");
        if (cfg.eps_list.empty())
            throw std::invalid_argument("eps: required for sweep");
    }
    if (cfg.command == "fit" && cfg.input.empty())
        throw std::invalid_argument(
            "input: required for fit (lifespan table or directory)");
    if (!(cfg.p > 1.0) || !(cfg.p <= 3.0))
        throw std::invalid_argument("p: must lie in (1, 3]");
    for (double e : cfg.eps_list) {
        if (cfg.command == "global-check") {
            if (e == 0.0)
                throw std::invalid_argument("eps: must be nonzero");
        } else if (!(e > 0.0)) {
            throw std::invalid_argument("eps: must be positive");
        }
    }
    if (cfg.eps_list.size() > 1 && cfg.command != "sweep")
        throw std::invalid_argument("eps: " + cfg.command +
                                    " takes a single amplitude");
    return cfg;
}

RunConfig parse_config(int argc, const char* const* argv) {
    return parse_config(std::vector<std::string>(argv + 1, argv + argc));
}

std::vector<ResidualRow> verify_residuals(double h, double fd_delta,
                                          double dtau) {
    std::vector<ResidualRow> rows;

    double worst = 0.0;
    for (double t : {0.1, 1.0, 5.0, 20.0}) {
        const Grid g = sized_grid(2.0 + t, h);
        const GridFunction f = default_profile(g);
        const double mf = integrate(f);
        const double r =
            std::abs(integrate(apply_S(t, f)) - (1.0 - std::exp(-t)) * mf) /
            std::abs(mf);
        worst = std::max(worst, r);
    }
    rows.push_back({"mass-identity", worst, 1e-6, worst <= 1e-6});

    {
        const Grid g = sized_grid(8.0, h);
        const GridFunction gauss =
            sample(g, [](double x) { return std::exp(-x * x); });
        const double r = strans_residual(1.0, gauss, dtau) / norm_linf(gauss);
        rows.push_back({"self-consistency", r, 1e-4, r <= 1e-4});
    }

    double wdt = 0.0, wdx = 0.0, wdtt = 0.0, wdtx = 0.0;
    const double d = fd_delta;
    for (double t : {0.5, 1.0, 5.0}) {
        const Grid g = sized_grid(3.0 + t, h);
        const GridFunction f = default_profile(g);

        const GridFunction s0 = apply_S(t, f);
        const GridFunction sp = apply_S(t + d, f);
        const GridFunction sm = apply_S(t - d, f);

        GridFunction fd_t = sub(sp, sm);
        for (auto& v : fd_t.values) v /= 2.0 * d;
        wdt = std::max(wdt, rel_linf(fd_t, apply_dS(Dt::t, t, f)));

        GridFunction fd_x = sub(apply_S(t, f, d), apply_S(t, f, -d));
        for (auto& v : fd_x.values) v /= 2.0 * d;
        wdx = std::max(wdx, rel_linf(fd_x, apply_dS(Dt::x, t, f)));

        GridFunction fd_tt = add(sp, sm);
        axpy(fd_tt, -2.0, s0);
        for (auto& v : fd_tt.values) v /= d * d;
        wdtt = std::max(wdtt, rel_linf(fd_tt, apply_dS(Dt::tt, t, f)));

        GridFunction fd_tx = sub(apply_S(t + d, f, d), apply_S(t + d, f, -d));
        axpy(fd_tx, -1.0, apply_S(t - d, f, d));
        axpy(fd_tx, 1.0, apply_S(t - d, f, -d));
        for (auto& v : fd_tx.values) v /= 4.0 * d * d;
        wdtx = std::max(wdtx, rel_linf(fd_tx, apply_dS(Dt::tx, t, f)));
    }
    rows.push_back({"decomposition-dt", wdt, 1e-4, wdt <= 1e-4});
    rows.push_back({"decomposition-dx", wdx, 1e-4, wdx <= 1e-4});
    rows.push_back({"decomposition-dtt", wdtt, 1e-4, wdtt <= 1e-4});
    rows.push_back({"decomposition-dtx", wdtx, 1e-4, wdtx <= 1e-4});

    for (int j = 0; j <= 4; ++j) {
        const EnvelopeFit ef =
            verify_envelope(j, {0.1, 1.0, 10.0, 100.0}, 2001);
        rows.push_back({"envelope-K" + std::to_string(j), ef.fitted_C,
                        std::numeric_limits<double>::infinity(),
                        std::isfinite(ef.fitted_C)});
    }
    return rows;
}

int run(const RunConfig& cfg) {
    if (cfg.command == "help") {
        std::printf("%s", cfg.help_text.c_str());
        return 0;
    }
    try {
        const ResultStore store(cfg.output_dir);
        if (cfg.command == "verify") return cmd_verify(cfg, store);
        if (cfg.command == "solve") return cmd_solve(cfg, store);
        if (cfg.command == "sweep") return cmd_sweep(cfg, store);
        if (cfg.command == "fit") return cmd_fit(cfg, store);
        if (cfg.command == "global-check") return cmd_global_check(cfg, store);
        throw std::invalid_argument("command: unknown command " + cfg.command);
    } catch (const std::exception& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 1;
    }
}

}  // namespace dwlab
