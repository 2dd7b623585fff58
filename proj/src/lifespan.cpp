#include "dwlab/lifespan.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <utility>
#include <vector>

#include "dwlab/numerics.hpp"
#include "dwlab/semigroup.hpp"

namespace dwlab {

namespace {

void check_p(double p) {
    if (!(p > 1.0) || !(p <= 3.0))
        throw std::invalid_argument("lifespan: p must lie in (1, 3]");
}

double checked_radius(const GridFunction& f) {
    if (norm_linf(f) == 0.0)
        throw std::invalid_argument("lifespan: profile must be nonzero");
    return support_radius(f);
}

// grid with spacing exactly dx covering [-L, L]
Grid grid_for(double L, double dx) {
    const auto cells =
        static_cast<std::size_t>(std::ceil(2.0 * L / dx - 1e-9));
    return make_grid(0.5 * dx * static_cast<double>(cells), cells + 1);
}

Trajectory run_solver(const ProblemSpec& spec, SolverKind solver, double dx) {
    switch (solver) {
        case SolverKind::mild:
            return solve_mild(spec);
        case SolverKind::dalembert:
            return solve_dalembert(spec);
        default:
            return solve_fdtd(spec, dx);
    }
}

}  // namespace

double log_lifespan_model(double p, double eps) {
    check_p(p);
    if (!(eps > 0.0)) throw std::invalid_argument("lifespan: eps must be positive");
    if (p == 3.0) return std::pow(eps, -2.0);
    return -2.0 * (p - 1.0) / (3.0 - p) * std::log(eps);
}

double lifespan_model(double p, double eps) {
    return std::exp(log_lifespan_model(p, eps));
}

ExponentPrediction predicted_exponents(double p) {
    check_p(p);
    if (p == 3.0) return {2.0, 2.0 * p, 2.0 * (p - 1.0)};
    const double a = 2.0 * (p - 1.0) / (3.0 - p);
    return {a, p * a, (p - 1.0) * a};
}

GridFunction default_profile(const Grid& g) {
    GridFunction f = zeros(g);
    for (std::size_t i = 0; i < g.n; ++i) {
        const double x = g.x(i);
        if (std::abs(x) < 1.0) f.values[i] = std::exp(-1.0 / (1.0 - x * x));
    }
    return f;
}

void make_data(DataClass data_class, double eps, const GridFunction& profile,
               const Grid& g, GridFunction& u0, GridFunction& u1) {
    if (!(eps > 0.0)) throw std::invalid_argument("lifespan: eps must be positive");
    CubicSpline s(profile);
    const double lim = profile.grid.half_width;
    u0 = zeros(g);
    for (std::size_t i = 0; i < g.n; ++i) {
        const double x = g.x(i);
        if (std::abs(x) <= lim) u0.values[i] = eps * s(x);
    }
    u1 = (data_class == DataClass::A) ? u0 : scale(u0, -1.0);
}

double domain_half_width(double sr, double t_end) {
    return sr + t_end + 6.0 * std::sqrt(2.0 * t_end);
}

LifespanEstimate estimate_lifespan(const ProblemSpec& spec, SolverKind solver,
                                   double dx, bool refine) {
    Trajectory coarse = run_solver(spec, solver, dx);
    LifespanEstimate est = detect_blowup(coarse, spec.blowup_threshold);
    if (est.censored || !refine) return est;

    ProblemSpec fine = spec;
    fine.dt = 0.5 * spec.dt;
    fine.t_end = std::min(spec.t_end, 1.25 * est.t0 + 1.0);
    if (solver != SolverKind::fdtd) {
        const Grid& g0 = spec.u0.grid;
        const Grid g2 = make_grid(g0.half_width, 2 * (g0.n - 1) + 1);
        CubicSpline s0(spec.u0), s1(spec.u1);
        fine.u0 = zeros(g2);
        fine.u1 = zeros(g2);
        for (std::size_t i = 0; i < g2.n; ++i) {
            fine.u0.values[i] = s0(g2.x(i));
            fine.u1.values[i] = s1(g2.x(i));
        }
    }
    Trajectory ft = run_solver(fine, solver, 0.5 * dx);
    LifespanEstimate fe = detect_blowup(ft, spec.blowup_threshold);
    if (fe.censored) return est;  // keep the coarse crossing, unrefined
    fe.refined = true;
    return fe;
}

std::vector<LifespanRecord> sweep(double p, DataClass data_class,
                                  const std::vector<double>& eps_list,
                                  const GridFunction& profile,
                                  const SweepConfig& cfg) {
    check_p(p);
    const double sr = checked_radius(profile);

    std::vector<LifespanRecord> out;
    for (double eps : eps_list) {
        LifespanRecord rec;
        rec.eps = eps;
        rec.p = p;
        rec.data_class = data_class;
        rec.threshold = cfg.threshold;
        try {
            const double eps_eff =
                (data_class == DataClass::A) ? eps : std::pow(eps, p);
            const double log_t = log_lifespan_model(p, eps_eff);
            const double t_end = (log_t >= std::log(cfg.t_cap / cfg.safety))
                                     ? cfg.t_cap
                                     : cfg.safety * std::exp(log_t);
            const Grid g = grid_for(domain_half_width(sr, t_end), cfg.dx);

            ProblemSpec ps;
            ps.p = p;
            make_data(data_class, eps, profile, g, ps.u0, ps.u1);
            ps.t_end = t_end;
            ps.dt = std::min(cfg.dt, cfg.dx);
            ps.blowup_threshold = cfg.threshold;
            ps.nonlinear = cfg.nonlinear;
            ps.store_stride = static_cast<std::size_t>(1) << 31;

            rec.dx = g.dx;
            rec.dt = ps.dt;
            rec.half_width = g.half_width;
            rec.t_end = t_end;

            LifespanEstimate est =
                estimate_lifespan(ps, cfg.solver, cfg.dx, cfg.refine);
            rec.t0 = est.t0;
            rec.censored = est.censored;
            rec.refined = est.refined;
        } catch (const std::exception&) {
            rec.censored = true;
            if (!(rec.t0 > 0.0)) rec.t0 = (rec.t_end > 0.0) ? rec.t_end : 1.0;
        }
        out.push_back(rec);
    }
    return out;
}

FitReport fit_power_law(const std::vector<LifespanRecord>& records) {
    std::vector<const LifespanRecord*> use;
    std::size_t censored = 0;
    bool first = true;
    double p = 0.0;
    DataClass cls = DataClass::A;
    for (const auto& r : records) {
        if (first) {
            p = r.p;
            cls = r.data_class;
            first = false;
        } else if (r.p != p || r.data_class != cls) {
            throw std::invalid_argument(
                "fit_power_law: records mix p or data class");
        }
        if (r.censored) {
            ++censored;
            continue;
        }
        use.push_back(&r);
    }
    if (use.size() < 3)
        throw std::invalid_argument(
            "fit_power_law: need >= 3 non-censored records");
    std::sort(use.begin(), use.end(), [](const LifespanRecord* a,
                                         const LifespanRecord* b) {
        return a->eps < b->eps;
    });
    if (use.back()->eps < 4.0 * (1.0 - 1e-12) * use.front()->eps)
        throw std::invalid_argument(
            "fit_power_law: non-censored eps span below factor 4");
    if (use.size() >= 5) use.pop_back();  // largest eps is pre-asymptotic

    const bool loglog = (p == 3.0);
    std::vector<double> xs, ys;
    for (const auto* r : use) {
        double y = r->t0;
        if (loglog) {
            if (!(y > 1.0))
                throw std::invalid_argument(
                    "fit_power_law: critical scale needs T0 > 1");
            y = std::log(y);
        }
        xs.push_back(std::log(r->eps));
        ys.push_back(std::log(y));
    }

    const auto m = static_cast<double>(xs.size());
    double sx = 0.0, sy = 0.0;
    for (std::size_t i = 0; i < xs.size(); ++i) {
        sx += xs[i];
        sy += ys[i];
    }
    const double mx = sx / m, my = sy / m;
    double sxx = 0.0, sxy = 0.0;
    for (std::size_t i = 0; i < xs.size(); ++i) {
        sxx += (xs[i] - mx) * (xs[i] - mx);
        sxy += (xs[i] - mx) * (ys[i] - my);
    }
    FitReport rep;
    rep.slope = sxy / sxx;
    rep.intercept = my - rep.slope * mx;
    double ss_res = 0.0, ss_tot = 0.0;
    for (std::size_t i = 0; i < xs.size(); ++i) {
        const double fit = rep.intercept + rep.slope * xs[i];
        ss_res += (ys[i] - fit) * (ys[i] - fit);
        ss_tot += (ys[i] - my) * (ys[i] - my);
    }
    rep.r_squared = (ss_tot > 0.0) ? std::max(0.0, 1.0 - ss_res / ss_tot) : 1.0;
    rep.eps_min = use.front()->eps;
    rep.eps_max = use.back()->eps;
    rep.p = p;
    rep.used = use.size();
    rep.censored = censored;
    rep.loglog = loglog;
    return rep;
}

double extension_exponent(const FitReport& fitA, const FitReport& fitB) {
    if (fitA.used == 0 || fitB.used == 0)
        throw std::invalid_argument("extension_exponent: fits must be nonempty");
    if (fitA.p != fitB.p)
        throw std::invalid_argument("extension_exponent: fits must share p");
    return std::abs(fitB.slope) - std::abs(fitA.slope);
}

ApproximationCurve approximation_error_curve(double p, double eps,
                                             const GridFunction& profile,
                                             const SweepConfig& cfg) {
    check_p(p);
    if (!(eps > 0.0)) throw std::invalid_argument("lifespan: eps must be positive");
    const double sr = checked_radius(profile);
    const double t1 = std::pow(eps, 1.0 - p);
    const Grid g = grid_for(domain_half_width(sr, t1), cfg.dx);

    ProblemSpec ps;
    ps.p = p;
    make_data(DataClass::B, eps, profile, g, ps.u0, ps.u1);
    ps.t_end = t1;
    ps.dt = std::min(cfg.dt, cfg.dx);
    ps.blowup_threshold = cfg.threshold;
    ps.nonlinear = cfg.nonlinear;
    const auto nsteps =
        static_cast<std::size_t>(std::max<long>(1, std::llround(t1 / ps.dt)));
    ps.store_stride = std::max<std::size_t>(1, nsteps / 160);

    Trajectory traj = run_solver(ps, cfg.solver, cfg.dx);

    ApproximationCurve curve;
    curve.t1 = t1;
    curve.eps = eps;
    curve.p = p;
    curve.truncated_by_blowup = (traj.status == RunStatus::blowup);

    const GridFunction& u0 = traj.states.front().u;
    for (const auto& st : traj.states) {
        const GridFunction diff = sub(st.u, apply_dS(Dt::t, st.time, u0));
        curve.points.push_back({st.time, norm_l1(diff) + norm_lp(diff, p)});
    }
    const auto& last = traj.states.back();
    const NormReport nu = norms(last.u, p);
    const NormReport nv = norms(last.ut, p);
    curve.end_combined = std::max(nu.w11, nu.w1p) + std::max(nv.l1, nv.lp);
    return curve;
}

}  // namespace dwlab
