#include "dwlab/trajectory.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace dwlab {

namespace {

// Weighted norm sum at one stored time; base_weight = 1 + ... for the
// evolution norm, 0 + ... for the tail norm, with <s> evaluated at the
// appropriate shifted time.
double weighted_sum(const StepNorms& e, double s, double p, double base) {
    const double br = bracket(s);
    const double half_qp = 0.5 * (1.0 - 1.0 / p);  // 1/(2p') for q = p
    const double u_dx_l1 = std::max(e.u.w11 - e.u.l1, 0.0);
    const double u_dx_lp = std::max(e.u.w1p - e.u.lp, 0.0);
    double sum = 0.0;
    sum += std::pow(br, base) * e.u.l1;                    // k=0, l=0, q=1
    sum += std::pow(br, base + half_qp) * e.u.lp;          // k=0, l=0, q=p
    sum += std::pow(br, base + 0.5) * u_dx_l1;             // k=1, l=0, q=1
    sum += std::pow(br, base + 0.5 + half_qp) * u_dx_lp;   // k=1, l=0, q=p
    sum += std::pow(br, base + 1.0) * e.ut.l1;             // k=0, l=1, q=1
    sum += std::pow(br, base + 1.0 + half_qp) * e.ut.lp;   // k=0, l=1, q=p
    return sum;
}

}  // namespace

double x_norm(const Trajectory& traj, double t, double p) {
    if (!(p > 1.0)) throw std::invalid_argument("x_norm: p must be > 1");
    if (traj.norm_history.empty())
        throw std::invalid_argument("x_norm: trajectory has no stored norms");
    double sup = 0.0;
    const double t_cut = t + 1e-12 * std::max(1.0, std::abs(t));
    for (const auto& e : traj.norm_history) {
        if (e.time > t_cut) break;
        sup = std::max(sup, weighted_sum(e, e.time, p, 1.0));
    }
    return sup;
}

double y_norm(const Trajectory& traj, double t, double t1, double p) {
    if (!(p > 1.0)) throw std::invalid_argument("y_norm: p must be > 1");
    if (t < t1) throw std::invalid_argument("y_norm: need t >= t1");
    if (traj.norm_history.empty())
        throw std::invalid_argument("y_norm: trajectory has no stored norms");
    double sup = 0.0;
    const double pad = 1e-12 * std::max(1.0, std::abs(t));
    for (const auto& e : traj.norm_history) {
        if (e.time > t + pad) break;
        if (e.time < t1 - pad) continue;
        sup = std::max(sup, weighted_sum(e, e.time - t1, p, 0.0));
    }
    return sup;
}

}  // namespace dwlab
