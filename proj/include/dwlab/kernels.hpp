#pragma once

#include <cstddef>
#include <vector>

#include "dwlab/grid.hpp"
#include "dwlab/numerics.hpp"

namespace dwlab {

/// Light-cone kernels K_j(t, y), j = 0..4, supported on |y| <= t.
///
/// With w = sqrt(t^2 - y^2), I_k = I_k(w/2), r1 = I_1(w/2)/w, r2 = I_2(w/2)/w^2:
///   K_0 =  e^{-t/2}/2 * I_0
///   K_1 = -e^{-t/2}/4 * y * r1
///   K_2 =  e^{-t/2}/4 * (t * r1 - I_0)
///   K_3 = -e^{-t/2}/8 * y * (t * r2 - r1)
///   K_4 =  e^{-t/2} * (t^2/8 * r2 + (1-t)/4 * r1 + I_0/8)
/// K_3, K_4 use I_0 - I_2 = (4/w) I_1(w/2); they equal the longer forms with
/// the isolated 1/w^3 pieces. Values at |y| = t are the interior limits;
/// |y| > t gives 0. Evaluation is overflow-safe for large t (only
/// e^{(w-t)/2} <= 1 and scaled Bessel factors appear).
double kernel(int j, double t, double y);

/// |K_j(t,y)| * <t>^{(j+1)/2} * exp(y^2 / (8t)), the ratio against the
/// Gaussian decay envelope. Finite on the closed cone.
double envelope_ratio(int j, double t, double y);

/// Max of envelope_ratio over y in a uniform y_resolution-point sweep of [-t, t].
double envelope_ratio_max(int j, double t, std::size_t y_resolution);

struct EnvelopeFit {
    int j = 0;
    double fitted_C = 0.0;
    /// fitted_C minus the candidate constant; <= 0 means the candidate bounds
    /// every sampled ratio. Zero when no candidate was supplied.
    double max_violation = 0.0;
};

/// Envelope constant over a set of times. candidate_C <= 0 means
/// "fit only": fitted_C is the observed max and max_violation is 0.
EnvelopeFit verify_envelope(int j, const std::vector<double>& t_samples,
                            std::size_t y_resolution, double candidate_C = 0.0);

/// Precomputed y-quadrature of K_j(t, .) on the grid-cell partition of
/// [-t, t]: two Gauss-Legendre nodes per interior grid cell plus the partial
/// cells ending at the light cone. Reusable across convolutions at the same
/// (j, t, dx).
struct ConvPlan {
    int j = 0;
    double t = 0.0;
    double dx = 0.0;
    // Full cells [e*dx, (e+1)*dx] for e in [e_lo, e_lo + ka.size()).
    long e_lo = 0;
    std::vector<double> ka, kb;  // weight * K at the lower/upper node of each cell
    struct Node {
        double y = 0.0;
        double wk = 0.0;  // weight * K
    };
    std::vector<Node> partial;  // nodes in the two light-cone end cells
};

ConvPlan make_conv_plan(int j, double t, double dx);

/// Accumulates weight * (y-integral of K_j(t, y) f(x_i + x_offset - y) over
/// [-t, t]) into out, for grid points x_i with i in [i_lo, i_hi]; f is
/// reconstructed by fhat (C^2 cubic spline, zero outside the grid).
void apply_conv_plan(const ConvPlan& plan, const CubicSpline& fhat,
                     GridFunction& out, std::size_t i_lo, std::size_t i_hi,
                     double x_offset = 0.0, double weight = 1.0);

/// Truncated-kernel convolution (K_j(t, .) * f) on f's grid.
/// x_offset shifts every evaluation point, for off-grid probing.
/// truncated (optional) is set when f's support touches the grid boundary,
/// i.e. the grid may be cutting off mass the convolution should see.
GridFunction kernel_convolve(int j, double t, const GridFunction& f,
                             double x_offset = 0.0, bool* truncated = nullptr);

}  // namespace dwlab
