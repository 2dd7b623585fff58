#include "dwlab/special.hpp"

#include <cmath>
#include <stdexcept>

namespace dwlab {

namespace {

constexpr double kSeriesSwitch = 30.0;
constexpr double kRatioSwitch = 1e-3;

void check_args(int ell, double z) {
    if (ell < 0) throw std::invalid_argument("bessel_i: order must be >= 0");
    if (z < 0.0 || !std::isfinite(z))
        throw std::invalid_argument("bessel_i: argument must be finite and >= 0");
}

// sum_k (z/2)^{2k+ell} / (k! (k+ell)!)
double series_i(int ell, double z) {
    const double q = 0.5 * z;
    double term = 1.0;
    for (int j = 1; j <= ell; ++j) term *= q / static_cast<double>(j);
    double sum = term;
    const double q2 = q * q;
    for (int k = 1; k < 400; ++k) {
        term *= q2 / (static_cast<double>(k) * static_cast<double>(k + ell));
        sum += term;
        if (term < 1e-16 * sum) break;
    }
    return sum;
}

// Large-z expansion of exp(-z) I_ell(z), truncated at the smallest term.
double asymptotic_scaled_i(int ell, double z) {
    const double mu = 4.0 * static_cast<double>(ell) * static_cast<double>(ell);
    double term = 1.0;
    double sum = term;
    for (int k = 1; k < 60; ++k) {
        const double odd = 2.0 * k - 1.0;
        const double next = term * -(mu - odd * odd) / (8.0 * z * static_cast<double>(k));
        if (std::abs(next) >= std::abs(term)) break;
        sum += next;
        term = next;
        if (std::abs(next) < 1e-18 * std::abs(sum)) break;
    }
    return sum / std::sqrt(2.0 * M_PI * z);
}

// sum_k w^{2k} / (k! (k+ell)! 4^{2k+ell}), i.e. I_ell(w/2) / w^ell near w = 0.
double ratio_series(int ell, double w) {
    double term = 1.0;
    for (int j = 1; j <= ell; ++j) term /= 4.0 * static_cast<double>(j);
    double sum = term;
    const double w2 = w * w;
    for (int k = 1; k < 60; ++k) {
        term *= w2 / (16.0 * static_cast<double>(k) * static_cast<double>(k + ell));
        sum += term;
        if (term < 1e-16 * sum) break;
    }
    return sum;
}

}  // namespace

double bessel_i(int ell, double z) {
    check_args(ell, z);
    if (z <= kSeriesSwitch) return series_i(ell, z);
    return std::exp(z) * asymptotic_scaled_i(ell, z);
}

double bessel_i_scaled(int ell, double z) {
    check_args(ell, z);
    if (z <= kSeriesSwitch) return std::exp(-z) * series_i(ell, z);
    return asymptotic_scaled_i(ell, z);
}

double i1_over_z(double w) {
    if (w < 0.0 || !std::isfinite(w))
        throw std::invalid_argument("i1_over_z: argument must be finite and >= 0");
    if (w <= kRatioSwitch) return ratio_series(1, w);
    return bessel_i(1, 0.5 * w) / w;
}

double i2_over_z2(double w) {
    if (w < 0.0 || !std::isfinite(w))
        throw std::invalid_argument("i2_over_z2: argument must be finite and >= 0");
    if (w <= kRatioSwitch) return ratio_series(2, w);
    return bessel_i(2, 0.5 * w) / (w * w);
}

double i1_over_z_scaled(double w) {
    if (w < 0.0 || !std::isfinite(w))
        throw std::invalid_argument("i1_over_z_scaled: argument must be finite and >= 0");
    if (w <= kRatioSwitch) return std::exp(-0.5 * w) * ratio_series(1, w);
    return bessel_i_scaled(1, 0.5 * w) / w;
}

double i2_over_z2_scaled(double w) {
    if (w < 0.0 || !std::isfinite(w))
        throw std::invalid_argument("i2_over_z2_scaled: argument must be finite and >= 0");
    if (w <= kRatioSwitch) return std::exp(-0.5 * w) * ratio_series(2, w);
    return bessel_i_scaled(2, 0.5 * w) / (w * w);
}

}  // namespace dwlab
