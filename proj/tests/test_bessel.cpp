#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "dwlab/special.hpp"

using namespace dwlab;

namespace {

// Independent oracle: power series summed in long double arithmetic.
// Converges for every finite z; only practical up to moderate z where the
// implementation under test switches to its asymptotic branch, which is why
// the cross-checks below stay at z <= 60 (long double head-room is ample).
long double series_i_ld(int ell, long double z) {
    const long double q = z / 2.0L;
    long double term = 1.0L;
    for (int j = 1; j <= ell; ++j) term *= q / j;
    long double sum = term;
    for (int k = 1; k < 400; ++k) {
        term *= q * q / (static_cast<long double>(k) * (k + ell));
        sum += term;
        if (term < sum * 1e-21L) break;
    }
    return sum;
}

}  // namespace

TEST_CASE("modified Bessel values against series oracle") {
    CHECK(bessel_i(0, 1.0) ==
          doctest::Approx(1.2660658777520084).epsilon(1e-12));
    CHECK(bessel_i(1, 1.0) ==
          doctest::Approx(0.5651591039924850).epsilon(1e-12));
    CHECK(bessel_i(0, 0.0) == 1.0);
    CHECK(bessel_i(1, 0.0) == 0.0);
    CHECK(bessel_i(2, 0.0) == 0.0);

    for (int ell = 0; ell <= 2; ++ell) {
        for (double z : {1e-8, 1e-3, 0.1, 0.5, 2.0, 7.5, 15.0, 29.0}) {
            const double ref = static_cast<double>(series_i_ld(ell, z));
            CHECK(bessel_i(ell, z) == doctest::Approx(ref).epsilon(1e-13));
        }
    }
}

TEST_CASE("scaled Bessel against oracle across the branch switch") {
    for (int ell = 0; ell <= 2; ++ell) {
        for (double z : {0.5, 10.0, 25.0, 29.9, 30.1, 40.0, 60.0}) {
            const long double ref =
                series_i_ld(ell, z) * std::exp(-static_cast<long double>(z));
            CHECK(bessel_i_scaled(ell, z) ==
                  doctest::Approx(static_cast<double>(ref)).epsilon(5e-13));
        }
        // continuity across the series/asymptotic switch
        const double below = bessel_i_scaled(ell, 30.0 - 1e-9);
        const double above = bessel_i_scaled(ell, 30.0 + 1e-9);
        CHECK(std::abs(below - above) < 1e-9 * std::abs(below));
    }
    // far asymptotic regime: compare against the classical expansion head
    const double z = 500.0;
    const double head = 1.0 / std::sqrt(2.0 * M_PI * z);
    CHECK(bessel_i_scaled(0, z) == doctest::Approx(head * (1.0 + 1.0 / (8.0 * z))).epsilon(1e-5));
}

TEST_CASE("three-term recurrence I0 - I2 = (2/z) I1") {
    for (double z : {0.3, 1.0, 5.0, 12.0, 28.0, 35.0, 80.0}) {
        const double lhs = bessel_i_scaled(0, z) - bessel_i_scaled(2, z);
        const double rhs = 2.0 / z * bessel_i_scaled(1, z);
        CHECK(lhs == doctest::Approx(rhs).epsilon(1e-10));
    }
}

TEST_CASE("regularized ratios: limits and agreement with direct division") {
    CHECK(i1_over_z(0.0) == doctest::Approx(0.25).epsilon(1e-15));
    CHECK(i2_over_z2(0.0) == doctest::Approx(1.0 / 32.0).epsilon(1e-15));
    CHECK(i1_over_z_scaled(0.0) == doctest::Approx(0.25).epsilon(1e-15));
    CHECK(i2_over_z2_scaled(0.0) == doctest::Approx(1.0 / 32.0).epsilon(1e-15));

    for (double w : {1e-3, 2e-3, 0.1, 1.0, 10.0, 50.0}) {
        const double direct1 = bessel_i_scaled(1, w / 2.0) / w;
        const double direct2 = bessel_i_scaled(2, w / 2.0) / (w * w);
        CHECK(i1_over_z_scaled(w) == doctest::Approx(direct1).epsilon(1e-12));
        CHECK(i2_over_z2_scaled(w) == doctest::Approx(direct2).epsilon(1e-12));
    }

    // tiny-argument branch stays smooth: compare against long double series
    for (double w : {1e-6, 1e-4, 9e-4}) {
        const long double q = static_cast<long double>(w) / 2.0L;
        const long double ref1 = series_i_ld(1, q) / w;
        const long double ref2 = series_i_ld(2, q) / (static_cast<long double>(w) * w);
        CHECK(i1_over_z(w) == doctest::Approx(static_cast<double>(ref1)).epsilon(1e-13));
        CHECK(i2_over_z2(w) == doctest::Approx(static_cast<double>(ref2)).epsilon(1e-13));
    }
}

TEST_CASE("monotonicity and domain validation") {
    double prev = bessel_i(0, 0.0);
    for (double z = 0.25; z <= 20.0; z += 0.25) {
        const double cur = bessel_i(0, z);
        CHECK(cur > prev);
        prev = cur;
    }
    CHECK_THROWS_AS(bessel_i(-1, 1.0), std::invalid_argument);
    CHECK_THROWS_AS(bessel_i(0, -1.0), std::invalid_argument);
    CHECK_THROWS_AS(i1_over_z(-0.5), std::invalid_argument);
}
