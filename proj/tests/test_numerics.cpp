#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>

#include "dwlab/grid.hpp"
#include "dwlab/numerics.hpp"
#include "dwlab/trajectory.hpp"

using namespace dwlab;

namespace {

// Independent reference quadrature: composite Simpson in long double on a
// refined partition of the same interval.
long double simpson_reference(long double (*f)(long double), long double a,
                              long double b, int n) {
    if (n % 2) ++n;
    const long double h = (b - a) / n;
    long double s = f(a) + f(b);
    for (int i = 1; i < n; ++i) s += f(a + h * i) * ((i % 2) ? 4.0L : 2.0L);
    return s * h / 3.0L;
}

long double gauss_ld(long double x) { return std::exp(-x * x); }

GridFunction bump_like(const Grid& g, double amp, double center, double width) {
    return sample(g, [=](double x) {
        const double s = (x - center) / width;
        return std::abs(s) < 1.0 ? amp * std::exp(-1.0 / (1.0 - s * s)) : 0.0;
    });
}

}  // namespace

TEST_CASE("make_grid basics") {
    Grid g = make_grid(10.0, 3);
    CHECK(g.dx == doctest::Approx(10.0));
    CHECK(g.x(0) == doctest::Approx(-10.0));
    CHECK(g.x(1) == doctest::Approx(0.0));
    CHECK(g.x(2) == doctest::Approx(10.0));

    Grid g2 = make_grid(1.0, 5);
    CHECK(g2.dx == doctest::Approx(0.5));

    Grid g3 = make_grid(5.0, 4);
    CHECK(g3.x(2) == doctest::Approx(-5.0 + 2.0 * (10.0 / 3.0)));

    CHECK_THROWS_AS(make_grid(0.0, 3), std::invalid_argument);
    CHECK_THROWS_AS(make_grid(1.0, 1), std::invalid_argument);
}

TEST_CASE("trapezoid integration") {
    Grid g = make_grid(1.0, 11);
    CHECK(integrate(sample(g, [](double) { return 1.0; })) == doctest::Approx(2.0).epsilon(1e-14));
    CHECK(integrate(sample(g, [](double x) { return x; })) == doctest::Approx(0.0).epsilon(1e-14));

    // Exact for affine functions on any grid.
    std::mt19937_64 rng(12345);
    std::uniform_real_distribution<double> U(-2.0, 2.0);
    for (int rep = 0; rep < 20; ++rep) {
        const double a = U(rng), b = U(rng), L = 0.5 + std::abs(U(rng));
        Grid gr = make_grid(L, 7 + rep);
        const double got = integrate(sample(gr, [=](double x) { return a * x + b; }));
        CHECK(got == doctest::Approx(2.0 * L * b).epsilon(1e-12));
    }
}

TEST_CASE("gaussian integral against reference quadrature") {
    Grid g = make_grid(8.0, 1601);
    const double got = integrate(sample(g, [](double x) { return std::exp(-x * x); }));
    const double ref = static_cast<double>(simpson_reference(gauss_ld, -8.0L, 8.0L, 40000));
    CHECK(std::abs(got - ref) < 1e-6);
    CHECK(ref == doctest::Approx(std::sqrt(M_PI)).epsilon(1e-12));
}

TEST_CASE("prefix integral matches cumulative trapezoid") {
    Grid g = make_grid(2.0, 41);
    GridFunction f = sample(g, [](double x) { return std::cos(x); });
    GridFunction P = prefix_integral(f);
    CHECK(P.values[0] == 0.0);
    CHECK(P.values.back() == doctest::Approx(integrate(f)).epsilon(1e-14));
    CHECK(eval_linear_clamped(P, 5.0) == doctest::Approx(P.values.back()));
    CHECK(eval_linear_clamped(P, -5.0) == 0.0);
}

TEST_CASE("derivative is second order incl. boundary stencils") {
    for (std::size_t n : {41u, 81u}) {
        Grid g = make_grid(1.0, n);
        GridFunction f = sample(g, [](double x) { return std::sin(3.0 * x); });
        GridFunction d = derivative(f);
        double err = 0.0;
        for (std::size_t i = 0; i < g.n; ++i)
            err = std::max(err, std::abs(d.values[i] - 3.0 * std::cos(3.0 * g.x(i))));
        const double h = g.dx;
        CHECK(err < 12.0 * h * h);
    }
}

TEST_CASE("cubic spline reproduces smooth functions and vanishes outside") {
    Grid g = make_grid(3.0, 201);
    GridFunction f = sample(g, [](double x) { return std::exp(-x * x); });
    CubicSpline s(f);
    std::mt19937_64 rng(7);
    std::uniform_real_distribution<double> U(-3.0, 3.0);
    for (int rep = 0; rep < 200; ++rep) {
        const double x = U(rng);
        CHECK(std::abs(s(x) - std::exp(-x * x)) < 2e-7);
    }
    CHECK(s(3.5) == 0.0);
    CHECK(s(-3.5) == 0.0);
    // exact on the nodes
    for (std::size_t i = 0; i < g.n; i += 17)
        CHECK(s(g.x(i)) == doctest::Approx(f.values[i]).epsilon(1e-13));
}

TEST_CASE("norms: scaling homogeneity and hand values") {
    Grid g = make_grid(4.0, 801);
    GridFunction f = bump_like(g, 1.0, 0.3, 1.2);
    NormReport r = norms(f, 2.0);
    CHECK(r.l1 > 0.0);
    CHECK(r.w11 >= r.l1);
    CHECK(r.w1p >= r.lp);
    CHECK(r.linf == doctest::Approx(norm_linf(f)));

    std::mt19937_64 rng(99);
    std::uniform_real_distribution<double> U(0.1, 5.0);
    for (int rep = 0; rep < 10; ++rep) {
        const double c = U(rng);
        NormReport rc = norms(scale(f, c), 2.0);
        CHECK(rc.l1 == doctest::Approx(c * r.l1).epsilon(1e-12));
        CHECK(rc.lp == doctest::Approx(c * r.lp).epsilon(1e-12));
        CHECK(rc.w11 == doctest::Approx(c * r.w11).epsilon(1e-12));
        CHECK(rc.w1p == doctest::Approx(c * r.w1p).epsilon(1e-12));
        CHECK(rc.linf == doctest::Approx(c * r.linf).epsilon(1e-12));
    }

    CHECK_THROWS_AS(norms(f, 0.5), std::invalid_argument);
}

TEST_CASE("product inequality holds on random bump sums") {
    Grid g = make_grid(6.0, 1201);
    std::mt19937_64 rng(2024);
    std::uniform_real_distribution<double> A(-2.0, 2.0), C(-3.0, 3.0), W(0.4, 1.5);
    for (double p : {1.5, 2.0, 2.5, 3.0}) {
        for (int rep = 0; rep < 8; ++rep) {
            GridFunction f = zeros(g);
            for (int b = 0; b < 3; ++b)
                axpy(f, 1.0, bump_like(g, A(rng), C(rng), W(rng)));
            GNReport rep_gn = gn_check(f, p);
            CHECK(rep_gn.holds);
            CHECK(rep_gn.lhs <= rep_gn.rhs * (1.0 + 1e-9) + 1e-12);
        }
    }
}

TEST_CASE("x_norm single snapshot and monotonicity") {
    Trajectory traj;
    traj.dt = 0.5;
    StepNorms e0;
    e0.time = 0.0;
    e0.u.l1 = 0.7;
    traj.norm_history.push_back(e0);
    CHECK(x_norm(traj, 0.0, 2.0) == doctest::Approx(0.7));

    StepNorms e1;
    e1.time = 1.0;
    e1.u.l1 = 0.2;
    e1.ut.lp = 0.3;
    traj.norm_history.push_back(e1);

    const double x1 = x_norm(traj, 0.4, 2.0);
    const double x2 = x_norm(traj, 1.0, 2.0);
    CHECK(x2 >= x1);

    // adding later times never decreases the supremum
    StepNorms e2 = e1;
    e2.time = 2.0;
    traj.norm_history.push_back(e2);
    CHECK(x_norm(traj, 2.0, 2.0) >= x2);

    // tail norm with t1 = 0 and a single snapshot at 0 reduces to the plain sum
    Trajectory t2;
    t2.norm_history.push_back(e0);
    CHECK(y_norm(t2, 0.0, 0.0, 2.0) == doctest::Approx(0.7));
    CHECK_THROWS_AS(y_norm(t2, -1.0, 0.0, 2.0), std::invalid_argument);
}
