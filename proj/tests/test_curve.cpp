#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <vector>

#include "reeblab/curve.hpp"
#include "reeblab/errors.hpp"
#include "reeblab/linalg.hpp"
#include "reeblab/models.hpp"
#include "reeblab/quadrature.hpp"

using namespace reeblab;

namespace {

constexpr double kHalfPi = 1.5707963267948966;

// d^k/dt^k of c*sin(a t + phase), using sin(x + k*pi/2) to rotate through the
// derivative cycle. phase = pi/2 gives cosine.
double trig_deriv(double c, double a, double phase, double t, int k) {
    return c * std::pow(a, k) * std::sin(a * t + phase + k * kHalfPi);
}

// The standard torus-knot style curve on the unit 3-sphere:
// (cos(a t), sin(a t), cos(b t), sin(b t)) / sqrt(2) with a^2 + b^2 = 2.
Vec clifford_exact(double t, int k) {
    const double a = std::sqrt(1.6), b = std::sqrt(0.4);
    const double r = 1.0 / std::sqrt(2.0);
    return {trig_deriv(r, a, kHalfPi, t, k), trig_deriv(r, a, 0.0, t, k),
            trig_deriv(r, b, kHalfPi, t, k), trig_deriv(r, b, 0.0, t, k)};
}

Curve clifford_curve(const ManifoldModel& model) {
    const double a = std::sqrt(1.6), b = std::sqrt(0.4);
    const double r = 1.0 / std::sqrt(2.0);
    return Curve::from_jets(model, 0.0, 10.0, [=](const Jet& t) {
        return std::vector<Jet>{Jet(r) * cos(a * t), Jet(r) * sin(a * t),
                                Jet(r) * cos(b * t), Jet(r) * sin(b * t)};
    });
}

// A non-unit-speed trig curve in chart coordinates with known derivatives of
// every order. Used for sampled-vs-exact comparisons.
Vec wobble_exact(double t, int k) {
    Vec v(3);
    v[0] = trig_deriv(1.0, 1.3, 0.0, t, k);
    v[1] = trig_deriv(1.0, 0.7, kHalfPi, t, k);
    v[2] = (k == 0 ? 0.4 * t : (k == 1 ? 0.4 : 0.0)) + trig_deriv(0.2, 1.0, 0.0, t, k);
    return v;
}

Curve wobble_sampled(const ManifoldModel& model, double h, double span) {
    const int n = static_cast<int>(std::round(span / h)) + 1;
    std::vector<double> s(n);
    std::vector<Vec> pts(n);
    for (int i = 0; i < n; ++i) {
        s[i] = i * h;
        pts[i] = wobble_exact(i * h, 0);
    }
    return Curve::sampled(model, std::move(s), std::move(pts));
}

} // namespace

TEST_CASE("jet-defined curve reproduces trig derivatives through order 4") {
    const ManifoldModel& s3 = model_by_name("s3");
    const Curve c = clifford_curve(s3);
    CHECK(c.exact_order() == 4);
    CHECK(!c.is_sampled());
    for (double t : {0.0, 1.3, 4.9, 9.2}) {
        for (int k = 0; k <= 4; ++k) {
            const Vec got = c.derivative(t, k);
            const Vec want = clifford_exact(t, k);
            CHECK(norm(sub(got, want)) < 1e-12);
        }
    }
    // Every point of this curve sits on the unit sphere by construction.
    for (double t : {0.5, 5.5}) CHECK(std::abs(norm(c.point(t).coords) - 1.0) < 1e-14);
}

TEST_CASE("analytic curve returns the evaluator's own derivatives below the exact order") {
    const ManifoldModel& r3 = model_by_name("r3");
    auto eval = [](double t) {
        std::vector<Vec> out(3, Vec(3));
        for (int k = 0; k <= 2; ++k) {
            out[k][0] = trig_deriv(0.6, 1.0, 0.0, t, k);
            out[k][1] = trig_deriv(0.6, 1.1, kHalfPi, t, k);
            out[k][2] = (k == 0 ? 0.25 * t : (k == 1 ? 0.25 : 0.0));
        }
        return out;
    };
    const Curve c = Curve::analytic(r3, 0.0, 5.0, eval, 2);
    CHECK(c.exact_order() == 2);
    for (double t : {0.9, 2.5, 4.1}) {
        for (int k = 0; k <= 2; ++k) {
            // Below the exact order the evaluator output is passed through
            // untouched, so the match is bitwise.
            CHECK(norm(sub(c.derivative(t, k), eval(t)[k])) == 0.0);
        }
        // Above it, finite differences of the evaluator take over.
        Vec want3(3), want4(3);
        for (int i = 0; i < 2; ++i) {
            const double a = (i == 0) ? 1.0 : 1.1;
            const double ph = (i == 0) ? 0.0 : kHalfPi;
            want3[i] = trig_deriv(0.6, a, ph, t, 3);
            want4[i] = trig_deriv(0.6, a, ph, t, 4);
        }
        want3[2] = want4[2] = 0.0;
        CHECK(norm(sub(c.derivative(t, 3), want3)) < 1e-8);
        CHECK(norm(sub(c.derivative(t, 4), want4)) < 1e-8);
    }
}

TEST_CASE("analytic curve constructor validation") {
    const ManifoldModel& r3 = model_by_name("r3");
    auto eval = [](double t) { return std::vector<Vec>{{t, 0.0, 0.0}, {1.0, 0.0, 0.0}}; };
    CHECK_THROWS_AS(Curve::analytic(r3, 1.0, 1.0, eval, 1), argument_error);
    CHECK_THROWS_AS(Curve::analytic(r3, 2.0, 1.0, eval, 1), argument_error);
    CHECK_THROWS_AS(Curve::analytic(r3, 0.0, 1.0, eval, 0), argument_error);
}

TEST_CASE("sampled curve derivatives against exact values") {
    const ManifoldModel& r3 = model_by_name("r3");
    const Curve c = wobble_sampled(r3, 1e-3, 5.0);
    CHECK(c.is_sampled());
    CHECK(c.grid_spacing() == Catch::Approx(1e-3));

    // Interior points, both on and off the grid. Tolerances sit well above
    // the measured floors (orders 1-2 ~1e-10 on-grid / ~7e-9 off-grid,
    // order 3 ~5e-10, order 4 ~8e-8).
    for (double t : {0.5, 1.70042, 2.5, 3.14159, 4.4}) {
        CHECK(norm(sub(c.derivative(t, 0), wobble_exact(t, 0))) < 1e-12);
        CHECK(norm(sub(c.derivative(t, 1), wobble_exact(t, 1))) < 1e-8);
        CHECK(norm(sub(c.derivative(t, 2), wobble_exact(t, 2))) < 1e-7);
        CHECK(norm(sub(c.derivative(t, 3), wobble_exact(t, 3))) < 1e-7);
        CHECK(norm(sub(c.derivative(t, 4), wobble_exact(t, 4))) < 1e-5);
    }

    // Endpoints force one-sided stencils; order 2 loses about three digits
    // there (measured ~4e-7).
    for (double t : {0.0, 5.0}) {
        CHECK(norm(sub(c.derivative(t, 1), wobble_exact(t, 1))) < 1e-8);
        CHECK(norm(sub(c.derivative(t, 2), wobble_exact(t, 2))) < 1e-5);
    }
}

TEST_CASE("sampled curve constructor validation") {
    const ManifoldModel& r3 = model_by_name("r3");
    const ManifoldModel& s3 = model_by_name("s3");

    SECTION("too few samples") {
        std::vector<double> s = {0, 1, 2, 3, 4, 5, 6, 7};
        std::vector<Vec> p(8, Vec{0.0, 0.0, 0.0});
        for (int i = 0; i < 8; ++i) p[i][0] = s[i];
        CHECK_THROWS_AS(Curve::sampled(r3, s, p), argument_error);
    }
    SECTION("non-uniform parameters") {
        std::vector<double> s = {0, 1, 2, 3, 4, 5, 6, 7, 8.5};
        std::vector<Vec> p(9, Vec{0.0, 0.0, 0.0});
        CHECK_THROWS_AS(Curve::sampled(r3, s, p), argument_error);
    }
    SECTION("count mismatch and dimension mismatch") {
        std::vector<double> s = {0, 1, 2, 3, 4, 5, 6, 7, 8};
        CHECK_THROWS_AS(Curve::sampled(r3, s, std::vector<Vec>(8, Vec{0, 0, 0})),
                        argument_error);
        CHECK_THROWS_AS(Curve::sampled(r3, s, std::vector<Vec>(9, Vec{0, 0})),
                        argument_error);
    }
    SECTION("embedded points far off the sphere are rejected") {
        std::vector<double> s(9);
        std::vector<Vec> p(9, Vec{1.01, 0.0, 0.0, 0.0}); // |r - 1| = 0.01 > 1e-3
        for (int i = 0; i < 9; ++i) s[i] = i;
        CHECK_THROWS_AS(Curve::sampled(s3, s, p), argument_error);
    }
    SECTION("small sphere violations are snapped back") {
        std::vector<double> s(9);
        std::vector<Vec> p(9);
        for (int i = 0; i < 9; ++i) {
            s[i] = i * 0.1;
            const double t = s[i];
            p[i] = {std::cos(t), std::sin(t), 0.0, 0.0};
            for (double& c : p[i]) c *= 1.0 + 5e-4; // within the 1e-3 gate
        }
        const Curve c = Curve::sampled(s3, s, p);
        for (const auto& q : c.sample_points())
            CHECK(std::abs(norm(q) - 1.0) < 1e-14);
    }
}

TEST_CASE("parameter domain is enforced with a small slack") {
    const ManifoldModel& r3 = model_by_name("r3");
    const Curve c = wobble_sampled(r3, 1e-2, 5.0);
    // Slack is 1e-9 * max(1, span); span = 5 here.
    CHECK_NOTHROW(c.point(5.0 + 1e-9));
    CHECK_NOTHROW(c.point(0.0 - 1e-9));
    CHECK_THROWS_AS(c.point(5.0 + 1e-6), domain_error);
    CHECK_THROWS_AS(c.point(-1e-6), domain_error);
    CHECK_THROWS_AS(c.derivative(1.0, 5), argument_error);
    CHECK_THROWS_AS(c.derivative(1.0, -1), argument_error);
}

TEST_CASE("grid spacing is only defined for sampled curves") {
    const ManifoldModel& s3 = model_by_name("s3");
    const Curve c = clifford_curve(s3);
    CHECK_THROWS_AS(c.grid_spacing(), argument_error);
}

TEST_CASE("unit speed detection") {
    const ManifoldModel& s3 = model_by_name("s3");
    // The round metric makes (cos t, sin t, 0, 0) unit speed; scaling the
    // parameter by 1.7 breaks that.
    const Curve unit = Curve::from_jets(s3, 0.0, 6.0, [](const Jet& t) {
        return std::vector<Jet>{cos(t), sin(t), Jet(0.0), Jet(0.0)};
    });
    CHECK(unit.is_unit_speed());
    const Curve fast = Curve::from_jets(s3, 0.0, 3.0, [](const Jet& t) {
        const Jet u = 1.7 * t;
        return std::vector<Jet>{cos(u), sin(u), Jet(0.0), Jet(0.0)};
    });
    CHECK(!fast.is_unit_speed());
    CHECK(fast.speed(1.0) == Catch::Approx(1.7).margin(1e-12));
}

TEST_CASE("arc length reparametrization of an analytic curve") {
    const ManifoldModel& r3 = model_by_name("r3");
    auto eval = [](double t) {
        std::vector<Vec> out(3, Vec(3));
        for (int k = 0; k <= 2; ++k) {
            out[k][0] = trig_deriv(0.6, 1.0, 0.0, t, k);
            out[k][1] = trig_deriv(0.6, 1.1, kHalfPi, t, k);
            out[k][2] = (k == 0 ? 0.25 * t : (k == 1 ? 0.25 : 0.0));
        }
        return out;
    };
    const Curve c = Curve::analytic(r3, 0.0, 5.0, eval, 2);
    CHECK(!c.is_unit_speed());

    const Curve u = arc_length_reparametrize(c);
    CHECK(u.s_begin() == 0.0);
    // The new domain length is the metric arc length of the original curve.
    const double arc =
        adaptive_simpson([&c](double t) { return c.speed(t); }, 0.0, 5.0, 1e-12);
    CHECK(u.s_end() == Catch::Approx(arc).margin(1e-9));
    for (int i = 0; i <= 20; ++i) {
        const double s = u.s_end() * i / 20.0;
        CHECK(std::abs(u.speed(s) - 1.0) < 1e-10);
    }
    // The image is unchanged: endpoints map to endpoints.
    CHECK(norm(sub(u.point(0.0).coords, c.point(0.0).coords)) < 1e-12);
    CHECK(norm(sub(u.point(u.s_end()).coords, c.point(5.0).coords)) < 1e-8);

    // Reparametrizing a unit-speed curve is the identity up to roundoff.
    const Curve u2 = arc_length_reparametrize(u);
    CHECK(std::abs(u2.s_end() - u.s_end()) < 1e-9);
    for (int i = 0; i <= 10; ++i) {
        const double s = std::min(u.s_end(), u2.s_end()) * i / 10.0;
        CHECK(norm(sub(u.point(s).coords, u2.point(s).coords)) < 1e-10);
    }
}

TEST_CASE("arc length reparametrization of a sampled curve on the sphere") {
    const ManifoldModel& s3 = model_by_name("s3");
    // Great circle traversed at constant speed 1.7 over [0, 3].
    const int n = 2001;
    std::vector<double> s(n);
    std::vector<Vec> pts(n);
    for (int i = 0; i < n; ++i) {
        const double t = 3.0 * i / (n - 1);
        s[i] = t;
        pts[i] = {std::cos(1.7 * t), std::sin(1.7 * t), 0.0, 0.0};
    }
    const Curve c = Curve::sampled(s3, std::move(s), std::move(pts));
    CHECK(c.speed(1.0) == Catch::Approx(1.7).margin(1e-8));

    const Curve u = arc_length_reparametrize(c);
    CHECK(u.is_sampled());
    CHECK(u.sample_count() == static_cast<std::size_t>(n));
    CHECK(u.s_end() == Catch::Approx(3.0 * 1.7).margin(1e-8));
    // Resampled points must still be on the sphere.
    for (const auto& p : u.sample_points()) CHECK(std::abs(norm(p) - 1.0) < 1e-12);
    // At arc length s the point must be the circle at angle s.
    for (int i = 1; i < 20; ++i) {
        const double ss = u.s_end() * i / 20.0;
        const Vec want = {std::cos(ss), std::sin(ss), 0.0, 0.0};
        CHECK(norm(sub(u.point(ss).coords, want)) < 1e-7);
        CHECK(std::abs(u.speed(ss) - 1.0) < 1e-8);
    }
}

TEST_CASE("reparametrization rejects near-stationary sampled curves") {
    const ManifoldModel& r3 = model_by_name("r3");
    std::vector<double> s(9);
    std::vector<Vec> p(9, Vec{0.0, 0.0, 0.0}); // constant: speed 0 everywhere
    for (int i = 0; i < 9; ++i) s[i] = i * 0.1;
    const Curve c = Curve::sampled(r3, std::move(s), std::move(p));
    CHECK_THROWS_AS(arc_length_reparametrize(c), regularity_error);
}
