#include <catch2/catch_amalgamated.hpp>

#include <cmath>

#include "reeblab/errors.hpp"
#include "reeblab/geometry.hpp"
#include "reeblab/models.hpp"
#include "reeblab/rng.hpp"

using namespace reeblab;

namespace {

// Test-local chart fixture: the round 3-sphere of radius 1 in stereographic
// coordinates, metric g_ij = 4 delta_ij / (1 + |x|^2)^2. Only the metric is
// provided, so every downstream quantity exercises the finite-difference
// route. Closed forms for the Christoffels are classical:
//   Gamma^k_ij = -2 (delta_ik x_j + delta_jk x_i - delta_ij x_k) / (1 + |x|^2).
ManifoldModel stereographic_sphere() {
    ManifoldModel m;
    m.name = "stereo3";
    m.dim = 3;
    m.ambient_dim = 3;
    m.representation = Representation::chart;
    m.metric_fn = [](const Point& p) {
        double r2 = 0.0;
        for (double c : p.coords) r2 += c * c;
        const double f = 4.0 / ((1.0 + r2) * (1.0 + r2));
        Mat g = Mat::identity(3);
        for (int i = 0; i < 3; ++i) g(i, i) = f;
        return g;
    };
    m.in_domain = [](const Point&) { return true; };
    m.tolerance_tier = 1e-5;
    return m;
}

Christoffel stereo_christoffel_exact(const Point& p) {
    double r2 = 0.0;
    for (double c : p.coords) r2 += c * c;
    const double f = -2.0 / (1.0 + r2);
    Christoffel gamma(3);
    for (int k = 0; k < 3; ++k)
        for (int i = 0; i < 3; ++i)
            for (int j = 0; j < 3; ++j) {
                const double dik = i == k ? 1.0 : 0.0;
                const double djk = j == k ? 1.0 : 0.0;
                const double dij = i == j ? 1.0 : 0.0;
                gamma(k, i, j) = f * (dik * p[j] + djk * p[i] - dij * p[k]);
            }
    return gamma;
}

} // namespace

TEST_CASE("r3 Christoffel symbols at the origin match hand values") {
    const ManifoldModel m = standard_sasakian_r(1);
    const Point origin{Vec{0.0, 0.0, 0.0}};
    const Christoffel g = christoffel(m, origin);

    CHECK(g(0, 1, 2) == Catch::Approx(-0.5));
    CHECK(g(0, 2, 1) == Catch::Approx(-0.5));
    CHECK(g(1, 0, 2) == Catch::Approx(0.5));
    CHECK(g(1, 2, 0) == Catch::Approx(0.5));
    CHECK(g(2, 0, 1) == Catch::Approx(-0.5));
    CHECK(g(2, 1, 0) == Catch::Approx(-0.5));
    // Everything else vanishes at the origin.
    double off = 0.0;
    for (int k = 0; k < 3; ++k)
        for (int i = 0; i < 3; ++i)
            for (int j = 0; j < 3; ++j) {
                const bool named = (k == 0 && i != k && j != k && i != j) ||
                                   (k == 1 && ((i == 0 && j == 2) || (i == 2 && j == 0))) ||
                                   (k == 2 && ((i == 0 && j == 1) || (i == 1 && j == 0)));
                if (!named) off = std::max(off, std::abs(g(k, i, j)));
            }
    CHECK(off < 1e-12);
}

TEST_CASE("finite-difference Christoffels agree with the analytic ones") {
    for (int n : {1, 2}) {
        const ManifoldModel m = standard_sasakian_r(n);
        Rng rng(31 + n);
        for (int trial = 0; trial < 5; ++trial) {
            const Point p = sample_point(m, rng);
            const Christoffel exact = christoffel(m, p);
            const Christoffel fd = christoffel_fd(m, p);
            double worst = 0.0;
            for (int k = 0; k < m.dim; ++k)
                for (int i = 0; i < m.dim; ++i)
                    for (int j = 0; j < m.dim; ++j)
                        worst = std::max(worst, std::abs(exact(k, i, j) - fd(k, i, j)));
            CHECK(worst < 1e-9);
        }
    }
}

TEST_CASE("Christoffel derivative spot check on r3") {
    const ManifoldModel m = standard_sasakian_r(1);
    const Point p{Vec{0.3, -0.4, 0.2}};
    const ChristoffelDerivative dg = christoffel_derivative(m, p);
    // Gamma^z_xy = y^2/2 - 1/2, so its y-derivative is y = -0.4.
    CHECK(dg(1, 2, 0, 1) == Catch::Approx(-0.4).margin(1e-9));
    // Gamma^x_xy = y/2, so its y-derivative is 1/2.
    CHECK(dg(1, 0, 0, 1) == Catch::Approx(0.5).margin(1e-9));
}

TEST_CASE("stereographic fixture: FD route recovers the classical symbols") {
    const ManifoldModel m = stereographic_sphere();
    REQUIRE_FALSE(m.has_analytic_christoffel());
    Rng rng(5);
    for (int trial = 0; trial < 4; ++trial) {
        Vec c(3);
        for (double& v : c) v = rng.uniform(-0.8, 0.8);
        const Point p{c};
        const Christoffel fd = christoffel(m, p); // falls back to the FD route
        const Christoffel exact = stereo_christoffel_exact(p);
        double worst = 0.0;
        for (int k = 0; k < 3; ++k)
            for (int i = 0; i < 3; ++i)
                for (int j = 0; j < 3; ++j)
                    worst = std::max(worst, std::abs(fd(k, i, j) - exact(k, i, j)));
        CHECK(worst < 1e-8);
    }
}

TEST_CASE("stereographic fixture: curvature is constant and equal to one") {
    // R(X, Y)Z = g(Y, Z) X - g(X, Z) Y on the unit sphere, computed here
    // entirely through finite differences of the metric.
    const ManifoldModel m = stereographic_sphere();
    Rng rng(11);
    for (int trial = 0; trial < 3; ++trial) {
        Vec c(3);
        for (double& v : c) v = rng.uniform(-0.6, 0.6);
        const Point p{c};
        const Mat g = metric(m, p);
        Vec x(3), y(3), z(3);
        for (double& v : x) v = rng.gaussian();
        for (double& v : y) v = rng.gaussian();
        for (double& v : z) v = rng.gaussian();
        const Vec r = curvature(m, p, x, y, z);
        Vec expect = scale(inner(g, y, z), x);
        axpy(-inner(g, x, z), y, expect);
        for (int i = 0; i < 3; ++i) CHECK(r[i] == Catch::Approx(expect[i]).margin(2e-5));
    }
}

TEST_CASE("embedded sphere: analytic curvature matches constant curvature one") {
    const ManifoldModel m = hopf_sphere();
    Rng rng(17);
    for (int trial = 0; trial < 5; ++trial) {
        const Point p = sample_point(m, rng);
        const Mat g = metric(m, p);
        const std::vector<Vec> basis = complete_orthonormal(m, p, {});
        const Vec& x = basis[0];
        const Vec& y = basis[1];
        const Vec& z = basis[2];
        const Vec r = curvature(m, p, x, y, z);
        Vec expect = scale(inner(g, y, z), x);
        axpy(-inner(g, x, z), y, expect);
        for (int i = 0; i < 4; ++i) CHECK(r[i] == Catch::Approx(expect[i]).margin(1e-10));
    }
}

TEST_CASE("FD Christoffel route refuses embedded models") {
    const ManifoldModel m = hopf_sphere();
    CHECK_THROWS_AS(christoffel_fd(m, canonical_point(m)), argument_error);
}

TEST_CASE("curvature with tangent vectors requires a shared base point") {
    const ManifoldModel m = standard_sasakian_r(1);
    const TangentVector a{Point{Vec{0.0, 0.0, 0.0}}, Vec{1.0, 0.0, 0.0}};
    const TangentVector b{Point{Vec{0.5, 0.0, 0.0}}, Vec{0.0, 1.0, 0.0}};
    const TangentVector c{Point{Vec{0.0, 0.0, 0.0}}, Vec{0.0, 0.0, 1.0}};
    CHECK_THROWS_AS(curvature(m, a, b, c), precondition_error);
}
