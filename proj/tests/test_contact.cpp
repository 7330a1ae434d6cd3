#include <catch2/catch_amalgamated.hpp>

#include <cmath>

#include "reeblab/contact.hpp"
#include "reeblab/models.hpp"
#include "reeblab/rng.hpp"

using namespace reeblab;

TEST_CASE("Sasakian models pass every structure check at their tier") {
    for (const char* name : {"r3", "r5", "s3"}) {
        const ManifoldModel m = model_by_name(name);
        Rng rng(101);
        for (int trial = 0; trial < 10; ++trial) {
            const Point p = sample_point(m, rng);
            CAPTURE(name, trial);

            const CheckResult ac = verify_almost_contact(m, p);
            CHECK(ac.pass);
            CHECK(ac.worst() < 1e-8);

            const CheckResult mc = verify_metric_compatibility(m, p, 10, rng);
            CHECK(mc.pass);
            CHECK(mc.worst() < 1e-8);

            const CheckResult sa = verify_sasakian(m, p, 10, rng);
            CHECK(sa.pass);
            CHECK(sa.worst() < 1e-8);

            const CheckResult nd = contact_nondegeneracy(m, p);
            CHECK(nd.pass);
            CHECK(nd.worst() > 0.5); // |det| is close to 1 on these models

            const TangentVector x = random_horizontal_unit(m, p, rng);
            const CheckResult reeb = check_reeb_curvature_identity(m, p, x.components);
            CHECK(reeb.pass);
            CHECK(reeb.worst() < 1e-8);
        }
    }
}

TEST_CASE("exterior derivative uses the half convention") {
    // On r3, eta = (-y/2, 0, 1/2). With constant extensions X = d/dx and
    // Y = d/dy: d eta(X, Y) = (X(eta(Y)) - Y(eta(X))) / 2 = (0 - (-1/2)) / 2.
    const ManifoldModel m = standard_sasakian_r(1);
    Rng rng(7);
    for (int trial = 0; trial < 3; ++trial) {
        const Point p = sample_point(m, rng);
        const double d = d_eta(m, p, Vec{1.0, 0.0, 0.0}, Vec{0.0, 1.0, 0.0});
        CHECK(d == Catch::Approx(0.25).margin(1e-9));
        // Antisymmetry.
        const double dr = d_eta(m, p, Vec{0.0, 1.0, 0.0}, Vec{1.0, 0.0, 0.0});
        CHECK(dr == Catch::Approx(-0.25).margin(1e-9));
    }
}

TEST_CASE("compatibility ties d eta to the metric pairing with phi") {
    // d eta(X, Y) = g(X, phi Y) on every shipped Sasakian model.
    for (const char* name : {"r3", "s3"}) {
        const ManifoldModel m = model_by_name(name);
        Rng rng(23);
        const Point p = sample_point(m, rng);
        const Mat g = metric(m, p);
        const Mat phi = m.contact.phi(p);
        for (int trial = 0; trial < 5; ++trial) {
            const TangentVector x = random_unit_tangent(m, p, rng);
            const TangentVector y = random_unit_tangent(m, p, rng);
            const double lhs = d_eta(m, p, x.components, y.components);
            const double rhs = inner(g, x.components, matvec(phi, y.components));
            CHECK(lhs == Catch::Approx(rhs).margin(1e-8));
        }
    }
}

TEST_CASE("flat control model fails exactly the Sasakian axioms") {
    const ManifoldModel m = flat_control_model();
    Rng rng(13);
    const Point p = sample_point(m, rng);

    // The rotation phi with constant eta is a perfectly fine almost-contact
    // structure; what fails is its interaction with the flat metric.
    CHECK(verify_almost_contact(m, p).pass);

    const CheckResult mc = verify_metric_compatibility(m, p, 10, rng);
    CHECK_FALSE(mc.pass);

    const CheckResult sa = verify_sasakian(m, p, 20, rng);
    CHECK_FALSE(sa.pass);
    CHECK(sa.worst() >= 0.5);

    // d eta = 0 for a constant form, so the kernel pairing is degenerate.
    const CheckResult nd = contact_nondegeneracy(m, p);
    CHECK_FALSE(nd.pass);
    CHECK(nd.worst() < 1e-10);

    // Flat space has R = 0, so R(X, xi)X + xi = xi exactly.
    const Vec e1{1.0, 0.0, 0.0};
    const CheckResult reeb = check_reeb_curvature_identity(m, p, e1);
    CHECK_FALSE(reeb.pass);
    CHECK(reeb.worst() == Catch::Approx(1.0).margin(1e-12));
}

TEST_CASE("Reeb curvature identity enforces its preconditions") {
    const ManifoldModel m = model_by_name("r3");
    const Point p = canonical_point(m);
    // Not unit length.
    CHECK_THROWS_AS(check_reeb_curvature_identity(m, p, Vec{4.0, 0.0, 0.0}),
                    precondition_error);
    // Unit length but parallel to xi = (0, 0, 2) (g-norm 1).
    CHECK_THROWS_AS(check_reeb_curvature_identity(m, p, Vec{0.0, 0.0, 2.0}),
                    precondition_error);
}

TEST_CASE("check results expose labelled residuals") {
    const ManifoldModel m = model_by_name("r3");
    const CheckResult r = verify_almost_contact(m, canonical_point(m));
    REQUIRE(r.labels.size() == r.residuals.size());
    REQUIRE(r.labels.size() == 4);
    CHECK(r.labels[0] == "eta_xi_minus_one");
    CHECK(r.check_name == "almost_contact");
    CHECK(r.worst() >= 0.0);
}
