#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <vector>

#include "reeblab/errors.hpp"
#include "reeblab/fd.hpp"

using namespace reeblab;

TEST_CASE("weights reproduce the classical central stencils") {
    const std::vector<double> nodes{-2.0, -1.0, 0.0, 1.0, 2.0};

    // 5-point first derivative: (1, -8, 0, 8, -1) / 12.
    const std::vector<double> w1 = fd_weights(0.0, nodes, 1);
    const std::vector<double> ref1{1.0 / 12, -8.0 / 12, 0.0, 8.0 / 12, -1.0 / 12};
    for (int i = 0; i < 5; ++i) CHECK(w1[i] == Catch::Approx(ref1[i]).margin(1e-14));

    // 5-point second derivative: (-1, 16, -30, 16, -1) / 12.
    const std::vector<double> w2 = fd_weights(0.0, nodes, 2);
    const std::vector<double> ref2{-1.0 / 12, 16.0 / 12, -30.0 / 12, 16.0 / 12, -1.0 / 12};
    for (int i = 0; i < 5; ++i) CHECK(w2[i] == Catch::Approx(ref2[i]).margin(1e-14));
}

TEST_CASE("weights are exact on polynomials up to the stencil degree") {
    // Deliberately non-uniform nodes.
    const std::vector<double> nodes{-0.9, -0.2, 0.15, 0.4, 1.1, 1.7};
    const double z = 0.3;
    for (int m = 1; m <= 3; ++m) {
        const std::vector<double> w = fd_weights(z, nodes, m);
        for (int deg = 0; deg <= 5; ++deg) {
            double applied = 0.0;
            for (std::size_t i = 0; i < nodes.size(); ++i)
                applied += w[i] * std::pow(nodes[i], deg);
            // m-th derivative of t^deg at z.
            double exact = 0.0;
            if (deg >= m) {
                exact = 1.0;
                for (int k = 0; k < m; ++k) exact *= deg - k;
                exact *= std::pow(z, deg - m);
            }
            CHECK(applied == Catch::Approx(exact).margin(1e-10));
        }
    }
}

TEST_CASE("central nodes are symmetric") {
    const std::vector<double> n = central_nodes(2, 0.5);
    REQUIRE(n.size() == 5);
    CHECK(n[0] == -1.0);
    CHECK(n[2] == 0.0);
    CHECK(n[4] == 1.0);
}

TEST_CASE("bounded stencil slides inward near interval ends") {
    // Centered when there is room.
    Stencil mid = bounded_stencil(0.5, 5, 0.1, 1, 0.0, 1.0);
    CHECK(mid.nodes.front() == Catch::Approx(0.3));
    CHECK(mid.nodes.back() == Catch::Approx(0.7));

    // Near the left end every node must stay inside [lo, hi].
    Stencil left = bounded_stencil(0.05, 5, 0.1, 1, 0.0, 1.0);
    for (double t : left.nodes) {
        CHECK(t >= 0.0);
        CHECK(t <= 1.0);
    }
    // The stencil still differentiates exactly at the requested point:
    // d/dt (t^2) = 2t at t = 0.05.
    const double d = left.apply([](double t) { return t * t; });
    CHECK(d == Catch::Approx(0.1).margin(1e-10));

    Stencil right = bounded_stencil(0.98, 5, 0.1, 2, 0.0, 1.0);
    for (double t : right.nodes) CHECK(t <= 1.0);
    const double d2 = right.apply([](double t) { return t * t * t; });
    CHECK(d2 == Catch::Approx(6.0 * 0.98).margin(1e-9));
}

TEST_CASE("bounded stencil rejects intervals shorter than its span") {
    CHECK_THROWS_AS(bounded_stencil(0.5, 5, 0.5, 1, 0.0, 1.0), domain_error);
}
