#include <catch2/catch_amalgamated.hpp>

#include <cmath>

#include "reeblab/errors.hpp"
#include "reeblab/quadrature.hpp"

using namespace reeblab;

TEST_CASE("polynomials integrate exactly") {
    const double v = adaptive_simpson([](double x) { return x * x; }, 0.0, 1.0);
    CHECK(v == Catch::Approx(1.0 / 3.0).margin(1e-12));
    const double c = adaptive_simpson([](double x) { return x * x * x; }, -1.0, 1.0);
    CHECK(c == Catch::Approx(0.0).margin(1e-14));
}

TEST_CASE("sine over a half period") {
    const double pi = std::acos(-1.0);
    const double v = adaptive_simpson([](double x) { return std::sin(x); }, 0.0, pi, 1e-12);
    CHECK(v == Catch::Approx(2.0).margin(1e-10));
}

TEST_CASE("adaptivity resolves a boundary layer") {
    // Integral of 1/sqrt(x + a) over [0, 1] = 2 (sqrt(1 + a) - sqrt(a)).
    const double a = 1e-4;
    const double exact = 2.0 * (std::sqrt(1.0 + a) - std::sqrt(a));
    const double v =
        adaptive_simpson([a](double x) { return 1.0 / std::sqrt(x + a); }, 0.0, 1.0, 1e-10);
    CHECK(v == Catch::Approx(exact).margin(1e-8));
}

TEST_CASE("degenerate and reversed intervals") {
    CHECK(adaptive_simpson([](double) { return 42.0; }, 2.0, 2.0) == 0.0);
    CHECK_THROWS_AS(adaptive_simpson([](double) { return 1.0; }, 1.0, 0.0), argument_error);
}

TEST_CASE("depth exhaustion reports a domain error") {
    // A discontinuity the refinement cannot settle at an absurd tolerance.
    auto step = [](double x) { return x < 0.123456789 ? 0.0 : 1.0; };
    CHECK_THROWS_AS(adaptive_simpson(step, 0.0, 1.0, 1e-16, 8), domain_error);
}
