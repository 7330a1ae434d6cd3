#include <catch2/catch_amalgamated.hpp>

#include <cmath>

#include "reeblab/jet.hpp"

using namespace reeblab;

namespace {
constexpr double t0 = 0.7;
}

TEST_CASE("variable jet carries value and unit slope") {
    const Jet t = Jet::variable(t0);
    CHECK(t.value() == t0);
    CHECK(t.derivative(1) == 1.0);
    CHECK(t.derivative(2) == 0.0);
}

TEST_CASE("polynomial arithmetic matches closed-form derivatives") {
    const Jet t = Jet::variable(t0);
    // f = t^3 - 2 t + 5: f' = 3t^2 - 2, f'' = 6t, f''' = 6, f'''' = 0.
    const Jet f = t * t * t - 2.0 * t + 5.0;
    CHECK(f.value() == Catch::Approx(t0 * t0 * t0 - 2.0 * t0 + 5.0));
    CHECK(f.derivative(1) == Catch::Approx(3.0 * t0 * t0 - 2.0));
    CHECK(f.derivative(2) == Catch::Approx(6.0 * t0));
    CHECK(f.derivative(3) == Catch::Approx(6.0));
    CHECK(f.derivative(4) == 0.0);
}

TEST_CASE("division matches the quotient rule") {
    const Jet t = Jet::variable(t0);
    // f = 1 / (1 + t^2): f' = -2t / (1+t^2)^2.
    const Jet f = 1.0 / (1.0 + t * t);
    const double den = 1.0 + t0 * t0;
    CHECK(f.value() == Catch::Approx(1.0 / den));
    CHECK(f.derivative(1) == Catch::Approx(-2.0 * t0 / (den * den)).margin(1e-14));
}

TEST_CASE("sin and cos satisfy the fourth-order identities") {
    const Jet t = Jet::variable(t0);
    const double a = 1.3;
    const Jet s = sin(a * t);
    const Jet c = cos(a * t);
    // d^k/dt^k sin(a t) cycles with factor a^k.
    CHECK(s.value() == Catch::Approx(std::sin(a * t0)));
    CHECK(s.derivative(1) == Catch::Approx(a * std::cos(a * t0)));
    CHECK(s.derivative(2) == Catch::Approx(-a * a * std::sin(a * t0)));
    CHECK(s.derivative(3) == Catch::Approx(-a * a * a * std::cos(a * t0)));
    CHECK(s.derivative(4) == Catch::Approx(a * a * a * a * std::sin(a * t0)));
    CHECK(c.derivative(2) == Catch::Approx(-a * a * std::cos(a * t0)));
    // Pythagorean identity holds through order 4: s^2 + c^2 = 1.
    const Jet unit = s * s + c * c;
    CHECK(unit.value() == Catch::Approx(1.0));
    for (int k = 1; k <= 4; ++k) CHECK(unit.derivative(k) == Catch::Approx(0.0).margin(1e-12));
}

TEST_CASE("exp reproduces itself under differentiation") {
    const Jet t = Jet::variable(t0);
    const Jet e = exp(0.5 * t);
    for (int k = 0; k <= 4; ++k)
        CHECK(e.derivative(k) == Catch::Approx(std::pow(0.5, k) * std::exp(0.5 * t0)));
}

TEST_CASE("sqrt squares back to its argument") {
    const Jet t = Jet::variable(t0);
    const Jet u = 1.0 + t * t;
    const Jet r = sqrt(u);
    const Jet back = r * r;
    for (int k = 0; k <= 4; ++k)
        CHECK(back.derivative(k) == Catch::Approx(u.derivative(k)).margin(1e-12));
    // d/dt sqrt(1 + t^2) = t / sqrt(1 + t^2).
    CHECK(r.derivative(1) == Catch::Approx(t0 / std::sqrt(1.0 + t0 * t0)));
}

TEST_CASE("product rule at order four") {
    const Jet t = Jet::variable(t0);
    // d^4/dt^4 [sin t * cos t] = d^4/dt^4 [sin(2t)/2] = 8 sin(2 t0).
    const Jet f = sin(t) * cos(t);
    CHECK(f.derivative(4) == Catch::Approx(8.0 * std::sin(2.0 * t0)).margin(1e-12));
}
