#pragma once

// Adaptive Simpson integration with the usual Richardson error estimate.
// Good to ~1e-12 on the smooth integrands this library produces (speeds and
// squared tension norms along curves).

#include <cmath>
#include <functional>

#include "reeblab/errors.hpp"

namespace reeblab {

namespace detail {

template <typename F>
double simpson_step(F& f, double a, double b, double fa, double fm, double fb) {
    return (b - a) / 6.0 * (fa + 4.0 * fm + fb);
}

template <typename F>
double adaptive_simpson_rec(F& f, double a, double b, double fa, double fm, double fb,
                            double whole, double tol, int depth) {
    const double m = 0.5 * (a + b);
    const double lm = 0.5 * (a + m), rm = 0.5 * (m + b);
    const double flm = f(lm), frm = f(rm);
    const double left = simpson_step(f, a, m, fa, flm, fm);
    const double right = simpson_step(f, m, b, fm, frm, fb);
    const double delta = left + right - whole;
    if (depth <= 0)
        throw domain_error("adaptive_simpson: recursion depth exhausted");
    if (std::abs(delta) <= 15.0 * tol)
        return left + right + delta / 15.0;
    return adaptive_simpson_rec(f, a, m, fa, flm, fm, left, tol / 2.0, depth - 1) +
           adaptive_simpson_rec(f, m, b, fm, frm, fb, right, tol / 2.0, depth - 1);
}

} // namespace detail

template <typename F>
double adaptive_simpson(F f, double a, double b, double tol = 1e-10, int max_depth = 40) {
    if (!(b > a)) {
        if (b == a) return 0.0;
        throw argument_error("adaptive_simpson: interval reversed");
    }
    const double fa = f(a), fb = f(b), fm = f(0.5 * (a + b));
    const double whole = detail::simpson_step(f, a, b, fa, fm, fb);
    return detail::adaptive_simpson_rec(f, a, b, fa, fm, fb, whole, tol, max_depth);
}

} // namespace reeblab
