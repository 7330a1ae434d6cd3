#pragma once

// Nelder-Mead simplex minimizer, standard coefficients (reflect 1, expand 2,
// contract 1/2, shrink 1/2). Derivative-free on purpose: the objectives it
// sees are residuals threaded through an ODE integrator, smooth in value but
// with noisy numerical gradients. The best point never gets worse.

#include <algorithm>
#include <cmath>
#include <string>
#include <vector>

#include "reeblab/errors.hpp"
#include "reeblab/linalg.hpp"

namespace reeblab {

struct SimplexResult {
    Vec x;
    double f = 0.0;
    int iterations = 0;
    int evaluations = 0;
    bool converged = false;
    std::string reason;
};

template <typename F>
SimplexResult nelder_mead(F f, const Vec& x0, double step, double f_stop, double diameter_stop,
                          int max_iterations) {
    const std::size_t n = x0.size();
    if (n == 0) throw argument_error("nelder_mead: empty starting point");

    SimplexResult res;
    std::vector<Vec> xs(n + 1, x0);
    std::vector<double> fs(n + 1);
    for (std::size_t i = 1; i <= n; ++i) xs[i][i - 1] += step;
    for (std::size_t i = 0; i <= n; ++i) {
        fs[i] = f(xs[i]);
        ++res.evaluations;
    }

    auto order = [&]() {
        for (std::size_t i = 1; i <= n; ++i)
            for (std::size_t j = i; j > 0 && fs[j] < fs[j - 1]; --j) {
                std::swap(fs[j], fs[j - 1]);
                std::swap(xs[j], xs[j - 1]);
            }
    };
    auto diameter = [&]() {
        double d = 0.0;
        for (std::size_t i = 1; i <= n; ++i)
            for (std::size_t k = 0; k < n; ++k)
                d = std::max(d, std::abs(xs[i][k] - xs[0][k]));
        return d;
    };

    order();
    for (res.iterations = 0; res.iterations < max_iterations; ++res.iterations) {
        if (fs[0] <= f_stop) {
            res.converged = true;
            res.reason = "objective below threshold";
            break;
        }
        if (diameter() < diameter_stop) {
            res.converged = true;
            res.reason = "simplex diameter below threshold";
            break;
        }

        Vec centroid(n, 0.0);
        for (std::size_t i = 0; i < n; ++i) axpy(1.0 / n, xs[i], centroid);

        auto along = [&](double coef) {
            Vec x = centroid;
            for (std::size_t k = 0; k < n; ++k) x[k] += coef * (centroid[k] - xs[n][k]);
            return x;
        };

        const Vec xr = along(1.0);
        const double fr = f(xr);
        ++res.evaluations;

        if (fr < fs[0]) {
            const Vec xe = along(2.0);
            const double fe = f(xe);
            ++res.evaluations;
            if (fe < fr) {
                xs[n] = xe;
                fs[n] = fe;
            } else {
                xs[n] = xr;
                fs[n] = fr;
            }
        } else if (fr < fs[n - 1]) {
            xs[n] = xr;
            fs[n] = fr;
        } else {
            const bool outside = fr < fs[n];
            const Vec xc = along(outside ? 0.5 : -0.5);
            const double fc = f(xc);
            ++res.evaluations;
            if (fc < std::min(fr, fs[n])) {
                xs[n] = xc;
                fs[n] = fc;
            } else {
                // shrink toward the best point
                for (std::size_t i = 1; i <= n; ++i) {
                    for (std::size_t k = 0; k < n; ++k)
                        xs[i][k] = xs[0][k] + 0.5 * (xs[i][k] - xs[0][k]);
                    fs[i] = f(xs[i]);
                    ++res.evaluations;
                }
            }
        }
        order();
    }
    if (!res.converged) res.reason = "iteration cap reached";
    res.x = xs[0];
    res.f = fs[0];
    return res;
}

} // namespace reeblab
