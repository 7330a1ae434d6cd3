#pragma once

// Connection and curvature machinery. Christoffel symbols come in two
// routes: the model's analytic formula and a finite-difference route built
// from 4th-order central differences of the metric. Charts support both;
// embedded models carry analytic symbols only (there is no global chart to
// differentiate in), and asking for the FD route there is an argument error.
//
// Curvature sign convention:
//   R(X,Y)Z = nabla_X nabla_Y Z - nabla_Y nabla_X Z - nabla_[X,Y] Z
// which in components reads
//   R^k_{lij} = d_i Gamma^k_{jl} - d_j Gamma^k_{il}
//             + Gamma^k_{im} Gamma^m_{jl} - Gamma^k_{jm} Gamma^m_{il}
// with X^i Y^j Z^l contraction.

#include <cmath>

#include "reeblab/errors.hpp"
#include "reeblab/fd.hpp"
#include "reeblab/linalg.hpp"
#include "reeblab/manifold.hpp"

namespace reeblab {

// Step for metric finite differences. 4th-order central stencils at this
// step put both truncation and roundoff near 1e-12 for metrics of order one.
inline constexpr double metric_fd_step = 1e-4;

// d_k g at p by a 4th-order central difference along coordinate k.
inline Mat metric_partial(const ManifoldModel& model, const Point& p, std::size_t k,
                          double h = metric_fd_step) {
    auto shifted = [&](double t) {
        Point q = p;
        q[k] += t;
        return model.metric_fn(q);
    };
    const Mat m2 = shifted(-2.0 * h), m1 = shifted(-h), p1 = shifted(h), p2 = shifted(2.0 * h);
    Mat r(m1.rows(), m1.cols());
    for (std::size_t i = 0; i < r.data().size(); ++i)
        r.data()[i] = (m2.data()[i] - 8.0 * m1.data()[i] + 8.0 * p1.data()[i] - p2.data()[i]) /
                      (12.0 * h);
    return r;
}

// Christoffel symbols from metric derivatives:
// Gamma^k_{ij} = 1/2 g^{kl} (d_i g_{jl} + d_j g_{il} - d_l g_{ij})
inline Christoffel christoffel_fd(const ManifoldModel& model, const Point& p,
                                  double h = metric_fd_step) {
    if (model.representation != Representation::chart)
        throw argument_error("finite-difference Christoffel route requires a chart model");
    check_point(model, p);
    const std::size_t d = p.size();
    const Mat ginv = inverse(metric(model, p));
    std::vector<Mat> dg;
    dg.reserve(d);
    for (std::size_t k = 0; k < d; ++k) dg.push_back(metric_partial(model, p, k, h));

    Christoffel gamma(d);
    for (std::size_t k = 0; k < d; ++k)
        for (std::size_t i = 0; i < d; ++i)
            for (std::size_t j = i; j < d; ++j) {
                double s = 0.0;
                for (std::size_t l = 0; l < d; ++l)
                    s += ginv(k, l) * (dg[i](j, l) + dg[j](i, l) - dg[l](i, j));
                gamma(k, i, j) = 0.5 * s;
                gamma(k, j, i) = gamma(k, i, j);
            }
    return gamma;
}

// Preferred Christoffel route: analytic when the model provides it.
inline Christoffel christoffel(const ManifoldModel& model, const Point& p) {
    if (model.has_analytic_christoffel()) {
        check_point(model, p);
        return model.christoffel_fn(p);
    }
    return christoffel_fd(model, p);
}

// d_l Gamma^k_{ij}, analytic when available, else 4th-order central
// differences of the preferred Christoffel route.
inline ChristoffelDerivative christoffel_derivative(const ManifoldModel& model, const Point& p,
                                                    double h = metric_fd_step) {
    check_point(model, p);
    if (model.christoffel_derivative_fn) return model.christoffel_derivative_fn(p);

    const std::size_t d = p.size();
    ChristoffelDerivative dgamma(d);
    for (std::size_t l = 0; l < d; ++l) {
        auto shifted = [&](double t) {
            Point q = p;
            q[l] += t;
            return christoffel(model, q);
        };
        const Christoffel m2 = shifted(-2.0 * h), m1 = shifted(-h);
        const Christoffel p1 = shifted(h), p2 = shifted(2.0 * h);
        for (std::size_t k = 0; k < d; ++k)
            for (std::size_t i = 0; i < d; ++i)
                for (std::size_t j = 0; j < d; ++j)
                    dgamma(l, k, i, j) = (m2(k, i, j) - 8.0 * m1(k, i, j) + 8.0 * p1(k, i, j) -
                                          p2(k, i, j)) / (12.0 * h);
    }
    return dgamma;
}

// R(X,Y)Z at p for tangent vectors given by their components at p.
inline Vec curvature(const ManifoldModel& model, const Point& p, const Vec& x, const Vec& y,
                     const Vec& z) {
    check_point(model, p);
    const std::size_t d = p.size();
    if (x.size() != d || y.size() != d || z.size() != d)
        throw argument_error("curvature: vector dimension mismatch");
    const Christoffel gamma = christoffel(model, p);
    const ChristoffelDerivative dgamma = christoffel_derivative(model, p);

    Vec r(d, 0.0);
    for (std::size_t k = 0; k < d; ++k) {
        double s = 0.0;
        for (std::size_t i = 0; i < d; ++i) {
            if (x[i] == 0.0 && y[i] == 0.0) continue;
            for (std::size_t j = 0; j < d; ++j) {
                const double xy = x[i] * y[j];
                if (xy == 0.0) continue;
                for (std::size_t l = 0; l < d; ++l) {
                    if (z[l] == 0.0) continue;
                    double term = dgamma(i, k, j, l) - dgamma(j, k, i, l);
                    for (std::size_t m = 0; m < d; ++m)
                        term += gamma(k, i, m) * gamma(m, j, l) - gamma(k, j, m) * gamma(m, i, l);
                    s += term * xy * z[l];
                }
            }
        }
        r[k] = s;
    }
    return r;
}

inline Vec curvature(const ManifoldModel& model, const TangentVector& x, const TangentVector& y,
                     const TangentVector& z) {
    if (distance_inf(x.base, y.base) > 1e-12 || distance_inf(x.base, z.base) > 1e-12)
        throw precondition_error("curvature: tangent vectors must share a base point");
    return curvature(model, x.base, x.components, y.components, z.components);
}

} // namespace reeblab
