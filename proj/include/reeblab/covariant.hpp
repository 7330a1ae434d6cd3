#pragma once

// Covariant differentiation along curves. A vector field along a curve is a
// callable s -> components (at the curve point for that s). The covariant
// derivative combines a finite-difference component derivative with the
// Christoffel correction:
//
//   (nabla_T V)^k = dV^k/ds + Gamma^k_{ij} T^i V^j
//
// The component derivative uses a 5-point stencil whose spacing is chosen
// per curve: 5e-3 for analytic curves, and roughly 2e-2 (snapped to grid
// strides) for sampled ones, where each field evaluation carries its own
// stencil noise that widening damps. Repeated nesting yields second and
// third covariant derivatives of the tangent; nesting is what the bitension
// machinery builds on.

#include <functional>

#include "reeblab/curve.hpp"
#include "reeblab/errors.hpp"
#include "reeblab/fd.hpp"
#include "reeblab/geometry.hpp"
#include "reeblab/linalg.hpp"
#include "reeblab/manifold.hpp"

namespace reeblab {

using VectorFieldAlongCurve = std::function<Vec(double)>;

// Stencil spacing for differentiating fields along this curve.
inline double field_fd_spacing(const Curve& c) {
    const double span = c.param_length();
    double spacing;
    if (c.is_sampled()) {
        const double h = c.grid_spacing();
        const long stride = std::max<long>(1, std::lround(sampled_high_spacing / h));
        spacing = stride * h;
    } else {
        spacing = analytic_fd_spacing;
    }
    // A 5-point stencil must fit inside the parameter interval.
    return std::min(spacing, span / 4.0);
}

inline TangentVector covariant_derivative_along(const Curve& c, const VectorFieldAlongCurve& field,
                                                double s) {
    const double spacing = field_fd_spacing(c);
    const Stencil st = bounded_stencil(s, 5, spacing, 1, c.s_begin(), c.s_end());

    Vec dv(c.model().ambient_dim, 0.0);
    for (std::size_t j = 0; j < st.nodes.size(); ++j) axpy(st.weights[j], field(st.nodes[j]), dv);

    const Point p = c.point(s);
    const Christoffel gamma = christoffel(c.model(), p);
    const Vec t = c.derivative(s, 1);
    axpy(1.0, gamma.contract(t, field(s)), dv);
    return TangentVector{p, std::move(dv)};
}

// First covariant derivative of the tangent, evaluated in closed form:
// V1^k = x''^k + Gamma^k_{ij} x'^i x'^j. On analytic curves this carries no
// stencil error at all, which is what makes geodesic residuals vanish to
// near machine precision.
inline Vec first_tangent_covariant(const Curve& c, double s) {
    const Vec d1 = c.derivative(s, 1);
    const Vec d2 = c.derivative(s, 2);
    const Christoffel gamma = christoffel(c.model(), c.point(s));
    return add(d2, gamma.contract(d1, d1));
}

// n-th covariant derivative of the tangent along the curve, n in {1, 2, 3}.
// n = 1 is closed-form; higher orders nest covariant_derivative_along.
inline TangentVector nth_covariant_derivative(const Curve& c, double s, int order) {
    if (order < 1 || order > 3)
        throw argument_error("nth_covariant_derivative: order must be 1, 2, or 3");
    if (order == 1) return TangentVector{c.point(s), first_tangent_covariant(c, s)};

    VectorFieldAlongCurve v1 = [&c](double t) { return first_tangent_covariant(c, t); };
    if (order == 2) return covariant_derivative_along(c, v1, s);

    VectorFieldAlongCurve v2 = [&c, &v1](double t) {
        return covariant_derivative_along(c, v1, t).components;
    };
    return covariant_derivative_along(c, v2, s);
}

} // namespace reeblab
