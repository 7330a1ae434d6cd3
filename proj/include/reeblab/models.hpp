#pragma once

// The model zoo:
//   standard_sasakian_r(n) - R^(2n+1) with coordinates (x_1..x_n, y_1..y_n, z),
//       eta = (dz - sum_a y_a dx_a)/2, xi = 2 d/dz, metric
//       g = eta (x) eta + 1/4 sum_a (dx_a^2 + dy_a^2), analytic Christoffels.
//   hopf_sphere() - unit S^3 in R^4 with the round metric, xi(p) = J0 p the
//       Hopf field, embedded representation.
//   flat_control_model() - Euclidean R^3 with a constant almost-contact
//       triple; deliberately not Sasakian, used as a negative control.
//
// phi for the r-models is derived at runtime from the adapted orthonormal
// frame (X_a = 2 d/dy_a, X_{n+a} = 2(d/dx_a + y_a d/dz), xi) by conjugating
// the frame-space block matrix [[0,-I,0],[I,0,0],[0,0,0]]; the closed-form
// coordinate expression serves as an independent oracle in the tests.

#include <cmath>
#include <string>
#include <vector>

#include "reeblab/errors.hpp"
#include "reeblab/geometry.hpp"
#include "reeblab/linalg.hpp"
#include "reeblab/manifold.hpp"
#include "reeblab/rng.hpp"

namespace reeblab {

namespace detail {

// Adapted orthonormal frame of the r-model as matrix columns.
inline Mat r_model_frame(int n, const Point& p) {
    const int d = 2 * n + 1;
    Mat f(d, d);
    for (int a = 0; a < n; ++a) {
        // X_a = 2 d/dy_a
        f(n + a, a) = 2.0;
        // X_{n+a} = 2 (d/dx_a + y_a d/dz)
        f(a, n + a) = 2.0;
        f(2 * n, n + a) = 2.0 * p[n + a];
    }
    f(2 * n, 2 * n) = 2.0; // xi = 2 d/dz
    return f;
}

} // namespace detail

inline ManifoldModel standard_sasakian_r(int n) {
    if (n < 1) throw argument_error("standard_sasakian_r: n must be at least 1");
    ManifoldModel m;
    const int d = 2 * n + 1;
    m.name = "r" + std::to_string(d);
    m.dim = d;
    m.ambient_dim = d;
    m.representation = Representation::chart;
    m.tolerance_tier = 1e-8;

    m.metric_fn = [n, d](const Point& p) {
        // eta covector components: (-y_1/2, ..., -y_n/2, 0, ..., 0, 1/2)
        Vec eta(d, 0.0);
        for (int a = 0; a < n; ++a) eta[a] = -0.5 * p[n + a];
        eta[2 * n] = 0.5;
        Mat g(d, d);
        for (int i = 0; i < d; ++i)
            for (int j = 0; j < d; ++j)
                g(i, j) = eta[i] * eta[j];
        for (int a = 0; a < 2 * n; ++a) g(a, a) += 0.25;
        return g;
    };

    m.christoffel_fn = [n, d](const Point& p) {
        Christoffel gamma(d);
        const int z = 2 * n;
        auto set = [&](int k, int i, int j, double v) {
            gamma(k, i, j) = v;
            gamma(k, j, i) = v;
        };
        for (int a = 0; a < n; ++a) {
            for (int b = 0; b < n; ++b) {
                set(a, b, n + a, 0.5 * p[n + b]);
                // Gamma^{n+a}_{bc} = -(delta_ab y_c + delta_ac y_b)/2
                for (int c = b; c < n; ++c) {
                    double v = 0.0;
                    if (a == b) v -= 0.5 * p[n + c];
                    if (a == c) v -= 0.5 * p[n + b];
                    if (v != 0.0) set(n + a, b, c, v);
                }
                set(z, a, n + b, 0.5 * p[n + a] * p[n + b] - (a == b ? 0.5 : 0.0));
            }
            set(a, n + a, z, -0.5);
            set(n + a, a, z, 0.5);
            set(z, n + a, z, -0.5 * p[n + a]);
        }
        return gamma;
    };

    Vec xi(d, 0.0);
    xi[2 * n] = 2.0;
    m.contact.xi = [xi](const Point&) { return xi; };
    m.contact.eta = [n, d](const Point& p) {
        Vec eta(d, 0.0);
        for (int a = 0; a < n; ++a) eta[a] = -0.5 * p[n + a];
        eta[2 * n] = 0.5;
        return eta;
    };
    m.contact.phi = [n, d](const Point& p) {
        const Mat f = detail::r_model_frame(n, p);
        Mat phi_frame(d, d);
        for (int a = 0; a < n; ++a) {
            phi_frame(n + a, a) = 1.0;  // phi X_a = X_{n+a}
            phi_frame(a, n + a) = -1.0; // phi X_{n+a} = -X_a
        }
        return matmul(matmul(f, phi_frame), inverse(f));
    };
    return m;
}

// The rotation J0 generating the Hopf flow: (p1,p2,p3,p4) -> (-p2,p1,-p4,p3).
inline Mat hopf_rotation() {
    Mat j(4, 4);
    j(0, 1) = -1.0;
    j(1, 0) = 1.0;
    j(2, 3) = -1.0;
    j(3, 2) = 1.0;
    return j;
}

inline ManifoldModel hopf_sphere() {
    ManifoldModel m;
    m.name = "s3";
    m.dim = 3;
    m.ambient_dim = 4;
    m.representation = Representation::embedded;
    m.tolerance_tier = 1e-8;

    m.metric_fn = [](const Point&) { return Mat::identity(4); };
    m.in_domain = [](const Point& p) {
        double n2 = 0.0;
        for (double c : p.coords) n2 += c * c;
        return std::abs(std::sqrt(n2) - 1.0) <= 1e-9;
    };

    // Gauss formula for the unit sphere: the intrinsic connection in ambient
    // coordinates is Gamma^k_{ij}(p) = delta_{ij} p^k, with the exactly known
    // derivative d_l Gamma^k_{ij} = delta_{ij} delta_{kl}.
    m.christoffel_fn = [](const Point& p) {
        Christoffel gamma(4);
        for (int k = 0; k < 4; ++k)
            for (int i = 0; i < 4; ++i)
                gamma(k, i, i) = p[k];
        return gamma;
    };
    m.christoffel_derivative_fn = [](const Point&) {
        ChristoffelDerivative dg(4);
        for (int l = 0; l < 4; ++l)
            for (int i = 0; i < 4; ++i)
                dg(l, l, i, i) = 1.0;
        return dg;
    };

    const Mat j0 = hopf_rotation();
    m.contact.xi = [j0](const Point& p) { return matvec(j0, p.coords); };
    m.contact.eta = [j0](const Point& p) { return matvec(j0, p.coords); };
    m.contact.phi = [j0](const Point& p) {
        // phi X = -(J0 X + eta(X) p): J0 plus the rank-one correction that
        // keeps phi tangent, with the overall sign fixed by compatibility
        // with d eta under the half-convention.
        const Vec xi = matvec(j0, p.coords);
        return mat_scale(-1.0, mat_add(j0, outer(p.coords, xi)));
    };
    return m;
}

inline ManifoldModel flat_control_model() {
    ManifoldModel m;
    m.name = "flat-control";
    m.dim = 3;
    m.ambient_dim = 3;
    m.representation = Representation::chart;
    m.tolerance_tier = 1e-8;

    m.metric_fn = [](const Point&) { return Mat::identity(3); };
    m.christoffel_fn = [](const Point&) { return Christoffel(3); };
    m.christoffel_derivative_fn = [](const Point&) { return ChristoffelDerivative(3); };

    m.contact.eta = [](const Point&) { return Vec{0.0, 0.0, 1.0}; };
    m.contact.xi = [](const Point&) { return Vec{0.0, 0.0, 1.0}; };
    m.contact.phi = [](const Point&) {
        Mat phi(3, 3);
        phi(0, 1) = -1.0;
        phi(1, 0) = 1.0;
        return phi;
    };
    return m;
}

inline ManifoldModel model_by_name(const std::string& name) {
    if (name == "r3") return standard_sasakian_r(1);
    if (name == "r5") return standard_sasakian_r(2);
    if (name == "s3") return hopf_sphere();
    if (name == "flat-control") return flat_control_model();
    throw argument_error("unknown model '" + name + "' (expected r3, r5, s3, or flat-control)");
}

// Canonical base point used by deterministic scans and frame constructions.
inline Point canonical_point(const ManifoldModel& model) {
    if (model.representation == Representation::embedded) {
        Vec c(model.ambient_dim, 0.0);
        c[0] = 1.0;
        return Point{c};
    }
    return Point{Vec(model.ambient_dim, 0.0)};
}

// Random point in the model: coordinates uniform in [-2, 2] for charts,
// normalized Gaussian direction for embedded spheres.
inline Point sample_point(const ManifoldModel& model, Rng& rng) {
    Vec c(model.ambient_dim);
    if (model.representation == Representation::embedded) {
        double n = 0.0;
        do {
            for (double& v : c) v = rng.gaussian();
            n = norm(c);
        } while (n < 1e-6);
        for (double& v : c) v /= n;
    } else {
        for (double& v : c) v = rng.uniform(-2.0, 2.0);
    }
    return Point{c};
}

// Project ambient components onto the tangent space of the representation.
// For charts this is the identity; for the embedded sphere it removes the
// radial part.
inline Vec tangent_project(const ManifoldModel& model, const Point& p, const Vec& v) {
    if (model.representation != Representation::embedded) return v;
    Vec r = v;
    axpy(-dot(p.coords, v), p.coords, r);
    return r;
}

inline TangentVector random_unit_tangent(const ManifoldModel& model, const Point& p, Rng& rng) {
    const Mat g = metric(model, p);
    Vec v(model.ambient_dim);
    double n = 0.0;
    do {
        for (double& c : v) c = rng.gaussian();
        v = tangent_project(model, p, v);
        n = gnorm(g, v);
    } while (n < 1e-6);
    return TangentVector{p, scale(1.0 / n, v)};
}

// Random g-unit tangent vector orthogonal to the Reeb field.
inline TangentVector random_horizontal_unit(const ManifoldModel& model, const Point& p, Rng& rng) {
    const Mat g = metric(model, p);
    const Vec xi = model.contact.xi(p);
    const double xi_sq = inner(g, xi, xi);
    Vec v(model.ambient_dim);
    double n = 0.0;
    do {
        for (double& c : v) c = rng.gaussian();
        v = tangent_project(model, p, v);
        axpy(-inner(g, v, xi) / xi_sq, xi, v);
        n = gnorm(g, v);
    } while (n < 1e-6);
    return TangentVector{p, scale(1.0 / n, v)};
}

// Extend `seed` (possibly empty) to a full g-orthonormal tangent basis by
// Gram-Schmidt over the projected coordinate directions, taken in a fixed
// order so the completion is deterministic.
inline std::vector<Vec> complete_orthonormal(const ManifoldModel& model, const Point& p,
                                             std::vector<Vec> seed) {
    const Mat g = metric(model, p);
    const std::size_t target = static_cast<std::size_t>(model.dim);
    for (auto& v : seed) {
        const double n = gnorm(g, v);
        if (n < 1e-12) throw argument_error("complete_orthonormal: degenerate seed vector");
        v = scale(1.0 / n, v);
    }
    for (int c = 0; c < model.ambient_dim && seed.size() < target; ++c) {
        Vec v(model.ambient_dim, 0.0);
        v[c] = 1.0;
        v = tangent_project(model, p, v);
        for (const auto& u : seed) axpy(-inner(g, v, u), u, v);
        const double n = gnorm(g, v);
        if (n > 1e-8) seed.push_back(scale(1.0 / n, v));
    }
    if (seed.size() < target)
        throw precondition_error("complete_orthonormal: could not complete the basis");
    return seed;
}

} // namespace reeblab
