#pragma once

// Verification of the almost-contact axioms, metric compatibility, the
// Sasakian tensor identity, and the curvature identities involving the Reeb
// field. Every check returns a CheckResult with named residuals so reports
// can say which identity failed and by how much.
//
// Convention used throughout (and documented in the README): the exterior
// derivative of a 1-form carries the 1/2 factor,
//   d eta(X, Y) = 1/2 ( X(eta(Y)) - Y(eta(X)) - eta([X,Y]) ),
// and test vectors are extended constantly in coordinates, so the bracket
// term vanishes and each directional term is a plain 4th-order finite
// difference along a straight coordinate segment.

#include <cmath>
#include <string>
#include <type_traits>
#include <utility>
#include <vector>

#include "reeblab/errors.hpp"
#include "reeblab/geometry.hpp"
#include "reeblab/linalg.hpp"
#include "reeblab/manifold.hpp"
#include "reeblab/models.hpp"
#include "reeblab/rng.hpp"

namespace reeblab {

inline constexpr double contact_fd_step = 1e-4;

struct CheckResult {
    std::string check_name;
    Point point;
    std::vector<std::string> labels;
    std::vector<double> residuals;
    double tolerance = 0.0;
    bool pass = false;

    double worst() const {
        double w = 0.0;
        for (double r : residuals) w = std::max(w, std::abs(r));
        return w;
    }
};

inline CheckResult make_result(std::string name, const Point& p, double tol,
                               std::vector<std::pair<std::string, double>> entries) {
    CheckResult r;
    r.check_name = std::move(name);
    r.point = p;
    r.tolerance = tol;
    for (auto& e : entries) {
        r.labels.push_back(std::move(e.first));
        r.residuals.push_back(e.second);
    }
    r.pass = r.worst() <= tol;
    return r;
}

namespace detail {

// 4th-order central difference of f(p + t X) at t = 0.
template <typename F>
auto directional_fd(F f, const Point& p, const Vec& x, double h = contact_fd_step)
    -> decltype(f(p)) {
    auto at = [&](double t) {
        Point q = p;
        axpy(t, x, q.coords);
        return f(q);
    };
    auto m2 = at(-2.0 * h), m1 = at(-h), p1 = at(h), p2 = at(2.0 * h);
    if constexpr (std::is_same_v<decltype(f(p)), double>) {
        return (m2 - 8.0 * m1 + 8.0 * p1 - p2) / (12.0 * h);
    } else {
        auto r = m1;
        for (std::size_t i = 0; i < r.size(); ++i)
            r[i] = (m2[i] - 8.0 * m1[i] + 8.0 * p1[i] - p2[i]) / (12.0 * h);
        return r;
    }
}

} // namespace detail

// d eta(X, Y) under the half-convention with constant coordinate extensions.
inline double d_eta(const ManifoldModel& model, const Point& p, const Vec& x, const Vec& y,
                    double h = contact_fd_step) {
    auto eta_y = [&](const Point& q) { return dot(model.contact.eta(q), y); };
    auto eta_x = [&](const Point& q) { return dot(model.contact.eta(q), x); };
    return 0.5 * (detail::directional_fd(eta_y, p, x, h) - detail::directional_fd(eta_x, p, y, h));
}

// Algebraic axioms: eta(xi) = 1, phi xi = 0, eta o phi = 0,
// phi^2 = -I + eta (x) xi.
inline CheckResult verify_almost_contact(const ManifoldModel& model, const Point& p) {
    check_point(model, p);
    const Vec eta = model.contact.eta(p);
    const Vec xi = model.contact.xi(p);
    const Mat phi = model.contact.phi(p);
    const Mat g = metric(model, p);

    const double r_eta_xi = std::abs(dot(eta, xi) - 1.0);
    const double r_phi_xi = gnorm(g, matvec(phi, xi));

    // The identities eta(phi X) = 0 and phi^2 = -X + eta(X) xi are statements
    // about tangent vectors, so probe them on an orthonormal tangent basis;
    // for embedded models the raw ambient matrices differ by radial terms
    // that never see a tangent vector.
    const std::vector<Vec> basis = complete_orthonormal(model, p, {});
    double r_eta_phi = 0.0;
    double r_phi_square = 0.0;
    for (const Vec& u : basis) {
        const Vec pu = matvec(phi, u);
        r_eta_phi = std::max(r_eta_phi, std::abs(dot(eta, pu)));
        Vec w = matvec(phi, pu);
        axpy(1.0, u, w);
        axpy(-dot(eta, u), xi, w);
        r_phi_square = std::max(r_phi_square, gnorm(g, w));
    }

    return make_result("almost_contact", p, model.tolerance_tier,
                       {{"eta_xi_minus_one", r_eta_xi},
                        {"phi_xi_norm", r_phi_xi},
                        {"eta_phi_sup", r_eta_phi},
                        {"phi_square_sup", r_phi_square}});
}

// Metric compatibility: eta = g(xi, .), d eta = g(., phi .), and g-skewness
// of phi, sampled over random unit tangent pairs.
inline CheckResult verify_metric_compatibility(const ManifoldModel& model, const Point& p,
                                               int trials, Rng& rng) {
    check_point(model, p);
    const Mat g = metric(model, p);
    const Vec eta = model.contact.eta(p);
    const Vec xi = model.contact.xi(p);
    const Mat phi = model.contact.phi(p);

    double r_eta = 0.0, r_deta = 0.0, r_skew = 0.0;
    for (int t = 0; t < trials; ++t) {
        const Vec x = random_unit_tangent(model, p, rng).components;
        const Vec y = random_unit_tangent(model, p, rng).components;
        r_eta = std::max(r_eta, std::abs(dot(eta, x) - inner(g, xi, x)));
        const Vec phi_y = matvec(phi, y);
        const Vec phi_x = matvec(phi, x);
        r_deta = std::max(r_deta, std::abs(d_eta(model, p, x, y) - inner(g, x, phi_y)));
        r_skew = std::max(r_skew, std::abs(inner(g, x, phi_y) + inner(g, phi_x, y)));
    }
    return make_result("metric_compatibility", p, model.tolerance_tier,
                       {{"eta_vs_metric", r_eta},
                        {"deta_vs_phi_pairing", r_deta},
                        {"phi_skewness", r_skew}});
}

// Sasakian tensor identity: (nabla_X phi) Y = g(X,Y) xi - eta(Y) X over
// random unit tangent pairs, with constant coordinate extensions.
inline CheckResult verify_sasakian(const ManifoldModel& model, const Point& p, int trials,
                                   Rng& rng) {
    check_point(model, p);
    const Mat g = metric(model, p);
    const Vec eta = model.contact.eta(p);
    const Vec xi = model.contact.xi(p);
    const Mat phi = model.contact.phi(p);
    const Christoffel gamma = christoffel(model, p);

    double r = 0.0;
    for (int t = 0; t < trials; ++t) {
        const Vec x = random_unit_tangent(model, p, rng).components;
        const Vec y = random_unit_tangent(model, p, rng).components;
        // nabla_X (phi Y) with Y extended constantly: component derivative of
        // the field q -> phi(q) Y plus the Christoffel correction.
        auto w_field = [&](const Point& q) { return matvec(model.contact.phi(q), y); };
        Vec dw = detail::directional_fd(w_field, p, x);
        axpy(1.0, gamma.contract(x, matvec(phi, y)), dw);
        // phi(nabla_X Y) for the constant extension: nabla_X Y = Gamma(X, Y).
        const Vec phi_nabla = matvec(phi, gamma.contract(x, y));
        // (nabla_X phi) Y - (g(X,Y) xi - eta(Y) X)
        Vec defect = sub(dw, phi_nabla);
        axpy(-inner(g, x, y), xi, defect);
        axpy(dot(eta, y), x, defect);
        r = std::max(r, gnorm(g, defect));
    }
    return make_result("sasakian_identity", p, model.tolerance_tier,
                       {{"tensor_identity", r}});
}

// Curvature identities along the Reeb field: for unit X orthogonal to xi,
// R(X, xi) X = -xi and R(xi, X) xi = -X.
inline CheckResult check_reeb_curvature_identity(const ManifoldModel& model, const Point& p,
                                                 const Vec& x) {
    check_point(model, p);
    const Mat g = metric(model, p);
    const Vec xi = model.contact.xi(p);
    if (std::abs(gnorm(g, x) - 1.0) > 1e-8)
        throw precondition_error("reeb curvature identity: X must be a unit vector");
    if (std::abs(inner(g, x, xi)) > 1e-8)
        throw precondition_error("reeb curvature identity: X must be orthogonal to xi");

    Vec r1 = curvature(model, p, x, xi, x);
    axpy(1.0, xi, r1);
    Vec r2 = curvature(model, p, xi, x, xi);
    axpy(1.0, x, r2);
    return make_result("reeb_curvature_identity", p, model.tolerance_tier,
                       {{"r_x_xi_x_plus_xi", gnorm(g, r1)},
                        {"r_xi_x_xi_plus_x", gnorm(g, r2)}});
}

// Contact nondegeneracy: d eta restricted to ker(eta) must be nondegenerate.
// Build a g-orthonormal basis {xi, u_1, ..., u_2n} and check that the matrix
// D_ab = d eta(u_a, u_b) has determinant bounded away from zero.
inline CheckResult contact_nondegeneracy(const ManifoldModel& model, const Point& p) {
    check_point(model, p);
    const Vec xi = model.contact.xi(p);
    const std::vector<Vec> basis = complete_orthonormal(model, p, {xi});
    const std::size_t m = basis.size() - 1;
    Mat dmat(m, m);
    for (std::size_t a = 0; a < m; ++a)
        for (std::size_t b = 0; b < m; ++b)
            dmat(a, b) = d_eta(model, p, basis[a + 1], basis[b + 1]);

    // determinant by elimination
    double det = 1.0;
    {
        Mat u = dmat;
        for (std::size_t c = 0; c < m; ++c) {
            std::size_t piv = c;
            for (std::size_t r2 = c + 1; r2 < m; ++r2)
                if (std::abs(u(r2, c)) > std::abs(u(piv, c))) piv = r2;
            if (piv != c) {
                for (std::size_t j = 0; j < m; ++j) std::swap(u(c, j), u(piv, j));
                det = -det;
            }
            if (u(c, c) == 0.0) {
                det = 0.0;
                break;
            }
            det *= u(c, c);
            for (std::size_t r2 = c + 1; r2 < m; ++r2) {
                const double f = u(r2, c) / u(c, c);
                for (std::size_t j = c; j < m; ++j) u(r2, j) -= f * u(c, j);
            }
        }
    }

    CheckResult r;
    r.check_name = "contact_nondegeneracy";
    r.point = p;
    r.labels = {"abs_det_deta_on_kernel"};
    r.residuals = {std::abs(det)};
    r.tolerance = 1e-6; // lower bound, not an upper bound
    r.pass = std::abs(det) > 1e-6;
    return r;
}

} // namespace reeblab
