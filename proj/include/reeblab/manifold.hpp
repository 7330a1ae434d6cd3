#pragma once

// Core geometric types: points, tangent vectors, the contact structure
// triple (eta, xi, phi), and the model record bundling metric, connection and
// contact data for one concrete manifold. Models come in two representations:
//   chart    - one global coordinate chart, dim coordinates
//   embedded - unit sphere in R^(dim+1), points carry ambient coordinates
// All tensor callbacks work on the representation's coordinate count
// (ambient_dim), which equals dim for charts.

#include <cmath>
#include <functional>
#include <string>
#include <vector>

#include "reeblab/errors.hpp"
#include "reeblab/linalg.hpp"

namespace reeblab {

struct Point {
    Vec coords;

    std::size_t size() const noexcept { return coords.size(); }
    double operator[](std::size_t i) const { return coords[i]; }
    double& operator[](std::size_t i) { return coords[i]; }
};

inline double distance_inf(const Point& p, const Point& q) {
    double d = 0.0;
    for (std::size_t i = 0; i < p.size(); ++i)
        d = std::max(d, std::abs(p[i] - q[i]));
    return d;
}

struct TangentVector {
    Point base;
    Vec components;
};

// Christoffel symbols of the second kind at one point: gamma(k, i, j) is
// Gamma^k_{ij}, symmetric in (i, j).
class Christoffel {
public:
    Christoffel() : d_(0) {}
    explicit Christoffel(std::size_t d) : d_(d), a_(d * d * d, 0.0) {}

    std::size_t dim() const noexcept { return d_; }
    double& operator()(std::size_t k, std::size_t i, std::size_t j) {
        return a_[(k * d_ + i) * d_ + j];
    }
    double operator()(std::size_t k, std::size_t i, std::size_t j) const {
        return a_[(k * d_ + i) * d_ + j];
    }

    // Gamma(X, Y)^k = Gamma^k_{ij} X^i Y^j
    Vec contract(const Vec& x, const Vec& y) const {
        Vec r(d_, 0.0);
        for (std::size_t k = 0; k < d_; ++k) {
            double s = 0.0;
            for (std::size_t i = 0; i < d_; ++i) {
                if (x[i] == 0.0) continue;
                for (std::size_t j = 0; j < d_; ++j)
                    s += a_[(k * d_ + i) * d_ + j] * x[i] * y[j];
            }
            r[k] = s;
        }
        return r;
    }

private:
    std::size_t d_;
    std::vector<double> a_;
};

// Coordinate derivatives of the Christoffel symbols: dgamma(l, k, i, j) is
// d_l Gamma^k_{ij}.
class ChristoffelDerivative {
public:
    ChristoffelDerivative() : d_(0) {}
    explicit ChristoffelDerivative(std::size_t d) : d_(d), a_(d * d * d * d, 0.0) {}

    std::size_t dim() const noexcept { return d_; }
    double& operator()(std::size_t l, std::size_t k, std::size_t i, std::size_t j) {
        return a_[((l * d_ + k) * d_ + i) * d_ + j];
    }
    double operator()(std::size_t l, std::size_t k, std::size_t i, std::size_t j) const {
        return a_[((l * d_ + k) * d_ + i) * d_ + j];
    }

private:
    std::size_t d_;
    std::vector<double> a_;
};

// The contact triple. eta returns covector components (so eta(X) is a plain
// component contraction), xi returns vector components, phi returns the
// matrix of the (1,1) tensor acting on coordinate components.
struct ContactStructure {
    std::function<Vec(const Point&)> eta;
    std::function<Vec(const Point&)> xi;
    std::function<Mat(const Point&)> phi;
};

enum class Representation { chart, embedded };

struct ManifoldModel {
    std::string name;
    int dim = 0;         // intrinsic manifold dimension (odd)
    int ambient_dim = 0; // coordinate count carried by points
    Representation representation = Representation::chart;

    std::function<Mat(const Point&)> metric_fn;
    // Analytic connection; empty for models that only provide a metric, in
    // which case the finite-difference route supplies the symbols.
    std::function<Christoffel(const Point&)> christoffel_fn;
    // Analytic symbol derivatives; empty means finite differences.
    std::function<ChristoffelDerivative(const Point&)> christoffel_derivative_fn;
    std::function<bool(const Point&)> in_domain;

    ContactStructure contact;

    // Tolerance tier for verification residuals: 1e-8 when the connection is
    // analytic, 1e-5 when it comes from finite differences of the metric.
    double tolerance_tier = 1e-8;

    bool has_analytic_christoffel() const { return static_cast<bool>(christoffel_fn); }
};

inline void check_point(const ManifoldModel& model, const Point& p) {
    if (static_cast<int>(p.size()) != model.ambient_dim)
        throw argument_error("point has " + std::to_string(p.size()) +
                             " coordinates, model '" + model.name + "' expects " +
                             std::to_string(model.ambient_dim));
    // Malformed input, not a domain question: nan is nowhere, not outside.
    for (double c : p.coords)
        if (!std::isfinite(c))
            throw argument_error("point has non-finite coordinates");
    if (model.in_domain && !model.in_domain(p))
        throw domain_error("point lies outside the domain of model '" + model.name + "'");
}

// Metric with validation: symmetric to 1e-12 and positive definite, else the
// model is misconfigured and we refuse to continue.
inline Mat metric(const ManifoldModel& model, const Point& p) {
    check_point(model, p);
    Mat g = model.metric_fn(p);
    if (g.rows() != static_cast<std::size_t>(model.ambient_dim) || g.cols() != g.rows())
        throw metric_error("metric has wrong shape for model '" + model.name + "'");
    if (symmetry_defect(g) > 1e-12)
        throw metric_error("metric is not symmetric at the requested point");
    if (!is_positive_definite(g))
        throw metric_error("metric is not positive definite at the requested point");
    return g;
}

inline double inner(const ManifoldModel& model, const Point& p, const Vec& x, const Vec& y) {
    const Mat g = metric(model, p);
    double s = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i)
        for (std::size_t j = 0; j < y.size(); ++j)
            s += g(i, j) * x[i] * y[j];
    return s;
}

inline double inner(const Mat& g, const Vec& x, const Vec& y) {
    double s = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i)
        for (std::size_t j = 0; j < y.size(); ++j)
            s += g(i, j) * x[i] * y[j];
    return s;
}

inline double gnorm(const ManifoldModel& model, const Point& p, const Vec& x) {
    return std::sqrt(std::max(0.0, inner(model, p, x, x)));
}

inline double gnorm(const Mat& g, const Vec& x) {
    return std::sqrt(std::max(0.0, inner(g, x, x)));
}

} // namespace reeblab
