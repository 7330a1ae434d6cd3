#pragma once

// Curves on a model manifold, in two flavors:
//
//   analytic - a closure returns coordinate derivatives up to `exact_order`
//       in closed form (the jet-backed constructor gives exact orders 0..4);
//       higher orders fall back to 5-point finite differences of the highest
//       exact order.
//   sampled  - uniformly spaced parameter samples; derivatives come from
//       Fornberg stencils on the grid. Orders 1-2 use 5-point stencils at an
//       effective spacing near 5e-3, orders 3-4 use 9-point stencils near
//       2e-2: wider spacing keeps the roundoff floor of high-order
//       differences (~eps/H^order) far below the tolerances downstream code
//       relies on. Near the ends stencils slide inward (one-sided).
//
// Sampled curves on embedded models are projected back to the constraint
// surface at construction and after interpolation, so interpolation wiggle
// never takes evaluation points off the manifold.
//
// The model is held by pointer; the caller keeps it alive for the curve's
// lifetime.

#include <cmath>
#include <functional>
#include <memory>
#include <utility>
#include <vector>

#include "reeblab/errors.hpp"
#include "reeblab/fd.hpp"
#include "reeblab/geometry.hpp"
#include "reeblab/jet.hpp"
#include "reeblab/linalg.hpp"
#include "reeblab/manifold.hpp"
#include "reeblab/quadrature.hpp"

namespace reeblab {

inline constexpr double analytic_fd_spacing = 5e-3;  // extra orders on analytic curves
inline constexpr double sampled_low_spacing = 5e-3;  // target for sampled orders 1-2
inline constexpr double sampled_high_spacing = 2e-2; // target for sampled orders 3-4
inline constexpr double speed_regularity_eps = 1e-6;

class Curve {
public:
    static Curve analytic(const ManifoldModel& model, double s0, double s1,
                          std::function<std::vector<Vec>(double)> evaluator, int exact_order) {
        if (!(s1 > s0)) throw argument_error("Curve: parameter interval is empty");
        if (exact_order < 1) throw argument_error("Curve: evaluator must supply at least order 1");
        Curve c;
        c.model_ = &model;
        c.s0_ = s0;
        c.s1_ = s1;
        c.sampled_ = false;
        c.exact_order_ = std::min(exact_order, 4);
        c.eval_ = std::move(evaluator);
        return c;
    }

    // Coordinates evaluated in truncated Taylor arithmetic: derivatives up to
    // order 4 are exact.
    static Curve from_jets(const ManifoldModel& model, double s0, double s1,
                           std::function<std::vector<Jet>(const Jet&)> coords) {
        const int d = model.ambient_dim;
        auto evaluator = [coords = std::move(coords), d](double s) {
            const std::vector<Jet> jets = coords(Jet::variable(s));
            if (static_cast<int>(jets.size()) != d)
                throw argument_error("Curve: jet evaluator returned wrong coordinate count");
            std::vector<Vec> derivs(5, Vec(d));
            for (int k = 0; k <= 4; ++k)
                for (int i = 0; i < d; ++i)
                    derivs[k][i] = jets[i].derivative(k);
            return derivs;
        };
        return analytic(model, s0, s1, std::move(evaluator), 4);
    }

    static Curve sampled(const ManifoldModel& model, std::vector<double> s,
                         std::vector<Vec> points) {
        const std::size_t n = s.size();
        if (n < 9) throw argument_error("Curve: sampled curves need at least 9 samples");
        if (points.size() != n)
            throw argument_error("Curve: sample parameter and point counts differ");
        const double h = (s.back() - s.front()) / static_cast<double>(n - 1);
        if (!(h > 0.0)) throw argument_error("Curve: sample parameters must increase");
        for (std::size_t i = 0; i + 1 < n; ++i)
            if (std::abs(s[i + 1] - s[i] - h) > 1e-6 * h)
                throw argument_error("Curve: sample parameters must be uniformly spaced");
        for (auto& p : points) {
            if (static_cast<int>(p.size()) != model.ambient_dim)
                throw argument_error("Curve: sample point dimension mismatch");
            for (double c : p)
                if (!std::isfinite(c)) throw argument_error("Curve: non-finite sample point");
        }
        if (model.representation == Representation::embedded) {
            // Samples are expected on the constraint surface; snap them there
            // and refuse inputs that are badly off it.
            for (auto& p : points) {
                const double r = norm(p);
                if (std::abs(r - 1.0) > 1e-3)
                    throw argument_error("Curve: sample point lies too far from the unit sphere");
                for (double& c : p) c /= r;
            }
        }
        Curve c;
        c.model_ = &model;
        c.s0_ = s.front();
        c.s1_ = s.back();
        c.sampled_ = true;
        c.sv_ = std::move(s);
        c.pts_ = std::move(points);
        c.h_ = h;
        return c;
    }

    const ManifoldModel& model() const { return *model_; }
    double s_begin() const { return s0_; }
    double s_end() const { return s1_; }
    double param_length() const { return s1_ - s0_; }
    bool is_sampled() const { return sampled_; }
    int exact_order() const { return exact_order_; }

    double grid_spacing() const {
        if (!sampled_) throw argument_error("Curve: analytic curves have no grid spacing");
        return h_;
    }
    std::size_t sample_count() const { return sv_.size(); }
    const std::vector<double>& sample_params() const { return sv_; }
    const std::vector<Vec>& sample_points() const { return pts_; }

    Point point(double s) const {
        Vec c = derivative(s, 0);
        if (model_->representation == Representation::embedded) {
            const double r = norm(c);
            if (r > 0.0)
                for (double& v : c) v /= r;
        }
        return Point{std::move(c)};
    }

    Vec derivative(double s, int order) const {
        if (order < 0 || order > 4)
            throw argument_error("Curve: derivative order must be between 0 and 4");
        check_param(s);
        return sampled_ ? sampled_derivative(s, order) : analytic_derivative(s, order);
    }

    TangentVector tangent(double s) const { return TangentVector{point(s), derivative(s, 1)}; }

    double speed(double s) const {
        return gnorm(metric(*model_, point(s)), derivative(s, 1));
    }

    bool is_unit_speed(double tol = 1e-6, int probes = 9) const {
        for (int i = 0; i < probes; ++i) {
            const double s = s0_ + (s1_ - s0_) * (i + 0.5) / probes;
            if (std::abs(speed(s) - 1.0) > tol) return false;
        }
        return true;
    }

private:
    Curve() = default;

    void check_param(double s) const {
        const double slack = 1e-9 * std::max(1.0, s1_ - s0_);
        if (s < s0_ - slack || s > s1_ + slack)
            throw domain_error("Curve: parameter outside the curve's interval");
    }

    Vec analytic_derivative(double s, int order) const {
        if (order <= exact_order_) return eval_(s)[order];
        const int extra = order - exact_order_;
        const double span = s1_ - s0_;
        const double spacing = std::min(analytic_fd_spacing, span / 4.0);
        const Stencil st = bounded_stencil(s, 5, spacing, extra, s0_, s1_);
        Vec out(model_->ambient_dim, 0.0);
        for (std::size_t j = 0; j < st.nodes.size(); ++j)
            axpy(st.weights[j], eval_(st.nodes[j])[exact_order_], out);
        return out;
    }

    Vec sampled_derivative(double s, int order) const {
        const long n = static_cast<long>(sv_.size());
        int window;
        double target;
        if (order == 0) {
            window = 6;
            target = h_;
        } else if (order <= 2) {
            window = 5;
            target = sampled_low_spacing;
        } else {
            window = 9;
            target = sampled_high_spacing;
        }
        window = static_cast<int>(std::min<long>(window, n));
        long stride = std::max<long>(1, std::lround(target / h_));
        const long max_stride = (n - 1) / std::max(1, window - 1);
        stride = std::max<long>(1, std::min(stride, max_stride));
        if (window < order + 1) {
            window = static_cast<int>(std::min<long>(n, order + 1));
            stride = 1;
        }
        if (static_cast<long>(window) > n)
            throw derivative_order_error("Curve: too few samples for derivative order " +
                                         std::to_string(order));

        long center = std::lround((s - s0_) / h_);
        long start = center - stride * (window / 2);
        start = std::max<long>(0, std::min(start, n - 1 - stride * (window - 1)));

        std::vector<double> nodes(window);
        for (int j = 0; j < window; ++j) nodes[j] = sv_[start + j * stride];
        const std::vector<double> w = fd_weights(s, nodes, order);
        Vec out(model_->ambient_dim, 0.0);
        for (int j = 0; j < window; ++j) axpy(w[j], pts_[start + j * stride], out);
        return out;
    }

    const ManifoldModel* model_ = nullptr;
    double s0_ = 0.0, s1_ = 0.0;
    bool sampled_ = false;
    std::function<std::vector<Vec>(double)> eval_;
    int exact_order_ = 0;
    std::vector<double> sv_;
    std::vector<Vec> pts_;
    double h_ = 0.0;
};

namespace detail {

// Cumulative arc length A(t) tabulated at uniform knots, with speeds, for
// inverting s = A(t). Newton polish integrates only from the nearest knot,
// so each solve costs a handful of speed evaluations.
struct ArcLengthTable {
    std::vector<double> t, acc, v;
    double total = 0.0;
};

template <typename SpeedFn>
ArcLengthTable build_arc_length_table(SpeedFn speed, double t0, double t1, int segments) {
    ArcLengthTable tab;
    tab.t.resize(segments + 1);
    tab.acc.resize(segments + 1);
    tab.v.resize(segments + 1);
    const double h = (t1 - t0) / segments;
    tab.t[0] = t0;
    tab.acc[0] = 0.0;
    tab.v[0] = speed(t0);
    for (int k = 1; k <= segments; ++k) {
        tab.t[k] = t0 + k * h;
        tab.acc[k] = tab.acc[k - 1] + adaptive_simpson(speed, tab.t[k - 1], tab.t[k], 1e-13);
        tab.v[k] = speed(tab.t[k]);
        if (tab.v[k] < speed_regularity_eps)
            throw regularity_error("arc length: curve speed falls below regularity threshold");
    }
    if (tab.v[0] < speed_regularity_eps)
        throw regularity_error("arc length: curve speed falls below regularity threshold");
    tab.total = tab.acc.back();
    return tab;
}

// Solve A(t) = s by bracketed Newton, integrating from the nearest knot.
template <typename SpeedFn>
double invert_arc_length(const ArcLengthTable& tab, SpeedFn speed, double s) {
    const double sc = std::min(std::max(s, 0.0), tab.total);
    const auto it = std::upper_bound(tab.acc.begin(), tab.acc.end(), sc);
    std::size_t k = (it == tab.acc.begin()) ? 0 : (it - tab.acc.begin() - 1);
    if (k >= tab.t.size() - 1) k = tab.t.size() - 2;
    const double knot = tab.t[k];
    double lo = knot, hi = tab.t[k + 1];
    const double frac = (tab.acc[k + 1] > tab.acc[k])
                            ? (sc - tab.acc[k]) / (tab.acc[k + 1] - tab.acc[k])
                            : 0.5;
    double t = lo + frac * (hi - lo);
    for (int iter = 0; iter < 30; ++iter) {
        const double f =
            tab.acc[k] + ((t > knot) ? adaptive_simpson(speed, knot, t, 1e-14) : 0.0) - sc;
        if (std::abs(f) <= 1e-13 * std::max(1.0, tab.total)) break;
        if (f > 0.0) hi = t;
        else lo = t;
        const double step = f / std::max(speed(t), speed_regularity_eps);
        double next = t - step;
        if (next <= lo || next >= hi) next = 0.5 * (lo + hi);
        t = next;
    }
    return t;
}

} // namespace detail

// Reparametrize by arc length. The result lives on [0, L] and has unit speed
// (within ~1e-8 for sampled curves, machine precision for analytic ones).
// Analytic inputs yield an analytic curve exact through order 2 (orders 3-4
// fall back to finite differences of the order-2 closure); sampled inputs
// are resampled on a uniform arc-length grid with the same sample count.
inline Curve arc_length_reparametrize(const Curve& c) {
    const ManifoldModel& model = c.model();
    const double t0 = c.s_begin(), t1 = c.s_end();

    if (!c.is_sampled()) {
        auto speed = [&c](double t) { return c.speed(t); };
        auto table = std::make_shared<detail::ArcLengthTable>(
            detail::build_arc_length_table(speed, t0, t1, 1024));
        const double total = table->total;
        // Shared closure state: the curve itself is captured by value (cheap:
        // analytic curves hold one std::function).
        auto evaluator = [c, table, t0, t1](double s) {
            auto speed = [&c](double t) { return c.speed(t); };
            const double t = detail::invert_arc_length(*table, speed, s);
            const std::vector<Vec> base = {c.derivative(t, 0), c.derivative(t, 1),
                                           c.derivative(t, 2)};
            const ManifoldModel& m = c.model();
            const Point p{base[0]};
            const Mat g = m.metric_fn(p);
            const double v = gnorm(g, base[1]);
            // v'(t) from (v^2)' = d_k g_ij x'^k x'^i x'^j + 2 g(x'', x')
            double dv2 = 2.0 * inner(g, base[2], base[1]);
            if (m.representation == Representation::chart) {
                for (int k = 0; k < m.ambient_dim; ++k) {
                    const Mat dg = metric_partial(m, p, k);
                    dv2 += base[1][k] * inner(dg, base[1], base[1]);
                }
            }
            // embedded models shipped here have constant ambient metric
            const double vp = dv2 / (2.0 * v);
            const double tp = 1.0 / v;
            const double tpp = -vp / (v * v * v);
            std::vector<Vec> out(3, Vec(base[0].size()));
            out[0] = base[0];
            out[1] = scale(tp, base[1]);
            out[2] = add(scale(tp * tp, base[2]), scale(tpp, base[1]));
            return out;
        };
        return Curve::analytic(model, 0.0, total, std::move(evaluator), 2);
    }

    // Sampled: cumulative Simpson over each grid interval using the curve's
    // own interpolated speed, then monotone Hermite inversion of A(t) with a
    // Newton polish on the local cubic.
    const auto& tv = c.sample_params();
    const auto& pv = c.sample_points();
    const std::size_t n = tv.size();
    std::vector<double> acc(n), vel(n);
    for (std::size_t i = 0; i < n; ++i) {
        vel[i] = c.speed(tv[i]);
        if (vel[i] < speed_regularity_eps)
            throw regularity_error("arc length: sampled curve speed below regularity threshold");
    }
    acc[0] = 0.0;
    for (std::size_t i = 0; i + 1 < n; ++i) {
        const double mid = 0.5 * (tv[i] + tv[i + 1]);
        acc[i + 1] = acc[i] + (tv[i + 1] - tv[i]) / 6.0 *
                                  (vel[i] + 4.0 * c.speed(mid) + vel[i + 1]);
    }
    const double total = acc.back();

    std::vector<double> new_s(n);
    std::vector<Vec> new_pts(n);
    for (std::size_t j = 0; j < n; ++j) {
        const double s = total * static_cast<double>(j) / static_cast<double>(n - 1);
        // locate segment
        std::size_t k = std::upper_bound(acc.begin(), acc.end(), s) - acc.begin();
        k = (k == 0) ? 0 : k - 1;
        if (k >= n - 1) k = n - 2;
        // cubic Hermite model of A on [t_k, t_{k+1}] with slopes = speeds
        const double hseg = tv[k + 1] - tv[k];
        const double a0 = acc[k], a1 = acc[k + 1], v0 = vel[k], v1 = vel[k + 1];
        double u = (a1 > a0) ? (s - a0) / (a1 - a0) : 0.5;
        for (int iter = 0; iter < 20; ++iter) {
            const double h00 = (1 + 2 * u) * (1 - u) * (1 - u);
            const double h10 = u * (1 - u) * (1 - u);
            const double h01 = u * u * (3 - 2 * u);
            const double h11 = u * u * (u - 1);
            const double a = h00 * a0 + h10 * hseg * v0 + h01 * a1 + h11 * hseg * v1;
            const double dh00 = 6 * u * (u - 1);
            const double dh10 = (1 - u) * (1 - 3 * u);
            const double dh01 = 6 * u * (1 - u);
            const double dh11 = u * (3 * u - 2);
            const double da = dh00 * a0 + dh10 * hseg * v0 + dh01 * a1 + dh11 * hseg * v1;
            const double f = a - s;
            if (std::abs(f) <= 1e-14 * std::max(1.0, total)) break;
            if (da > 1e-14) u -= f / da;
            u = std::min(1.0, std::max(0.0, u));
        }
        new_s[j] = s;
        new_pts[j] = c.point(tv[k] + u * hseg).coords;
    }
    return Curve::sampled(model, std::move(new_s), std::move(new_pts));
}

} // namespace reeblab
