#pragma once

// Frenet apparatus of a unit-speed curve by metric Gram-Schmidt:
//
//   T = gamma', chi_1 = ||nabla_T T||, N_1 = nabla_T T / chi_1,
//   chi_{k+1} = ||nabla_T N_k + chi_k N_{k-1}||,
//   N_{k+1} = (nabla_T N_k + chi_k N_{k-1}) / chi_{k+1}   (with N_0 = T).
//
// When a curvature falls below the truncation threshold the frame stops
// there and `truncated` is set; a geodesic yields frame {T} with no
// curvatures. First curvatures are norms, hence nonnegative by construction.
//
// nabla_T N_k needs N_k as a field along the curve; it is recomputed at each
// stencil node by the same construction, which is smooth in s wherever no
// curvature crosses the threshold, so no sign flips occur across a stencil.

#include <cmath>
#include <limits>
#include <string>
#include <vector>

#include "reeblab/covariant.hpp"
#include "reeblab/curve.hpp"
#include "reeblab/errors.hpp"
#include "reeblab/linalg.hpp"
#include "reeblab/manifold.hpp"

namespace reeblab {

inline constexpr double frenet_truncation_eps = 1e-6;
inline constexpr double alignment_eps = 1e-6;

struct FrenetApparatus {
    double s = 0.0;
    std::vector<Vec> frame;          // frame[0] = T, then N_1, N_2, ...
    std::vector<double> curvatures;  // chi_1, ..., chi_m (one per normal)
    bool truncated = false;          // stopped because a curvature vanished
};

namespace detail {

inline FrenetApparatus frenet_to_depth(const Curve& c, double s, int depth) {
    const Point p = c.point(s);
    const Mat g = metric(c.model(), p);
    Vec t = c.derivative(s, 1);
    if (std::abs(gnorm(g, t) - 1.0) > 1e-6)
        throw precondition_error("frenet apparatus requires a unit-speed curve");

    FrenetApparatus ap;
    ap.s = s;
    ap.frame.push_back(std::move(t));
    if (depth <= 0) return ap;

    const Vec v1 = first_tangent_covariant(c, s);
    const double chi1 = gnorm(g, v1);
    if (chi1 < frenet_truncation_eps) {
        ap.truncated = true;
        return ap;
    }
    ap.curvatures.push_back(chi1);
    ap.frame.push_back(scale(1.0 / chi1, v1));

    const int dim = c.model().dim;
    for (int k = 1; static_cast<int>(ap.curvatures.size()) < depth &&
                    static_cast<int>(ap.frame.size()) < dim;
         ++k) {
        VectorFieldAlongCurve nk = [&c, k](double sigma) {
            const FrenetApparatus sub = frenet_to_depth(c, sigma, k);
            if (static_cast<int>(sub.frame.size()) < k + 1)
                throw regularity_error(
                    "frenet apparatus: a curvature degenerates inside a differentiation stencil");
            return sub.frame[k];
        };
        Vec w = covariant_derivative_along(c, nk, s).components;
        axpy(ap.curvatures[k - 1], ap.frame[k - 1], w);
        const double chi_next = gnorm(g, w);
        if (chi_next < frenet_truncation_eps) {
            ap.truncated = true;
            return ap;
        }
        ap.curvatures.push_back(chi_next);
        ap.frame.push_back(scale(1.0 / chi_next, w));
    }
    return ap;
}

} // namespace detail

// Full apparatus: up to dim - 1 normals. `max_normals` limits the depth (and
// with it the cost, which grows like 5^depth in field evaluations).
inline FrenetApparatus frenet_apparatus(const Curve& c, double s, int max_normals = -1) {
    const int full = c.model().dim - 1;
    const int depth = (max_normals < 0) ? full : std::min(max_normals, full);
    return detail::frenet_to_depth(c, s, depth);
}

struct HelixCheck {
    bool is_helix = false;
    bool is_geodesic = false;
    std::vector<double> variation; // max - min per curvature index
    std::string diagnostic;
};

// A curve is (numerically) a helix when every Frenet curvature is constant
// along it within `tol`. Samples stay inside a small interior margin so
// one-sided stencil noise at the ends does not pollute the variation.
inline HelixCheck is_helix(const Curve& c, int samples = 12, double tol = 1e-4) {
    if (samples < 2) throw argument_error("is_helix: need at least 2 samples");
    const double span = c.param_length();
    const double margin = 0.05 * span;
    HelixCheck out;

    std::vector<FrenetApparatus> aps;
    aps.reserve(samples);
    for (int i = 0; i < samples; ++i) {
        const double s = c.s_begin() + margin + (span - 2.0 * margin) * i / (samples - 1);
        aps.push_back(frenet_apparatus(c, s));
    }

    const std::size_t m = aps.front().curvatures.size();
    for (const auto& ap : aps) {
        if (ap.curvatures.size() != m) {
            out.is_helix = false;
            out.diagnostic = "curvature profile changes rank along the curve";
            return out;
        }
    }
    if (m == 0) {
        out.is_helix = true;
        out.is_geodesic = true;
        out.diagnostic = "geodesic (first curvature vanishes)";
        return out;
    }
    out.variation.resize(m);
    bool ok = true;
    for (std::size_t k = 0; k < m; ++k) {
        double lo = aps.front().curvatures[k], hi = lo;
        for (const auto& ap : aps) {
            lo = std::min(lo, ap.curvatures[k]);
            hi = std::max(hi, ap.curvatures[k]);
        }
        out.variation[k] = hi - lo;
        ok = ok && (hi - lo <= tol);
    }
    out.is_helix = ok;
    out.diagnostic = ok ? "constant curvatures within tolerance"
                        : "curvatures vary beyond tolerance";
    return out;
}

struct ReebAlignment {
    double eta_t = 0.0;      // eta(T), the cosine of the contact angle
    double n1_defect = 0.0;  // min over signs of ||N_1 -+ xi||_g; inf if no N_1
    std::string alignment;   // "tangent", "normal", or "none"
};

// Pointwise alignment of the curve against the Reeb field: tangent when T is
// (anti)parallel to xi, normal when the principal normal is, none otherwise.
// This is a measured diagnostic; nothing downstream enforces it.
inline ReebAlignment reeb_alignment(const Curve& c, double s) {
    const Point p = c.point(s);
    const Mat g = metric(c.model(), p);
    const Vec xi = c.model().contact.xi(p);
    const Vec t = c.derivative(s, 1);

    ReebAlignment out;
    out.eta_t = inner(g, xi, t);

    const FrenetApparatus ap = detail::frenet_to_depth(c, s, 1);
    if (ap.frame.size() >= 2) {
        const Vec& n1 = ap.frame[1];
        const double plus = gnorm(g, sub(n1, xi));
        const double minus = gnorm(g, add(n1, xi));
        out.n1_defect = std::min(plus, minus);
    } else {
        out.n1_defect = std::numeric_limits<double>::infinity();
    }

    if (1.0 - std::abs(out.eta_t) <= alignment_eps) out.alignment = "tangent";
    else if (out.n1_defect <= alignment_eps) out.alignment = "normal";
    else out.alignment = "none";
    return out;
}

} // namespace reeblab
