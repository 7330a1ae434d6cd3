#pragma once

// Helix construction and the residual laboratory.
//
// integrate_helix solves the coupled system
//   gamma' = E_0,
//   nabla_T E_k = -chi_k E_{k-1} + chi_{k+1} E_{k+1}   (chi_0 = chi_{m+1} = 0)
// in coordinates (the covariant equation minus the Christoffel correction)
// with classical RK4, re-orthonormalizing the frame after every step and, on
// embedded models, renormalizing the point to the constraint surface. Frame
// drift is measured before each cleanup; exceeding the budget raises a
// step-size error instead of silently degrading tau_2, which sits four
// derivatives deep.
//
// scan sweeps a (chi_1, chi_2) grid, integrating one helix per cell from a
// canonical start with a Reeb-aligned initial frame, and records the mean
// and max of ||tau_2|| (direct route) plus the worst alignment defect along
// the curve. Cells are independent; with --jobs > 1 they are evaluated by a
// small thread pool and merged by index, so output is identical to the
// serial run. find_biharmonic minimizes the cell residual with Nelder-Mead.

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdint>
#include <limits>
#include <string>
#include <thread>
#include <vector>

#include "reeblab/biharmonic.hpp"
#include "reeblab/curve.hpp"
#include "reeblab/errors.hpp"
#include "reeblab/frenet.hpp"
#include "reeblab/geometry.hpp"
#include "reeblab/linalg.hpp"
#include "reeblab/manifold.hpp"
#include "reeblab/models.hpp"
#include "reeblab/optimize.hpp"
#include "reeblab/rng.hpp"

namespace reeblab {

inline constexpr double frame_drift_limit = 1e-6;

struct HelixSpec {
    const ManifoldModel* model = nullptr;
    Point start;
    std::vector<Vec> frame;        // E_0 = T, then the normals; size = curvatures + 1
    std::vector<double> curvatures; // chi_1, ..., chi_m, all >= 0
    double length = 5.0;
    double step = 1e-3;
};

struct IntegratedHelix {
    Curve curve;
    std::vector<std::vector<Vec>> frames; // frame at every node, post-cleanup
    double max_drift = 0.0;               // worst pre-cleanup orthonormality defect
};

enum class ReebMode { tangent, normal };

inline ReebMode reeb_mode_from_string(const std::string& s) {
    if (s == "tangent") return ReebMode::tangent;
    if (s == "normal") return ReebMode::normal;
    throw argument_error("unknown alignment mode '" + s + "' (expected tangent or normal)");
}

// Initial frame aligned with the Reeb field: tangent mode puts xi in the T
// slot, normal mode puts xi in the N_1 slot with T a deterministic unit
// horizontal vector. Completion runs over projected coordinate directions in
// a fixed order.
inline std::vector<Vec> reeb_aligned_frame(const ManifoldModel& model, const Point& p,
                                           ReebMode mode, std::size_t count) {
    check_point(model, p);
    if (count < 1 || count > static_cast<std::size_t>(model.dim))
        throw argument_error("reeb_aligned_frame: frame size out of range");
    const Vec xi = model.contact.xi(p);
    std::vector<Vec> basis = complete_orthonormal(model, p, {xi});
    std::vector<Vec> frame;
    if (mode == ReebMode::tangent) {
        frame = std::move(basis); // xi first, completion follows
    } else {
        if (count < 2) throw argument_error("reeb_aligned_frame: normal mode needs >= 2 vectors");
        frame.push_back(basis[1]); // T: first horizontal completion vector
        frame.push_back(basis[0]); // N_1 = xi
        for (std::size_t i = 2; i < basis.size(); ++i) frame.push_back(basis[i]);
    }
    frame.resize(count);
    return frame;
}

namespace detail {

// Orthonormality defect of a frame, including (for embedded models) the
// radial components that the intrinsic metric cannot see.
inline double frame_defect(const ManifoldModel& model, const Point& p,
                           const std::vector<Vec>& frame) {
    const Mat g = model.metric_fn(p);
    double d = 0.0;
    for (std::size_t i = 0; i < frame.size(); ++i)
        for (std::size_t j = i; j < frame.size(); ++j)
            d = std::max(d, std::abs(inner(g, frame[i], frame[j]) - (i == j ? 1.0 : 0.0)));
    if (model.representation == Representation::embedded) {
        Vec radial = p.coords;
        const double r = norm(radial);
        for (double& v : radial) v /= r;
        for (const auto& e : frame) d = std::max(d, std::abs(dot(e, radial)));
        d = std::max(d, std::abs(r - 1.0));
    }
    return d;
}

} // namespace detail

inline IntegratedHelix integrate_helix(const HelixSpec& spec) {
    if (spec.model == nullptr) throw argument_error("integrate_helix: no model");
    const ManifoldModel& model = *spec.model;
    check_point(model, spec.start);
    const std::size_t m = spec.curvatures.size();
    if (spec.frame.size() != m + 1)
        throw argument_error("integrate_helix: frame must have one vector per curvature plus T");
    if (spec.frame.size() > static_cast<std::size_t>(model.dim))
        throw argument_error("integrate_helix: frame larger than the manifold dimension");
    // chi_1 is a norm; higher curvatures may carry a sign (flipping chi_2
    // reflects N_2, so the residual surface is mirror symmetric in chi_2).
    if (!spec.curvatures.empty() && !(spec.curvatures[0] >= 0.0))
        throw argument_error("integrate_helix: chi_1 must be >= 0");
    for (double chi : spec.curvatures)
        if (!std::isfinite(chi)) throw argument_error("integrate_helix: curvatures must be finite");
    if (!(spec.step > 0.0)) throw argument_error("integrate_helix: step must be positive");
    if (!(spec.length >= 10.0 * spec.step))
        throw argument_error("integrate_helix: length must cover at least 10 steps");
    if (detail::frame_defect(model, spec.start, spec.frame) > 1e-10)
        throw precondition_error("integrate_helix: initial frame is not g-orthonormal");

    const int d = model.ambient_dim;
    const std::size_t nvec = m + 1;
    const long steps = std::lround(spec.length / spec.step);
    const double h = spec.step;

    // State: point coordinates followed by the frame vectors, flattened.
    Vec state((nvec + 1) * d);
    for (int i = 0; i < d; ++i) state[i] = spec.start[i];
    for (std::size_t k = 0; k < nvec; ++k)
        for (int i = 0; i < d; ++i) state[(k + 1) * d + i] = spec.frame[k][i];

    auto rhs = [&](const Vec& y) {
        Point q{Vec(y.begin(), y.begin() + d)};
        const Christoffel gamma = model.christoffel_fn
                                      ? model.christoffel_fn(q)
                                      : christoffel_fd(model, q);
        Vec dy(y.size(), 0.0);
        const Vec e0(y.begin() + d, y.begin() + 2 * d);
        for (int i = 0; i < d; ++i) dy[i] = e0[i];
        for (std::size_t k = 0; k < nvec; ++k) {
            const Vec ek(y.begin() + (k + 1) * d, y.begin() + (k + 2) * d);
            Vec dek(d, 0.0);
            if (k > 0) {
                const Vec ekm(y.begin() + k * d, y.begin() + (k + 1) * d);
                axpy(-spec.curvatures[k - 1], ekm, dek);
            }
            if (k + 1 < nvec) {
                const Vec ekp(y.begin() + (k + 2) * d, y.begin() + (k + 3) * d);
                axpy(spec.curvatures[k], ekp, dek);
            }
            axpy(-1.0, gamma.contract(e0, ek), dek);
            for (int i = 0; i < d; ++i) dy[(k + 1) * d + i] = dek[i];
        }
        return dy;
    };

    std::vector<double> svals;
    std::vector<Vec> points;
    std::vector<std::vector<Vec>> frames;
    svals.reserve(steps + 1);
    points.reserve(steps + 1);
    frames.reserve(steps + 1);

    auto record = [&]() {
        points.emplace_back(state.begin(), state.begin() + d);
        std::vector<Vec> fr(nvec);
        for (std::size_t k = 0; k < nvec; ++k)
            fr[k] = Vec(state.begin() + (k + 1) * d, state.begin() + (k + 2) * d);
        frames.push_back(std::move(fr));
    };

    double max_drift = 0.0;
    svals.push_back(0.0);
    record();

    for (long n = 1; n <= steps; ++n) {
        const Vec k1 = rhs(state);
        Vec y2 = state;
        axpy(0.5 * h, k1, y2);
        const Vec k2 = rhs(y2);
        Vec y3 = state;
        axpy(0.5 * h, k2, y3);
        const Vec k3 = rhs(y3);
        Vec y4 = state;
        axpy(h, k3, y4);
        const Vec k4 = rhs(y4);
        for (std::size_t i = 0; i < state.size(); ++i)
            state[i] += h / 6.0 * (k1[i] + 2.0 * k2[i] + 2.0 * k3[i] + k4[i]);

        // Measure drift before any cleanup.
        Point q{Vec(state.begin(), state.begin() + d)};
        std::vector<Vec> fr(nvec);
        for (std::size_t k = 0; k < nvec; ++k)
            fr[k] = Vec(state.begin() + (k + 1) * d, state.begin() + (k + 2) * d);
        const double drift = detail::frame_defect(model, q, fr);
        max_drift = std::max(max_drift, drift);
        if (drift > frame_drift_limit)
            throw step_size_error("integrate_helix: frame drift " + std::to_string(drift) +
                                  " at step " + std::to_string(n) +
                                  " exceeds the per-step budget; reduce the step size");

        // Cleanup: snap to the constraint surface, project out radial parts,
        // then Gram-Schmidt in the metric at the corrected point.
        if (model.representation == Representation::embedded) {
            const double r = norm(q.coords);
            for (double& v : q.coords) v /= r;
            for (auto& e : fr) axpy(-dot(e, q.coords), q.coords, e);
        }
        const Mat g = model.metric_fn(q);
        for (std::size_t k = 0; k < nvec; ++k) {
            for (std::size_t jprev = 0; jprev < k; ++jprev)
                axpy(-inner(g, fr[k], fr[jprev]), fr[jprev], fr[k]);
            const double nk = gnorm(g, fr[k]);
            if (nk < 1e-12)
                throw step_size_error("integrate_helix: frame collapsed during cleanup");
            fr[k] = scale(1.0 / nk, fr[k]);
        }
        for (int i = 0; i < d; ++i) state[i] = q[i];
        for (std::size_t k = 0; k < nvec; ++k)
            for (int i = 0; i < d; ++i) state[(k + 1) * d + i] = fr[k][i];

        svals.push_back(n * h);
        record();
    }

    Curve curve = Curve::sampled(model, std::move(svals), std::move(points));
    return IntegratedHelix{std::move(curve), std::move(frames), max_drift};
}

// Alignment defect of stored frames against the Reeb field along the curve:
// tangent mode compares E_0, normal mode compares E_1, both up to sign.
inline double alignment_defect_max(const ManifoldModel& model, const IntegratedHelix& helix,
                                   ReebMode mode) {
    const std::size_t slot = (mode == ReebMode::tangent) ? 0 : 1;
    double worst = 0.0;
    const auto& pts = helix.curve.sample_points();
    for (std::size_t i = 0; i < pts.size(); ++i) {
        if (slot >= helix.frames[i].size()) return std::numeric_limits<double>::infinity();
        const Point p{pts[i]};
        const Mat g = model.metric_fn(p);
        const Vec xi = model.contact.xi(p);
        const Vec& e = helix.frames[i][slot];
        const double plus = gnorm(g, sub(e, xi));
        const double minus = gnorm(g, add(e, xi));
        worst = std::max(worst, std::min(plus, minus));
    }
    return worst;
}

struct CellEvaluation {
    double residual_mean = 0.0;
    double residual_meansq = 0.0;
    double residual_max = 0.0;
    double align_defect_max = 0.0;
    double max_drift = 0.0;
};

// Integrate one (chi_1, chi_2) helix from the canonical start and measure
// ||tau_2|| (direct route) at `tau_samples` equispaced interior parameters.
inline CellEvaluation evaluate_cell(const ManifoldModel& model, ReebMode mode, double chi1,
                                    double chi2, double length, double step,
                                    int tau_samples = 20) {
    if (tau_samples < 1) throw argument_error("evaluate_cell: need at least one sample");
    const Point p0 = canonical_point(model);
    HelixSpec spec;
    spec.model = &model;
    spec.start = p0;
    spec.frame = reeb_aligned_frame(model, p0, mode, 3);
    spec.curvatures = {chi1, chi2};
    spec.length = length;
    spec.step = step;

    const IntegratedHelix helix = integrate_helix(spec);
    const Curve& c = helix.curve;

    const double span = c.param_length();
    const double margin = std::min(0.2 * span, 10.0 * field_fd_spacing(c));
    CellEvaluation ev;
    ev.max_drift = helix.max_drift;
    for (int i = 0; i < tau_samples; ++i) {
        const double s = c.s_begin() + margin +
                         (span - 2.0 * margin) * (tau_samples == 1 ? 0.5 : double(i) / (tau_samples - 1));
        const TangentVector tau2 = bitension_direct(c, s);
        const double r = gnorm(metric(model, tau2.base), tau2.components);
        ev.residual_mean += r;
        ev.residual_meansq += r * r;
        ev.residual_max = std::max(ev.residual_max, r);
    }
    ev.residual_mean /= tau_samples;
    ev.residual_meansq /= tau_samples;
    ev.align_defect_max = alignment_defect_max(model, helix, mode);
    return ev;
}

struct ScanParams {
    std::string model = "s3";
    double chi1_min = 0.05, chi1_max = 1.25;
    double chi2_min = 0.05, chi2_max = 1.25;
    int n1 = 31, n2 = 31;
    ReebMode mode = ReebMode::normal;
    double length = 5.0;
    double step = 1e-3;
    std::uint64_t seed = 12345;
    int jobs = 1;
    int tau_samples = 20;
    double locus_tol = 1e-3;
};

struct ScanCell {
    double chi1 = 0.0, chi2 = 0.0;
    double residual_mean = 0.0, residual_max = 0.0, align_defect_max = 0.0;
    std::uint64_t seed = 0;
    std::string status = "ok";
};

struct ScanResult {
    ScanParams params;
    std::vector<ScanCell> cells; // row-major: chi1 index outer, chi2 inner
};

inline void validate_scan_ranges(const ScanParams& p) {
    if (!(p.chi1_min > 0.0) || !(p.chi1_max <= 1.5) || !(p.chi1_min <= p.chi1_max))
        throw argument_error("scan: chi1 range must lie within (0, 1.5]");
    // chi2 may be negative: mirrored grids probe the chi_2 -> -chi_2 symmetry.
    if (!(p.chi2_min >= -1.5) || !(p.chi2_max <= 1.5) || !(p.chi2_min <= p.chi2_max))
        throw argument_error("scan: chi2 range must lie within [-1.5, 1.5]");
    if (p.n1 < 2 || p.n2 < 2) throw argument_error("scan: grid must be at least 2x2");
    if (p.jobs < 1) throw argument_error("scan: jobs must be >= 1");
}

inline ScanResult scan(const ManifoldModel& model, const ScanParams& params) {
    validate_scan_ranges(params);
    ScanResult result;
    result.params = params;
    result.cells.resize(static_cast<std::size_t>(params.n1) * params.n2);

    auto run_cell = [&](std::size_t idx) {
        const int i = static_cast<int>(idx) / params.n2;
        const int j = static_cast<int>(idx) % params.n2;
        ScanCell cell;
        cell.chi1 = params.chi1_min + (params.chi1_max - params.chi1_min) * i / (params.n1 - 1);
        cell.chi2 = params.chi2_min + (params.chi2_max - params.chi2_min) * j / (params.n2 - 1);
        cell.seed = substream_seed(params.seed, idx);
        try {
            const CellEvaluation ev = evaluate_cell(model, params.mode, cell.chi1, cell.chi2,
                                                    params.length, params.step,
                                                    params.tau_samples);
            cell.residual_mean = ev.residual_mean;
            cell.residual_max = ev.residual_max;
            cell.align_defect_max = ev.align_defect_max;
        } catch (const std::exception& e) {
            cell.status = std::string("error: ") + e.what();
            cell.residual_mean = std::numeric_limits<double>::quiet_NaN();
            cell.residual_max = std::numeric_limits<double>::quiet_NaN();
            cell.align_defect_max = std::numeric_limits<double>::quiet_NaN();
        }
        result.cells[idx] = std::move(cell);
    };

    const std::size_t total = result.cells.size();
    if (params.jobs <= 1) {
        for (std::size_t idx = 0; idx < total; ++idx) run_cell(idx);
    } else {
        std::atomic<std::size_t> next{0};
        auto worker = [&]() {
            for (;;) {
                const std::size_t idx = next.fetch_add(1);
                if (idx >= total) return;
                run_cell(idx);
            }
        };
        std::vector<std::thread> pool;
        const int nthreads = std::min<int>(params.jobs, static_cast<int>(total));
        pool.reserve(nthreads);
        for (int k = 0; k < nthreads; ++k) pool.emplace_back(worker);
        for (auto& th : pool) th.join();
    }
    return result;
}

struct FindResult {
    double chi1 = 0.0, chi2 = 0.0;
    double residual = 0.0; // mean ||tau_2|| at the returned point
    int iterations = 0;
    int evaluations = 0;
    bool converged = false;
    std::string reason;
};

// Minimize the cell's mean ||tau_2||^2 over (chi_1, chi_2) with Nelder-Mead.
// Out-of-box proposals are rejected with a large penalty before any
// integration happens.
inline FindResult find_biharmonic(const ManifoldModel& model, double chi1_0, double chi2_0,
                                  ReebMode mode, double length = 5.0, double step = 1e-3,
                                  int max_iterations = 500) {
    if (!(chi1_0 > 0.0)) throw argument_error("find_biharmonic: initial chi1 must be positive");

    auto objective = [&](const Vec& x) {
        const double c1 = x[0], c2 = x[1];
        if (c1 < 1e-3 || c1 > 1.6 || std::abs(c2) > 1.6) {
            const double over = std::max({1e-3 - c1, c1 - 1.6, std::abs(c2) - 1.6});
            return 1e6 * (1.0 + over * over);
        }
        // chi_2 enters the Frenet system through chi_2 N_2 only; the
        // residual is symmetric in its sign, so optimize over |chi_2|.
        const CellEvaluation ev =
            evaluate_cell(model, mode, c1, std::abs(c2), length, step);
        return ev.residual_meansq;
    };

    const SimplexResult sr =
        nelder_mead(objective, Vec{chi1_0, chi2_0}, 0.1, 1e-12, 1e-8, max_iterations);

    FindResult out;
    out.chi1 = sr.x[0];
    out.chi2 = std::abs(sr.x[1]);
    out.iterations = sr.iterations;
    out.evaluations = sr.evaluations;
    out.converged = sr.converged;
    out.reason = sr.reason;
    const CellEvaluation best = evaluate_cell(model, mode, out.chi1, out.chi2, length, step);
    out.residual = best.residual_mean;
    return out;
}

} // namespace reeblab
