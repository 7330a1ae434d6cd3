#pragma once

// Aggregated reports behind the CLI: structure verification sweeps, the
// per-curve analysis table with its characterization verdict, named preset
// curves, and the serializers for scan/find results. Everything here is
// deterministic under a fixed seed; none of the emitted JSON or CSV contains
// timestamps or machine identifiers, so reruns are byte-identical.

#include <cmath>
#include <cstdint>
#include <limits>
#include <map>
#include <set>
#include <string>
#include <vector>

#include "reeblab/biharmonic.hpp"
#include "reeblab/contact.hpp"
#include "reeblab/curve.hpp"
#include "reeblab/errors.hpp"
#include "reeblab/frenet.hpp"
#include "reeblab/helix_lab.hpp"
#include "reeblab/io.hpp"
#include "reeblab/jet.hpp"
#include "reeblab/models.hpp"
#include "reeblab/rng.hpp"

namespace reeblab {

// ---------------------------------------------------------------------------
// verify

struct VerifyOptions {
    int points = 200;       // sampled base points per model
    int pair_trials = 20;   // random tangent pairs per point (compatibility, Sasakian)
    int reeb_trials = 5;    // (p, X) samples per point for the Reeb curvature identity
    std::uint64_t seed = 7;
    double tolerance = 0.0; // <= 0 keeps the model's tolerance tier
};

struct VerifyReport {
    std::string model;
    double tolerance = 0.0;
    int points = 0;
    bool pass = true;
    long checks_run = 0;
    long checks_failed = 0;
    std::map<std::string, double> worst; // per check: max residual (nondegeneracy: min |det|)
    json records = json::array();
};

inline json check_result_to_json(const CheckResult& r) {
    json j;
    j["check_name"] = r.check_name;
    j["point"] = r.point.coords;
    j["labels"] = r.labels;
    j["residuals"] = r.residuals;
    j["tolerance"] = r.tolerance;
    j["pass"] = r.pass;
    return j;
}

inline VerifyReport run_verify(const ManifoldModel& model, const VerifyOptions& opt = {}) {
    if (opt.points < 1) throw argument_error("verify: points must be >= 1");
    if (opt.pair_trials < 1 || opt.reeb_trials < 0)
        throw argument_error("verify: trial counts out of range");

    VerifyReport rep;
    rep.model = model.name;
    rep.points = opt.points;
    rep.tolerance = opt.tolerance > 0.0 ? opt.tolerance : model.tolerance_tier;

    Rng rng(substream_seed(opt.seed, 0));
    auto absorb = [&](CheckResult r, bool lower_bound) {
        if (opt.tolerance > 0.0 && !lower_bound) {
            r.tolerance = opt.tolerance;
            r.pass = r.worst() <= r.tolerance;
        }
        ++rep.checks_run;
        if (!r.pass) {
            ++rep.checks_failed;
            rep.pass = false;
        }
        auto it = rep.worst.find(r.check_name);
        if (it == rep.worst.end())
            rep.worst[r.check_name] = r.worst();
        else if (lower_bound)
            it->second = std::min(it->second, r.worst());
        else
            it->second = std::max(it->second, r.worst());
        rep.records.push_back(check_result_to_json(r));
    };

    for (int i = 0; i < opt.points; ++i) {
        const Point p = sample_point(model, rng);
        absorb(verify_almost_contact(model, p), false);
        absorb(verify_metric_compatibility(model, p, opt.pair_trials, rng), false);
        absorb(verify_sasakian(model, p, opt.pair_trials, rng), false);
        absorb(contact_nondegeneracy(model, p), true);
        for (int k = 0; k < opt.reeb_trials; ++k) {
            const TangentVector x = random_horizontal_unit(model, p, rng);
            absorb(check_reeb_curvature_identity(model, p, x.components), false);
        }
    }
    return rep;
}

inline json verify_report_to_json(const VerifyReport& rep, const VerifyOptions& opt) {
    json j;
    j["model"] = rep.model;
    j["points"] = rep.points;
    j["pair_trials"] = opt.pair_trials;
    j["reeb_trials"] = opt.reeb_trials;
    j["seed"] = opt.seed;
    j["tolerance"] = rep.tolerance;
    j["pass"] = rep.pass;
    j["checks_run"] = rep.checks_run;
    j["checks_failed"] = rep.checks_failed;
    json w = json::object();
    for (const auto& [name, val] : rep.worst) w[name] = val;
    j["worst"] = w;
    j["records"] = rep.records;
    return j;
}

// ---------------------------------------------------------------------------
// analyze

struct AnalyzeOptions {
    int samples = 200;
    double tol_char = 1e-4; // characterization tolerance
};

struct AnalyzeRow {
    double s = 0.0;
    double chi1 = 0.0, chi2 = 0.0, chi3 = 0.0;
    double tau2_norm = 0.0, route_gap = 0.0;
    double eta_t = 0.0, n1_defect = 0.0;
};

struct AnalyzeReport {
    std::vector<AnalyzeRow> rows;
    CharacterizationVerdict verdict;
    bool reparametrized = false;
    bool tangent_aligned = false;   // |eta(T)| = 1 within alignment_eps at every sample
    double max_tension_norm = 0.0;  // worst ||nabla_T T|| over the samples
    double max_align_defect = 0.0;  // worst of min(tangent reading, normal reading)
    std::vector<std::string> warnings;
};

inline AnalyzeReport run_analyze(const Curve& input, const AnalyzeOptions& opt = {}) {
    if (opt.samples < 2) throw argument_error("analyze: need at least 2 samples");

    AnalyzeReport rep;
    Curve c = input;
    if (!c.is_unit_speed()) {
        c = arc_length_reparametrize(c);
        rep.reparametrized = true;
        rep.warnings.push_back("input curve is not unit speed; reparametrized by arc length");
    }
    if (c.is_sampled()) {
        if (c.sample_count() < 20)
            rep.warnings.push_back("sampled curve has only " + std::to_string(c.sample_count()) +
                                   " points; high-order derivatives will be noisy");
        if (c.grid_spacing() > 0.01 * (c.s_end() - c.s_begin()))
            rep.warnings.push_back("sample spacing is coarse relative to the curve length; "
                                   "high-order derivatives will be noisy");
    }

    const double span = c.s_end() - c.s_begin();
    const double margin = std::min(0.2 * span, 10.0 * field_fd_spacing(c));
    const int depth = std::min(3, c.model().dim - 1);
    const double nan = std::numeric_limits<double>::quiet_NaN();

    std::vector<FrenetApparatus> series;
    std::set<std::string> seen_errors;
    bool tangent_aligned = true;

    for (int i = 0; i < opt.samples; ++i) {
        const double s =
            c.s_begin() + margin + (span - 2.0 * margin) * double(i) / (opt.samples - 1);
        AnalyzeRow row;
        row.s = s;
        try {
            const FrenetApparatus ap = frenet_apparatus(c, s, depth);
            const BitensionReport br = bitension_report(c, s);
            const ReebAlignment al = reeb_alignment(c, s);
            const Mat g = metric(c.model(), c.point(s));
            const std::size_t rank = ap.curvatures.size();

            row.chi1 = rank > 0 ? ap.curvatures[0] : gnorm(g, br.tau1);
            // A curvature is zero when the frame stopped early (truncation),
            // and undefined (nan) when the frame filled the whole dimension.
            row.chi2 = rank > 1 ? ap.curvatures[1] : (rank == 1 && ap.truncated ? 0.0 : nan);
            row.chi3 = rank > 2 ? ap.curvatures[2] : (rank == 2 && ap.truncated ? 0.0 : nan);
            row.tau2_norm = gnorm(g, br.tau2_direct);
            row.route_gap = br.route_gap;
            row.eta_t = al.eta_t;
            row.n1_defect = al.n1_defect;

            rep.max_tension_norm = std::max(rep.max_tension_norm, gnorm(g, br.tau1));
            const double tangent_defect = 1.0 - std::abs(al.eta_t);
            rep.max_align_defect =
                std::max(rep.max_align_defect, std::min(tangent_defect, al.n1_defect));
            if (tangent_defect > alignment_eps) tangent_aligned = false;
            series.push_back(ap);
        } catch (const std::exception& e) {
            row.chi1 = row.chi2 = row.chi3 = nan;
            row.tau2_norm = row.route_gap = row.eta_t = row.n1_defect = nan;
            if (seen_errors.insert(e.what()).second)
                rep.warnings.push_back(std::string("sample skipped: ") + e.what());
            tangent_aligned = false;
        }
        rep.rows.push_back(row);
    }

    rep.tangent_aligned = tangent_aligned;
    if (series.size() >= 2) {
        rep.verdict = check_characterization(series, opt.tol_char);
    } else {
        rep.verdict.passes = false;
        rep.verdict.verdict = "analysis failed: too few resolvable samples for a verdict";
    }
    if (rep.tangent_aligned)
        rep.warnings.push_back(
            "curve is tangent to the Reeb field; nabla_T T vanishes (max " +
            format_g17(rep.max_tension_norm) +
            "), so the non-geodesic tangent-alignment hypothesis is vacuous here");
    return rep;
}

inline std::string analyze_csv(const AnalyzeReport& rep) {
    std::string out = "s,chi1,chi2,chi3,tau2_norm,route_gap,eta_T,n1_defect\n";
    for (const auto& r : rep.rows) {
        out += format_g17(r.s) + ',' + format_g17(r.chi1) + ',' + format_g17(r.chi2) + ',' +
               format_g17(r.chi3) + ',' + format_g17(r.tau2_norm) + ',' +
               format_g17(r.route_gap) + ',' + format_g17(r.eta_t) + ',' +
               format_g17(r.n1_defect) + '\n';
    }
    return out;
}

inline json verdict_to_json(const CharacterizationVerdict& v) {
    json j;
    j["verdict"] = v.verdict;
    j["passes"] = v.passes;
    j["is_geodesic"] = v.is_geodesic;
    j["is_helix"] = v.is_helix;
    j["chi1_constant"] = v.chi1_constant;
    j["chi1_in_range"] = v.chi1_in_range;
    j["on_circle"] = v.on_circle;
    j["chi2_chi3_vanishes"] = v.chi2_chi3_vanishes;
    j["chi1"] = v.chi1;
    j["chi2"] = v.chi2;
    j["chi3"] = v.chi3;
    j["circle_gap"] = v.circle_gap;
    return j;
}

inline json analyze_footer_json(const AnalyzeReport& rep) {
    json j;
    j["verdict"] = verdict_to_json(rep.verdict);
    j["reparametrized"] = rep.reparametrized;
    j["warnings"] = rep.warnings;
    j["max_align_defect"] = rep.max_align_defect;
    if (rep.tangent_aligned) {
        json t;
        t["max_tension_norm"] = rep.max_tension_norm;
        t["note"] = "tangent Reeb alignment forces the curve to be a geodesic; "
                    "the non-geodesic tangent case is vacuous";
        j["tangent_case"] = t;
    }
    return j;
}

// ---------------------------------------------------------------------------
// presets

struct Preset {
    std::string name;
    std::string model;
    std::string description;
};

inline std::vector<Preset> preset_catalog() {
    return {
        {"clifford", "s3", "biharmonic helix on the 3-sphere, chi = (0.6, 0.8), s in [0, 10]"},
        {"great-circle", "s3", "great-circle geodesic, s in [0, 2 pi]"},
        {"small-circle", "s3", "latitude circle with chi_1 = 1, chi_2 = 0, s in [0, 6]"},
        {"reeb", "r3", "integral curve of the Reeb field through the origin, s in [0, 5]"},
        {"reeb5", "r5", "integral curve of the Reeb field through the origin, s in [0, 5]"},
        {"line", "flat-control", "straight line in the flat control model, s in [0, 5]"},
        {"wobble", "r3", "non-unit-speed, non-helix test curve, s in [0, 5]"},
    };
}

inline std::string preset_model_name(const std::string& preset) {
    for (const auto& p : preset_catalog())
        if (p.name == preset) return p.model;
    std::string names;
    for (const auto& p : preset_catalog()) names += (names.empty() ? "" : ", ") + p.name;
    throw argument_error("unknown preset '" + preset + "' (known: " + names + ")");
}

inline Curve make_preset_curve(const std::string& preset, const ManifoldModel& model) {
    const std::string want = preset_model_name(preset);
    if (model.name != want)
        throw argument_error("preset '" + preset + "' is defined on model " + want + ", not " +
                             model.name);
    const double inv_sqrt2 = 1.0 / std::sqrt(2.0);
    if (preset == "clifford") {
        const double a = std::sqrt(1.6), b = std::sqrt(0.4);
        return Curve::from_jets(model, 0.0, 10.0, [=](const Jet& t) {
            return std::vector<Jet>{inv_sqrt2 * cos(a * t), inv_sqrt2 * sin(a * t),
                                    inv_sqrt2 * cos(b * t), inv_sqrt2 * sin(b * t)};
        });
    }
    if (preset == "great-circle") {
        return Curve::from_jets(model, 0.0, 2.0 * std::acos(-1.0), [](const Jet& t) {
            return std::vector<Jet>{cos(t), sin(t), Jet(0.0), Jet(0.0)};
        });
    }
    if (preset == "small-circle") {
        const double a = std::sqrt(2.0);
        return Curve::from_jets(model, 0.0, 6.0, [=](const Jet& t) {
            return std::vector<Jet>{inv_sqrt2 * cos(a * t), inv_sqrt2 * sin(a * t),
                                    Jet(inv_sqrt2), Jet(0.0)};
        });
    }
    if (preset == "reeb" || preset == "reeb5") {
        const int d = model.ambient_dim;
        return Curve::from_jets(model, 0.0, 5.0, [d](const Jet& t) {
            std::vector<Jet> c(d, Jet(0.0));
            c[d - 1] = 2.0 * t;
            return c;
        });
    }
    if (preset == "line") {
        return Curve::from_jets(model, 0.0, 5.0, [](const Jet& t) {
            return std::vector<Jet>{t, Jet(0.0), Jet(0.0)};
        });
    }
    // wobble: deliberately not unit speed and not a helix
    return Curve::from_jets(model, 0.0, 5.0, [](const Jet& t) {
        return std::vector<Jet>{0.6 * sin(t), 0.6 * cos(1.1 * t), 0.25 * sin(0.7 * t)};
    });
}

// ---------------------------------------------------------------------------
// scan / find serialization

inline std::string reeb_mode_name(ReebMode mode) {
    return mode == ReebMode::tangent ? "tangent" : "normal";
}

inline std::string scan_csv(const ScanResult& r) {
    std::string out = "chi1,chi2,residual_mean,residual_max,align_defect_max,status\n";
    for (const auto& c : r.cells) {
        std::string status = c.status;
        for (char& ch : status)
            if (ch == ',' || ch == '\n') ch = ';';
        out += format_g17(c.chi1) + ',' + format_g17(c.chi2) + ',' +
               format_g17(c.residual_mean) + ',' + format_g17(c.residual_max) + ',' +
               format_g17(c.align_defect_max) + ',' + status + '\n';
    }
    return out;
}

inline json scan_summary_json(const ScanResult& r) {
    const ScanParams& p = r.params;
    json j;
    j["model"] = p.model;
    j["mode"] = reeb_mode_name(p.mode);
    j["chi1"] = {{"min", p.chi1_min}, {"max", p.chi1_max}, {"count", p.n1}};
    j["chi2"] = {{"min", p.chi2_min}, {"max", p.chi2_max}, {"count", p.n2}};
    j["length"] = p.length;
    j["step"] = p.step;
    j["tau_samples"] = p.tau_samples;
    j["seed"] = p.seed;
    j["seed_derivation"] = "cell seed = substream_seed(seed, row_major_index)";
    j["locus_tolerance"] = p.locus_tol;

    long failed = 0;
    json locus = json::array();
    for (const auto& c : r.cells) {
        if (c.status != "ok") {
            ++failed;
            continue;
        }
        if (c.residual_mean < p.locus_tol) {
            json cell;
            cell["chi1"] = c.chi1;
            cell["chi2"] = c.chi2;
            cell["residual_mean"] = c.residual_mean;
            cell["residual_max"] = c.residual_max;
            cell["align_defect_max"] = c.align_defect_max;
            cell["circle_distance"] = std::abs(std::hypot(c.chi1, c.chi2) - 1.0);
            cell["seed"] = c.seed;
            locus.push_back(cell);
        }
    }
    j["cells"] = static_cast<long>(r.cells.size());
    j["failed_cells"] = failed;
    j["locus_cells"] = locus;
    return j;
}

inline json find_json(const std::string& model_name, ReebMode mode, double chi1_0, double chi2_0,
                      const FindResult& fr) {
    json j;
    j["model"] = model_name;
    j["mode"] = reeb_mode_name(mode);
    j["start"] = {{"chi1", chi1_0}, {"chi2", chi2_0}};
    j["result"] = {{"chi1", fr.chi1},           {"chi2", fr.chi2},
                   {"residual", fr.residual},   {"iterations", fr.iterations},
                   {"evaluations", fr.evaluations}, {"converged", fr.converged},
                   {"reason", fr.reason}};
    j["locus_gap"] = std::abs(fr.chi1 * fr.chi1 + fr.chi2 * fr.chi2 - 1.0);
    return j;
}

} // namespace reeblab
