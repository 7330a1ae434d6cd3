// Command-line surface: structure verification, curve analysis, residual
// scans, and locus search. Every command writes machine-readable reports
// (CSV/JSON, 17 significant digits, no timestamps) into --out, so repeated
// runs with the same flags and seed produce byte-identical files.
//
// Exit codes: 0 success, 1 checks failed or computation failed, 2 usage or
// input error (unknown model, malformed CSV, invalid ranges).

#include <cstdint>
#include <filesystem>
#include <iostream>
#include <string>

#include <CLI11.hpp>

#include <reeblab/reeblab.hpp>

namespace {

using namespace reeblab;

std::string sanitize_name(const std::string& raw) {
    std::string out;
    for (char c : raw)
        out += (std::isalnum(static_cast<unsigned char>(c)) || c == '-' || c == '_') ? c : '_';
    return out.empty() ? std::string("curve") : out;
}

std::string output_dir(const std::string& dir) {
    std::error_code ec;
    std::filesystem::create_directories(dir, ec);
    if (ec) throw argument_error("cannot create output directory '" + dir + "': " + ec.message());
    return dir;
}

struct VerifyArgs {
    std::string model;
    std::string out = ".";
    int points = 200;
    int trials = 20;
    int reeb_trials = 5;
    std::uint64_t seed = 7;
    double tol_verify = 0.0;
};

int cmd_verify(const VerifyArgs& a) {
    const ManifoldModel model = model_by_name(a.model);
    VerifyOptions opt;
    opt.points = a.points;
    opt.pair_trials = a.trials;
    opt.reeb_trials = a.reeb_trials;
    opt.seed = a.seed;
    opt.tolerance = a.tol_verify;
    const VerifyReport rep = run_verify(model, opt);

    const std::string path = output_dir(a.out) + "/verify_" + model.name + ".json";
    write_text_file(path, verify_report_to_json(rep, opt).dump(2) + "\n");

    std::cout << "verify " << model.name << ": " << (rep.pass ? "pass" : "FAIL") << " ("
              << rep.checks_failed << " of " << rep.checks_run << " checks failed, tolerance "
              << format_g17(rep.tolerance) << ")\n";
    for (const auto& [name, worst] : rep.worst)
        std::cout << "  " << name << ": worst " << format_g17(worst) << "\n";
    std::cout << "report: " << path << "\n";
    return rep.pass ? 0 : 1;
}

struct AnalyzeArgs {
    std::string model;
    std::string curve;
    std::string out = ".";
    int samples = 200;
    double tol_char = 1e-4;
};

int cmd_analyze(const AnalyzeArgs& a) {
    const bool is_preset = [&] {
        for (const auto& p : preset_catalog())
            if (p.name == a.curve) return true;
        return false;
    }();

    std::string model_name = a.model;
    std::string curve_name;
    if (is_preset) {
        const std::string preset_model = preset_model_name(a.curve);
        if (model_name.empty()) model_name = preset_model;
        curve_name = a.curve;
    } else {
        if (model_name.empty())
            throw argument_error("analyze: --model is required when --curve is a file");
        curve_name = sanitize_name(std::filesystem::path(a.curve).stem().string());
    }
    const ManifoldModel model = model_by_name(model_name);
    const Curve curve =
        is_preset ? make_preset_curve(a.curve, model) : read_curve_csv(model, a.curve);

    AnalyzeOptions opt;
    opt.samples = a.samples;
    opt.tol_char = a.tol_char;
    const AnalyzeReport rep = run_analyze(curve, opt);

    const std::string base = output_dir(a.out) + "/analyze_" + model.name + "_" + curve_name;
    write_text_file(base + ".csv", analyze_csv(rep));
    write_text_file(base + ".json", analyze_footer_json(rep).dump(2) + "\n");

    for (const auto& w : rep.warnings) std::cerr << "warning: " << w << "\n";
    std::cout << "analyze " << model.name << "/" << curve_name << ": " << rep.verdict.verdict
              << "\n";
    std::cout << "series: " << base << ".csv\nverdict: " << base << ".json\n";
    return 0;
}

struct ScanArgs {
    std::string model = "s3";
    std::string mode = "normal";
    std::string out = ".";
    double chi1_min = 0.05, chi1_max = 1.25;
    double chi2_min = 0.05, chi2_max = 1.25;
    int n1 = 31, n2 = 31;
    double length = 5.0, step = 1e-3;
    std::uint64_t seed = 12345;
    int jobs = 1;
    int tau_samples = 20;
    double tol_locus = 1e-3;
};

int cmd_scan(const ScanArgs& a) {
    const ManifoldModel model = model_by_name(a.model);
    ScanParams params;
    params.model = model.name;
    params.chi1_min = a.chi1_min;
    params.chi1_max = a.chi1_max;
    params.chi2_min = a.chi2_min;
    params.chi2_max = a.chi2_max;
    params.n1 = a.n1;
    params.n2 = a.n2;
    params.mode = reeb_mode_from_string(a.mode);
    params.length = a.length;
    params.step = a.step;
    params.seed = a.seed;
    params.jobs = a.jobs;
    params.tau_samples = a.tau_samples;
    params.locus_tol = a.tol_locus;
    validate_scan_ranges(params); // fail before any integration starts

    const ScanResult result = scan(model, params);
    const json summary = scan_summary_json(result);

    const std::string base =
        output_dir(a.out) + "/scan_" + model.name + "_" + reeb_mode_name(params.mode);
    write_text_file(base + ".csv", scan_csv(result));
    write_text_file(base + "_summary.json", summary.dump(2) + "\n");

    std::cout << "scan " << model.name << " (" << reeb_mode_name(params.mode) << "): "
              << summary["locus_cells"].size() << " locus cells (residual_mean < "
              << format_g17(params.locus_tol) << ") out of " << result.cells.size() << ", "
              << summary["failed_cells"].get<long>() << " failed\n";
    std::cout << "grid: " << base << ".csv\nsummary: " << base << "_summary.json\n";
    return 0;
}

struct FindArgs {
    std::string model = "s3";
    std::string mode = "normal";
    std::string out = ".";
    double chi1 = 0.5, chi2 = 0.5;
    double length = 5.0, step = 1e-3;
    int max_iter = 500;
};

int cmd_find(const FindArgs& a) {
    const ManifoldModel model = model_by_name(a.model);
    const ReebMode mode = reeb_mode_from_string(a.mode);
    const FindResult fr =
        find_biharmonic(model, a.chi1, a.chi2, mode, a.length, a.step, a.max_iter);

    const std::string path = output_dir(a.out) + "/find_" + model.name + ".json";
    write_text_file(path, find_json(model.name, mode, a.chi1, a.chi2, fr).dump(2) + "\n");

    std::cout << "find " << model.name << ": " << (fr.converged ? "converged" : "NOT converged")
              << " at chi = (" << format_g17(fr.chi1) << ", " << format_g17(fr.chi2)
              << "), residual " << format_g17(fr.residual) << ", " << fr.iterations
              << " iterations (" << fr.reason << ")\n";
    std::cout << "report: " << path << "\n";
    return fr.converged ? 0 : 1;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Numerical laboratory for biharmonic curves in Sasakian model spaces"};
    app.require_subcommand(1);

    VerifyArgs va;
    CLI::App* verify = app.add_subcommand("verify", "Check the contact/Sasakian structure of a model");
    verify->add_option("--model", va.model, "Model name (r3, r5, s3, flat-control)")->required();
    verify->add_option("--points", va.points, "Sampled base points");
    verify->add_option("--trials", va.trials, "Random tangent pairs per point");
    verify->add_option("--reeb-trials", va.reeb_trials, "Reeb curvature identity samples per point");
    verify->add_option("--seed", va.seed, "RNG seed");
    verify->add_option("--tol-verify", va.tol_verify, "Residual tolerance (default: model tier)");
    verify->add_option("--out", va.out, "Output directory");

    AnalyzeArgs aa;
    CLI::App* analyze = app.add_subcommand("analyze", "Frenet/bitension analysis of a curve");
    analyze->add_option("--curve", aa.curve, "Preset name or CSV file (header s,c1,...,cd)")
        ->required();
    analyze->add_option("--model", aa.model, "Model name (defaults to the preset's model)");
    analyze->add_option("--samples", aa.samples, "Number of parameter samples");
    analyze->add_option("--tol-char", aa.tol_char, "Characterization tolerance");
    analyze->add_option("--out", aa.out, "Output directory");

    ScanArgs sa;
    CLI::App* scan_cmd = app.add_subcommand("scan", "Sweep a (chi1, chi2) grid of helices");
    scan_cmd->add_option("--model", sa.model, "Model name");
    scan_cmd->add_option("--mode", sa.mode, "Reeb alignment of the initial frame (tangent|normal)");
    scan_cmd->add_option("--chi1-min", sa.chi1_min, "Lower chi1 bound (> 0)");
    scan_cmd->add_option("--chi1-max", sa.chi1_max, "Upper chi1 bound (<= 1.5)");
    scan_cmd->add_option("--chi2-min", sa.chi2_min, "Lower chi2 bound (>= -1.5)");
    scan_cmd->add_option("--chi2-max", sa.chi2_max, "Upper chi2 bound (<= 1.5)");
    scan_cmd->add_option("--n1", sa.n1, "Grid points along chi1");
    scan_cmd->add_option("--n2", sa.n2, "Grid points along chi2");
    scan_cmd->add_option("--length", sa.length, "Helix length");
    scan_cmd->add_option("--step", sa.step, "Integrator step");
    scan_cmd->add_option("--tau-samples", sa.tau_samples, "Bitension samples per cell");
    scan_cmd->add_option("--seed", sa.seed, "Base seed for per-cell substreams");
    scan_cmd->add_option("--jobs", sa.jobs, "Parallel cell evaluations");
    scan_cmd->add_option("--tol-locus", sa.tol_locus, "Residual threshold for locus cells");
    scan_cmd->add_option("--out", sa.out, "Output directory");

    FindArgs fa;
    CLI::App* find_cmd = app.add_subcommand("find", "Minimize the bitension residual over (chi1, chi2)");
    find_cmd->add_option("--model", fa.model, "Model name");
    find_cmd->add_option("--mode", fa.mode, "Reeb alignment of the initial frame (tangent|normal)");
    find_cmd->add_option("--chi1", fa.chi1, "Starting chi1 (> 0)")->required();
    find_cmd->add_option("--chi2", fa.chi2, "Starting chi2")->required();
    find_cmd->add_option("--length", fa.length, "Helix length");
    find_cmd->add_option("--step", fa.step, "Integrator step");
    find_cmd->add_option("--max-iter", fa.max_iter, "Simplex iteration cap");
    find_cmd->add_option("--out", fa.out, "Output directory");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e); // prints help or the parse error itself
        return code == 0 ? 0 : 2;
    }

    try {
        if (verify->parsed()) return cmd_verify(va);
        if (analyze->parsed()) return cmd_analyze(aa);
        if (scan_cmd->parsed()) return cmd_scan(sa);
        if (find_cmd->parsed()) return cmd_find(fa);
        std::cerr << "error: no subcommand\n";
        return 2;
    } catch (const argument_error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const parse_error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
}
