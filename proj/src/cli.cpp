#include "spectral_seed/cli.hpp"

#include <cmath>
#include <fstream>
#include <iomanip>
#include <memory>
#include <ostream>
#include <sstream>

#include "CLI11.hpp"

#include "spectral_seed/datagen.hpp"
#include "spectral_seed/error.hpp"
#include "spectral_seed/io.hpp"
#include "spectral_seed/pipeline.hpp"
#include "spectral_seed/seeding.hpp"
#include "spectral_seed/spectral.hpp"

namespace spectral_seed {

namespace {

constexpr double kOracleTolerance = 1e-3;

struct GenerateOptions {
    std::string input;
    std::string output;
    std::uint64_t seed = 1;
};

struct DetectOptions {
    std::string input;
    std::string output;
    std::string trace_output;
    std::string emit_raster;
    std::string raster_output;
    RunConfig config;
};

struct KMeansOptions {
    std::string input;
    std::string peaks;
    std::string output;
    std::string assignments;
    int max_iter = kDefaultKMeansMaxIter;
    double tol = kDefaultKMeansTol;
};

struct OracleOptions {
    std::string input;
    std::string output;
    double sigma_tilde = 0.0;
    double sigma_n = 0.0;
    double dx = 0.0;
    double gap_fraction = kDefaultGapFraction;
    std::size_t grid_cap = kDefaultGridCap;
    std::size_t margin = kDefaultMarginPixels;
    bool no_margin = false;
};

void write_text(const std::string& path, const std::string& text) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw Error("cannot write " + path);
    out << text;
    if (!out) throw Error("write failed for " + path);
}

std::string sibling_path(const std::string& path, const std::string& suffix) {
    std::filesystem::path p(path);
    p.replace_extension();
    return p.string() + suffix;
}

int cmd_generate(const GenerateOptions& opt, std::ostream& out) {
    std::vector<ClusterSpec> specs;
    if (opt.input.empty()) {
        specs = table1_clusters();
    } else {
        std::ifstream in(opt.input);
        if (!in) throw Error("cannot open " + opt.input);
        nlohmann::json j;
        try {
            in >> j;
        } catch (const nlohmann::json::exception& e) {
            throw Error(std::string("cluster spec is not valid JSON: ") + e.what());
        }
        specs = cluster_specs_from_json(j);
    }
    const PointSet points = generate(specs, opt.seed);
    std::ostringstream csv;
    write_points_csv(csv, points);
    write_text(opt.output, csv.str());
    out << "wrote " << points.size() << " points to " << opt.output << "\n";
    return 0;
}

int cmd_detect(const DetectOptions& opt, std::ostream& out, std::ostream& err) {
    const PointSet points = read_points_csv(opt.input);
    if (points.size() < 2) throw Error("detect needs at least 2 points");

    PipelineResult run;
    try {
        run = run_pipeline(points, opt.config);
    } catch (const ConvergenceError& e) {
        err << "error: " << e.what() << "\n" << dump_json(to_json(e.trace()));
        return 3;
    }
    const Detection& det = run.detection;

    nlohmann::json j = to_json(det.peaks);
    j["config"] = to_json(opt.config);
    j["trace"] = to_json(det.trace);
    j["converged_n"] = det.trace.converged_n;
    j["grid"] = to_json(run.grid);
    j["estimated_dx"] = run.estimated_dx;
    j["points"] = points.size();
    j["occupied_pixels"] = run.density.occupied_count;
    j["collapsed_points"] = run.density.collapsed_count();
    write_text(opt.output, dump_json(j));

    if (!opt.trace_output.empty()) {
        write_text(opt.trace_output, dump_json(to_json(det.trace)));
    }
    if (!opt.emit_raster.empty()) {
        std::ostringstream raster;
        std::string path = opt.raster_output;
        if (opt.emit_raster == "pgm") {
            write_raster_pgm(raster, det.smoothed);
            if (path.empty()) path = sibling_path(opt.output, ".pgm");
        } else {
            write_raster_csv(raster, det.smoothed);
            if (path.empty()) path = sibling_path(opt.output, "_raster.csv");
        }
        write_text(path, raster.str());
    }
    out << "k=" << det.peaks.size() << " converged_n=" << det.trace.converged_n << " grid=" << run.grid.nx << "x"
        << run.grid.ny << " dx=" << run.grid.dx << "\n";
    return 0;
}

int cmd_kmeans(const KMeansOptions& opt, std::ostream& out) {
    const PointSet points = read_points_csv(opt.input);
    std::ifstream in(opt.peaks);
    if (!in) throw Error("cannot open " + opt.peaks);
    nlohmann::json peaks_json;
    try {
        in >> peaks_json;
    } catch (const nlohmann::json::exception& e) {
        throw Error(std::string("peaks file is not valid JSON: ") + e.what());
    }
    const PeakSet peaks = peaks_from_json(peaks_json);
    const KMeansResult result = seed_and_cluster(points, peaks, opt.max_iter, opt.tol);

    nlohmann::json j = to_json(result);
    nlohmann::json config = peaks_json.contains("config") ? peaks_json["config"] : to_json(RunConfig{});
    config["kmeans_max_iter"] = opt.max_iter;
    config["kmeans_tol"] = opt.tol;
    j["config"] = config;
    write_text(opt.output, dump_json(j));

    const std::string assignments_path =
        opt.assignments.empty() ? sibling_path(opt.output, "_assignments.csv") : opt.assignments;
    std::ostringstream csv;
    write_points_csv(csv, points, &result.assignments);
    write_text(assignments_path, csv.str());

    out << "k=" << result.k() << " iterations=" << result.iterations << " inertia=" << result.inertia << "\n";
    return 0;
}

int cmd_oracle_check(const OracleOptions& opt, std::ostream& out) {
    const PointSet points = read_points_csv(opt.input);
    double dx = opt.dx;
    if (dx <= 0.0) {
        if (points.size() < 2) throw Error("a single point needs an explicit --dx");
        dx = estimate_spacing(points, opt.gap_fraction);
    }
    const std::size_t margin = opt.no_margin ? 0 : opt.margin;
    const GridSpec grid = build_grid(points, dx, opt.grid_cap, margin);
    const DensityField field = rasterize(points, grid);
    if (field.occupied_count > kDirectOracleMaxOccupied) throw Error("input too large for the direct oracle");

    double sigma_tilde = opt.sigma_tilde;
    if (opt.sigma_n > 0.0) sigma_tilde = opt.sigma_n / grid.max_extent();
    if (!(sigma_tilde > 0.0)) throw Error("one of --sigma-tilde or --sigma-n is required");

    const OracleComparison cmp = compare_with_direct_oracle(field, sigma_tilde);
    const bool pass = cmp.max_interior_deviation <= kOracleTolerance;

    std::ostringstream line;
    line << std::setprecision(6) << "max_interior_deviation=" << cmp.max_interior_deviation
         << " interior_pixels=" << cmp.interior_pixels << " edge_band_px=" << cmp.edge_band_px
         << " argmax_match=" << (cmp.argmax_match ? "true" : "false") << " grid=" << grid.nx << "x" << grid.ny
         << " sigma_tilde=" << sigma_tilde << " " << (pass ? "PASS" : "FAIL") << "\n";
    out << line.str();

    if (!opt.output.empty()) {
        nlohmann::json j = {{"max_interior_deviation", cmp.max_interior_deviation},
                            {"interior_pixels", cmp.interior_pixels},
                            {"edge_band_px", cmp.edge_band_px},
                            {"argmax_match", cmp.argmax_match},
                            {"sigma_tilde", sigma_tilde},
                            {"tolerance", kOracleTolerance},
                            {"margin_px", margin},
                            {"grid", to_json(grid)},
                            {"pass", pass}};
        write_text(opt.output, dump_json(j));
    }
    return pass ? 0 : 1;
}

void add_run_config_flags(CLI::App* cmd, RunConfig& config) {
    cmd->add_option("--epsilon", config.epsilon, "Correlation-change stop threshold")
        ->check(CLI::PositiveNumber);
    cmd->add_option("--peak-threshold", config.peak_threshold, "Normalised density floor for peaks")
        ->check(CLI::Range(0.0, 0.999999));
    cmd->add_option("--gap-fraction", config.gap_fraction, "Fraction of points used for mesh spacing")
        ->check(CLI::Range(1e-12, 0.999999));
    cmd->add_option("--grid-cap", config.grid_cap, "Maximum pixels per axis")->check(CLI::Range(8, 1 << 16));
    cmd->add_option("--max-iter", config.max_iter_bandwidth, "Maximum bandwidth iterations")
        ->check(CLI::Range(2, 100000));
    cmd->add_option("--dx", config.dx, "Mesh spacing (default: estimated from point gaps)")
        ->check(CLI::PositiveNumber);
    cmd->add_option("--seed", config.seed, "Seed recorded in the output");
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Cluster-centroid estimation by spectral density smoothing", "spectral-seed"};
    app.require_subcommand(1);

    GenerateOptions gen;
    auto* generate_cmd = app.add_subcommand("generate", "Draw synthetic Gaussian clusters to CSV");
    generate_cmd->add_option("--input", gen.input, "Cluster spec JSON (default: built-in six-cluster table)");
    generate_cmd->add_option("--output", gen.output, "Output CSV")->required();
    generate_cmd->add_option("--seed", gen.seed, "Generator seed");

    DetectOptions det;
    auto* detect_cmd = app.add_subcommand("detect", "Estimate cluster count and centroids");
    detect_cmd->add_option("--input", det.input, "Point CSV")->required();
    detect_cmd->add_option("--output", det.output, "Peak JSON")->required();
    detect_cmd->add_option("--trace-output", det.trace_output, "Separate convergence-trace JSON");
    detect_cmd->add_option("--emit-raster", det.emit_raster, "Also write the smoothed density")
        ->check(CLI::IsMember({"csv", "pgm"}));
    detect_cmd->add_option("--raster-output", det.raster_output, "Raster path (default next to --output)");
    add_run_config_flags(detect_cmd, det.config);

    KMeansOptions km;
    auto* kmeans_cmd = app.add_subcommand("kmeans", "Run K-Means seeded by detected peaks");
    kmeans_cmd->add_option("--input", km.input, "Point CSV")->required();
    kmeans_cmd->add_option("--peaks", km.peaks, "Peak JSON from detect")->required();
    kmeans_cmd->add_option("--output", km.output, "Result JSON")->required();
    kmeans_cmd->add_option("--assignments", km.assignments, "Assignments CSV (default next to --output)");
    kmeans_cmd->add_option("--max-iter", km.max_iter, "Maximum Lloyd iterations")->check(CLI::PositiveNumber);
    kmeans_cmd->add_option("--tol", km.tol, "Centroid shift tolerance")->check(CLI::NonNegativeNumber);

    OracleOptions orc;
    auto* oracle_cmd = app.add_subcommand("oracle-check", "Compare FFT smoothing against the direct sum");
    oracle_cmd->add_option("--input", orc.input, "Point CSV")->required();
    oracle_cmd->add_option("--output", orc.output, "Optional report JSON");
    auto* st = oracle_cmd->add_option("--sigma-tilde", orc.sigma_tilde, "Frequency-domain sigma (1/data units)")
                   ->check(CLI::PositiveNumber);
    auto* sn = oracle_cmd->add_option("--sigma-n", orc.sigma_n, "Frequency-domain sigma as n / L")
                   ->check(CLI::PositiveNumber);
    st->excludes(sn);
    oracle_cmd->add_option("--dx", orc.dx, "Mesh spacing (default: estimated)")->check(CLI::PositiveNumber);
    oracle_cmd->add_option("--gap-fraction", orc.gap_fraction, "Fraction of points used for mesh spacing")
        ->check(CLI::Range(1e-12, 0.999999));
    oracle_cmd->add_option("--grid-cap", orc.grid_cap, "Maximum pixels per axis")->check(CLI::Range(8, 1 << 16));
    auto* margin = oracle_cmd->add_option("--margin", orc.margin, "Empty pixels around the data");
    oracle_cmd->add_flag("--no-margin", orc.no_margin, "Drop the boundary margin (shows wrap-around)")->excludes(margin);

    std::vector<std::string> reversed(args.rbegin(), args.rend());
    try {
        app.parse(std::move(reversed));
    } catch (const CLI::ParseError& e) {
        return app.exit(e, out, err);
    }

    try {
        if (generate_cmd->parsed()) return cmd_generate(gen, out);
        if (detect_cmd->parsed()) return cmd_detect(det, out, err);
        if (kmeans_cmd->parsed()) return cmd_kmeans(km, out);
        if (oracle_cmd->parsed()) return cmd_oracle_check(orc, out);
    } catch (const Error& e) {
        err << "error: " << e.what() << "\n";
        return 2;
    }
    return 1;
}

}  // namespace spectral_seed
