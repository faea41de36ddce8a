#include "ftda/cli.hpp"

#include <cmath>
#include <cstdio>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "ftda/io.hpp"
#include "ftda/parallel.hpp"

namespace ftda {

namespace {

FilteredComplex build_from_config(const RunConfig& config) {
    switch (config.kind) {
        case ComplexKind::Rips: return build_rips(config.cloud, config.metric, config.max_dim);
        case ComplexKind::Delta:
            return build_delta(config.cloud, config.metric, config.max_dim);
        case ComplexKind::CechForward:
            return build_cech(config.cloud, config.metric, config.max_dim,
                              Orientation::Forward, config.tol);
        case ComplexKind::CechBackward:
            return build_cech(config.cloud, config.metric, config.max_dim,
                              Orientation::Backward, config.tol);
    }
    throw ConfigError("unknown complex kind");
}

void emit(const std::optional<std::string>& path, const std::string& content,
          bool stdout_fallback = true) {
    if (path)
        write_file(*path, content);
    else if (stdout_fallback)
        std::cout << content;
}

int run_validate_metric(const std::string& metric_path, int samples, std::uint64_t seed) {
    MetricSpec metric = metric_from_json(read_file(metric_path));
    ValidationReport report = validate_metric(metric, samples, seed);
    auto line = [](const char* axiom, const AxiomCheck& check) {
        std::printf("%-18s %s  worst violation %.3e%s\n", axiom,
                    check.passed ? "pass" : "FAIL", check.worst,
                    check.worst_p.empty()
                        ? ""
                        : ("  at p = " + vec_to_string(check.worst_p)).c_str());
    };
    std::printf("metric %s, %d samples\n", metric.name.c_str(), report.samples);
    line("positivity", report.positivity);
    line("homogeneity", report.homogeneity);
    if (metric.is_symmetric) line("symmetry", report.symmetry);
    line("tensor PSD", report.tensor_psd);
    if (metric.one_form) line("one-form norm", report.one_form_norm);
    return report.passed() ? 0 : 1;
}

int run_distance(const std::string& metric_path, const std::string& points_path,
                 bool pairs) {
    MetricSpec metric = metric_from_json(read_file(metric_path));
    PointCloud cloud = point_cloud_from_json(read_file(points_path));
    const auto d = pointwise_distance_matrix(cloud, metric);
    if (pairs) {
        std::printf("i,j,distance\n");
        for (index_t i = 0; i < cloud.size(); ++i)
            for (index_t j = 0; j < cloud.size(); ++j)
                if (i != j) std::printf("%zu,%zu,%.17g\n", i, j, d[i][j]);
    } else {
        double dmin = 1e300, dmax = 0;
        for (index_t i = 0; i < cloud.size(); ++i)
            for (index_t j = 0; j < cloud.size(); ++j)
                if (i != j) {
                    dmin = std::min(dmin, d[i][j]);
                    dmax = std::max(dmax, d[i][j]);
                }
        std::printf("%zu points, pointwise distance range [%.9g, %.9g]\n", cloud.size(),
                    dmin, dmax);
    }
    return 0;
}

int run_complex(const std::string& config_path) {
    RunConfig config = load_run_config(config_path);
    FilteredComplex fc = build_from_config(config);
    emit(config.out_complex, complex_to_jsonl(fc));
    return 0;
}

int run_persistence(const std::string& config_path) {
    RunConfig config = load_run_config(config_path);
    FilteredComplex fc = build_from_config(config);
    PersistenceDiagram dgm = compute_persistence(fc);
    if (config.out_complex) write_file(*config.out_complex, complex_to_jsonl(fc));
    if (config.out_diagram_json) write_file(*config.out_diagram_json, diagram_to_json(dgm));
    emit(config.out_diagram_csv, diagram_to_csv(dgm));
    return 0;
}

int run_bottleneck(const std::string& a_path, const std::string& b_path, int dim) {
    PersistenceDiagram a = diagram_from_csv(read_file(a_path));
    PersistenceDiagram b = diagram_from_csv(read_file(b_path));
    try {
        std::printf("%.17g\n", bottleneck_distance(a, b, dim));
    } catch (const InfiniteMismatch&) {
        std::printf("inf\n");
    }
    return 0;
}

int run_stability(const std::string& config_path, double noise, int trials) {
    RunConfig config = load_run_config(config_path);
    std::string records;
    int violations = 0;
    std::vector<StabilityRecord> results(trials);
    parallel_for(trials, [&](index_t t) {
        results[t] = stability_trial(config.cloud, config.metric, noise, config.kind,
                                     config.max_dim, config.seed + t);
    });
    for (const auto& record : results) {
        records += stability_record_to_jsonl(record);
        for (const auto& d : record.dims)
            if (!d.pass) ++violations;
    }
    emit(config.out_records, records, false);
    if (!config.out_records) std::cout << records;
    std::printf("# %d trials, %d dimension records in violation of d_b <= dis/2\n", trials,
                violations);
    return violations == 0 ? 0 : 1;
}

int run_gen_circle(const std::string& spec_path, const std::optional<std::string>& out) {
    CircleSpec spec = circle_spec_from_json(read_file(spec_path));
    PointCloud cloud = gen_circle(spec);
    emit(out, point_cloud_to_json(cloud));
    return 0;
}

int run_check_inclusions(const std::string& config_path) {
    RunConfig config = load_run_config(config_path);
    const auto& metric = config.metric;
    const auto& cloud = config.cloud;
    const int max_dim = config.max_dim;

    FilteredComplex rips = build_rips(cloud, metric, max_dim);
    FilteredComplex delta = build_delta(cloud, metric, max_dim);
    FilteredComplex cech = build_cech(cloud, metric, max_dim, Orientation::Forward,
                                      config.tol);

    struct Row {
        std::string name;
        bool passed;
        std::string detail;
    };
    std::vector<Row> rows;
    auto push = [&](const std::string& name, const InclusionReport& r,
                    const std::string& extra = "") {
        char buf[64];
        std::snprintf(buf, sizeof buf, "max gap %.3e", r.max_gap);
        rows.push_back({name, r.passed, extra.empty() ? buf : extra + ", " + buf});
    };

    push("Rips(e) <= Delta(e)", verify_inclusion(rips, delta, 1.0));
    push("Delta(e) <= Rips(2e)", verify_inclusion(delta, rips, 2.0));
    push("Rips(e) <= Cech(e)", verify_inclusion(rips, cech, 1.0));
    {
        const double measured = measured_inclusion_delta(cech, cloud, metric);
        char buf[64];
        std::snprintf(buf, sizeof buf, "measured delta %.6g", measured);
        push("Cech(e) <= Rips(e+delta)", verify_inclusion(cech, rips, 1.0, measured), buf);
    }
    if (metric.is_symmetric)
        push("Cech(e) <= Rips(2e)", verify_inclusion(cech, rips, 2.0));
    if (metric.one_form) {
        double c = 0.0;
        for (const Vec& p : cloud.points) c = std::max(c, metric.one_form->beta_norm(p));
        const double s = (1.0 + c) / (1.0 - c);
        FilteredComplex cech_b =
            build_cech(cloud, metric, max_dim, Orientation::Backward, config.tol);
        char buf[64];
        std::snprintf(buf, sizeof buf, "c = %.6g", c);
        push("Cech-(e) <= Cech+(se)", verify_inclusion(cech_b, cech, s), buf);
        push("Cech+(se) <= Cech-(s^2 e)", verify_inclusion(cech, cech_b, s));
    }

    bool all = true;
    for (const auto& row : rows) {
        std::printf("%-28s %s  (%s)\n", row.name.c_str(), row.passed ? "pass" : "FAIL",
                    row.detail.c_str());
        all &= row.passed;
    }
    return all ? 0 : 1;
}

int run_plot_balls(const std::string& config_path, double radius,
                   const std::optional<std::string>& csv_out,
                   const std::optional<std::string>& svg_out) {
    RunConfig config = load_run_config(config_path);
    const Orientation orientation = config.kind == ComplexKind::CechBackward
                                        ? Orientation::Backward
                                        : Orientation::Forward;
    const std::string csv =
        ball_boundaries_to_csv(config.cloud, config.metric, radius, orientation);
    const std::string svg = ball_plot_svg(config.cloud, config.metric, radius, orientation);
    if (csv_out) write_file(*csv_out, csv);
    if (svg_out) write_file(*svg_out, svg);
    if (!csv_out && !svg_out) std::cout << csv;
    return 0;
}

}  // namespace

int cli_dispatch(int argc, const char* const* argv) {
    CLI::App app{"topological data analysis over Finsler quasi-metric spaces"};
    app.require_subcommand(1);

    std::size_t threads = 0;
    app.add_option("--threads", threads, "cap worker threads (0 = hardware)");

    std::string metric_path, points_path, config_path, a_path, b_path, spec_path;
    std::optional<std::string> out, csv_out, svg_out;
    int samples = 200, dim = 1, trials = 100;
    std::uint64_t seed = default_seed();
    double noise = 0.01, radius = 1.0;
    bool pairs = false;

    auto* validate = app.add_subcommand("validate-metric", "check the Finsler axioms");
    validate->add_option("metric", metric_path)->required();
    validate->add_option("--samples", samples);
    validate->add_option("--seed", seed);

    auto* dist = app.add_subcommand("distance", "pointwise quasi-distances of a cloud");
    dist->add_option("metric", metric_path)->required();
    dist->add_option("points", points_path)->required();
    dist->add_flag("--pairs", pairs, "print one row per ordered pair");

    auto* complex_cmd = app.add_subcommand("complex", "build a filtered complex (JSONL)");
    complex_cmd->add_option("config", config_path)->required();

    auto* pers = app.add_subcommand("persistence", "persistence diagram (CSV/JSON)");
    pers->add_option("config", config_path)->required();

    auto* bott = app.add_subcommand("bottleneck", "bottleneck distance of two diagrams");
    bott->add_option("diagram_a", a_path)->required();
    bott->add_option("diagram_b", b_path)->required();
    bott->add_option("--dim", dim);

    auto* stab = app.add_subcommand("stability", "noisy-trial stability harness");
    stab->add_option("config", config_path)->required();
    stab->add_option("--noise", noise);
    stab->add_option("--trials", trials);

    auto* circle = app.add_subcommand("gen-circle", "synthetic circle point cloud");
    circle->add_option("spec", spec_path)->required();
    circle->add_option("-o,--out", out);

    auto* incl = app.add_subcommand("check-inclusions", "inclusion propositions table");
    incl->add_option("config", config_path)->required();

    auto* plot = app.add_subcommand("plot-balls", "2-D ball boundaries (CSV/SVG)");
    plot->add_option("config", config_path)->required();
    plot->add_option("--radius", radius)->required();
    plot->add_option("--csv", csv_out);
    plot->add_option("--svg", svg_out);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    if (threads) set_worker_count(threads);

    try {
        if (*validate) return run_validate_metric(metric_path, samples, seed);
        if (*dist) return run_distance(metric_path, points_path, pairs);
        if (*complex_cmd) return run_complex(config_path);
        if (*pers) return run_persistence(config_path);
        if (*bott) return run_bottleneck(a_path, b_path, dim);
        if (*stab) return run_stability(config_path, noise, trials);
        if (*circle) return run_gen_circle(spec_path, out);
        if (*incl) return run_check_inclusions(config_path);
        if (*plot) return run_plot_balls(config_path, radius, csv_out, svg_out);
    } catch (const ConfigError& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return 2;
    } catch (const DimensionMismatch& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 2;
}

}  // namespace ftda
