#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "ftda/complexes.hpp"
#include "ftda/metrics.hpp"
#include "ftda/persistence.hpp"
#include "ftda/stability.hpp"
#include "ftda/types.hpp"

namespace ftda {

// Equally spaced points on a circle; in 3-D the in-plane frame is seeded from
// the coordinate axis least aligned with the normal (scan order y, x, z),
// which pins the starting phase.
struct CircleSpec {
    Vec center;
    double radius = 1.0;
    Vec normal;  // ignored in 2-D
    int count = 3;
};

PointCloud gen_circle(const CircleSpec& spec);

// The synthetic 13-point dataset: circle of radius 6 centered at (14,15,10)
// in the plane with normal (1,1,1).
PointCloud appendix_circle();

// ---- JSON / CSV / JSONL formats -------------------------------------------

// {"dimension": n, "points": [[...],...], "labels": [...]}
std::string point_cloud_to_json(const PointCloud& cloud);
PointCloud point_cloud_from_json(const std::string& text);

// {"name":..., "dimension":..., "params": {...}, "one_form": {"kind":..., "params": {...}}}
MetricSpec metric_from_json(const std::string& text);

std::string circle_spec_to_json(const CircleSpec& spec);
CircleSpec circle_spec_from_json(const std::string& text);

// one record per simplex: {"v": [indices], "t": value}, in reduction order
std::string complex_to_jsonl(const FilteredComplex& fc);

// header dim,birth,death; "inf" for essential bars; zero-length bars dropped
std::string diagram_to_csv(const PersistenceDiagram& dgm);
std::string diagram_to_json(const PersistenceDiagram& dgm);
PersistenceDiagram diagram_from_csv(const std::string& text);

std::string stability_record_to_jsonl(const StabilityRecord& record);

// point_index,sample,x,y rows of 360-sample ball boundaries
std::string ball_boundaries_to_csv(const PointCloud& cloud, const MetricSpec& metric,
                                   double radius, Orientation orientation, int samples = 360);
// scatter of the cloud plus ball boundary polylines, one static SVG
std::string ball_plot_svg(const PointCloud& cloud, const MetricSpec& metric, double radius,
                          Orientation orientation, int samples = 360);

struct RunConfig {
    MetricSpec metric;
    PointCloud cloud;
    ComplexKind kind = ComplexKind::Rips;
    int max_dim = 2;
    std::vector<double> epsilons;  // empty = auto grid
    std::uint64_t seed = 0;
    double tol = 1e-6;
    std::optional<std::string> out_complex;
    std::optional<std::string> out_diagram_csv;
    std::optional<std::string> out_diagram_json;
    std::optional<std::string> out_records;
};

// Loads a run config; file paths inside are resolved relative to the config.
RunConfig load_run_config(const std::filesystem::path& path);

std::string read_file(const std::filesystem::path& path);
void write_file(const std::filesystem::path& path, const std::string& content);

std::uint64_t default_seed();  // FTDA_SEED environment variable, else 0

}  // namespace ftda
