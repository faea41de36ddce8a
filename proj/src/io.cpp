#include "ftda/io.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <sstream>

#include <json.hpp>

namespace ftda {

using nlohmann::json;

namespace {

Vec to_vec(const json& j) {
    Vec v;
    for (const auto& x : j) v.push_back(x.get<double>());
    return v;
}

double dot(const Vec& a, const Vec& b) {
    double s = 0;
    for (index_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
    return s;
}

double norm(const Vec& a) { return std::sqrt(dot(a, a)); }

}  // namespace

PointCloud gen_circle(const CircleSpec& spec) {
    if (spec.count < 3) throw ConfigError("gen_circle: count must be >= 3");
    const index_t n = spec.center.size();
    if (n < 2) throw ConfigError("gen_circle: center must have dimension >= 2");

    Vec u0, v0;
    if (n == 2) {
        u0 = {1.0, 0.0};
        v0 = {0.0, 1.0};
    } else {
        if (spec.normal.size() != n)
            throw DimensionMismatch("gen_circle: normal dimension mismatch");
        const double nn = norm(spec.normal);
        if (nn < 1e-12) throw DegenerateNormal("gen_circle: zero normal vector");
        Vec nh(n);
        for (index_t i = 0; i < n; ++i) nh[i] = spec.normal[i] / nn;

        // reference axis: least aligned with the normal, scanning y, x, z, ...
        std::vector<index_t> order = {1, 0};
        for (index_t i = 2; i < n; ++i) order.push_back(i);
        double best = std::abs(nh[0]);
        for (index_t i = 1; i < n; ++i) best = std::min(best, std::abs(nh[i]));
        index_t ref = order[0];
        for (index_t i : order)
            if (std::abs(nh[i]) <= best + 1e-12) {
                ref = i;
                break;
            }

        v0.assign(n, 0.0);
        v0[ref] = 1.0;
        const double c = dot(v0, nh);
        for (index_t i = 0; i < n; ++i) v0[i] -= c * nh[i];
        const double vn = norm(v0);
        if (vn < 1e-12) throw DegenerateNormal("gen_circle: reference axis parallel to normal");
        for (auto& x : v0) x /= vn;

        if (n == 3) {
            u0 = {v0[1] * nh[2] - v0[2] * nh[1], v0[2] * nh[0] - v0[0] * nh[2],
                  v0[0] * nh[1] - v0[1] * nh[0]};
        } else {
            // second in-plane direction from the next reference axis
            u0.assign(n, 0.0);
            for (index_t i : order) {
                if (i == ref) continue;
                u0[i] = 1.0;
                const double cn = dot(u0, nh);
                const double cv = dot(u0, v0);
                for (index_t d = 0; d < n; ++d) u0[d] -= cn * nh[d] + cv * v0[d];
                if (norm(u0) > 1e-6) break;
                u0.assign(n, 0.0);
            }
            const double un = norm(u0);
            if (un < 1e-12) throw DegenerateNormal("gen_circle: no in-plane frame");
            for (auto& x : u0) x /= un;
        }
    }

    PointCloud cloud;
    cloud.dimension = static_cast<int>(n);
    for (int k = 0; k < spec.count; ++k) {
        const double theta = 2.0 * M_PI * k / spec.count;
        Vec p(n);
        for (index_t i = 0; i < n; ++i)
            p[i] = spec.center[i] +
                   spec.radius * (u0[i] * std::cos(theta) + v0[i] * std::sin(theta));
        cloud.points.push_back(std::move(p));
    }
    cloud.validate();
    return cloud;
}

PointCloud appendix_circle() {
    CircleSpec spec;
    spec.center = {14.0, 15.0, 10.0};
    spec.normal = {1.0, 1.0, 1.0};
    spec.radius = 6.0;
    spec.count = 13;
    return gen_circle(spec);
}

std::string point_cloud_to_json(const PointCloud& cloud) {
    json j;
    j["dimension"] = cloud.dimension;
    j["points"] = json::array();
    for (const Vec& p : cloud.points) j["points"].push_back(p);
    if (!cloud.labels.empty()) j["labels"] = cloud.labels;
    return j.dump(2) + "\n";
}

PointCloud point_cloud_from_json(const std::string& text) {
    json j;
    try {
        j = json::parse(text);
    } catch (const json::parse_error& e) {
        throw ConfigError(std::string("point cloud JSON: ") + e.what());
    }
    PointCloud cloud;
    cloud.dimension = j.at("dimension").get<int>();
    for (const auto& p : j.at("points")) cloud.points.push_back(to_vec(p));
    if (j.contains("labels")) cloud.labels = j["labels"].get<std::vector<std::string>>();
    cloud.validate();
    return cloud;
}

MetricSpec metric_from_json(const std::string& text) {
    json j;
    try {
        j = json::parse(text);
    } catch (const json::parse_error& e) {
        throw ConfigError(std::string("metric JSON: ") + e.what());
    }
    const std::string name = j.at("name").get<std::string>();
    const int n = j.at("dimension").get<int>();
    if (n < 1) throw ConfigError("metric dimension must be positive");
    json params = j.value("params", json::object());

    if (name == "euclidean") return make_euclidean(n);
    if (name == "burg") return make_burg(n);
    if (name == "fisher") return make_fisher(n);
    if (name == "alpha_randers") {
        const double alpha = params.value("alpha", 3.0);
        const double wexp = params.value("weight_exponent", 2.0);
        double scale = 1.0;
        if (j.contains("one_form")) {
            const json& of = j["one_form"];
            const std::string kind = of.value("kind", "normalized_position");
            if (kind != "normalized_position")
                throw ConfigError("unknown one_form kind: " + kind);
            scale = of.value("params", json::object()).value("scale", 1.0);
        }
        return make_alpha_randers(n, alpha, wexp, scale);
    }
    throw ConfigError("unknown metric name: " + name);
}

std::string circle_spec_to_json(const CircleSpec& spec) {
    json j;
    j["center"] = spec.center;
    j["radius"] = spec.radius;
    j["normal"] = spec.normal;
    j["count"] = spec.count;
    return j.dump(2) + "\n";
}

CircleSpec circle_spec_from_json(const std::string& text) {
    json j;
    try {
        j = json::parse(text);
    } catch (const json::parse_error& e) {
        throw ConfigError(std::string("circle JSON: ") + e.what());
    }
    CircleSpec spec;
    spec.center = to_vec(j.at("center"));
    spec.radius = j.at("radius").get<double>();
    if (j.contains("normal")) spec.normal = to_vec(j["normal"]);
    spec.count = j.at("count").get<int>();
    return spec;
}

std::string complex_to_jsonl(const FilteredComplex& fc) {
    std::string out;
    for (index_t i = 0; i < fc.size(); ++i) {
        json j;
        j["v"] = fc.simplices[i].vertices;
        j["t"] = fc.values[i];
        out += j.dump() + "\n";
    }
    return out;
}

namespace {

std::string format_double(double x) {
    if (std::isinf(x)) return "inf";
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.17g", x);
    return buf;
}

}  // namespace

std::string diagram_to_csv(const PersistenceDiagram& dgm) {
    std::string out = "dim,birth,death\n";
    auto sorted = dgm;
    sorted.sort();
    for (const auto& p : sorted.points) {
        if (!p.essential() && p.death <= p.birth) continue;  // zero-length dropped at export
        out += std::to_string(p.dim) + "," + format_double(p.birth) + "," +
               format_double(p.death) + "\n";
    }
    return out;
}

std::string diagram_to_json(const PersistenceDiagram& dgm) {
    auto sorted = dgm;
    sorted.sort();
    json arr = json::array();
    for (const auto& p : sorted.points) {
        if (!p.essential() && p.death <= p.birth) continue;
        json record;
        record["dim"] = p.dim;
        record["birth"] = p.birth;
        if (p.essential())
            record["death"] = "inf";
        else
            record["death"] = p.death;
        arr.push_back(record);
    }
    json j;
    j["provenance"] = to_string(sorted.provenance);
    j["bars"] = arr;
    return j.dump(2) + "\n";
}

PersistenceDiagram diagram_from_csv(const std::string& text) {
    PersistenceDiagram dgm;
    std::istringstream in(text);
    std::string line;
    bool header = true;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        if (header) {
            header = false;
            if (line.rfind("dim", 0) == 0) continue;
        }
        std::istringstream row(line);
        std::string dim_s, birth_s, death_s;
        if (!std::getline(row, dim_s, ',') || !std::getline(row, birth_s, ',') ||
            !std::getline(row, death_s, ','))
            throw ConfigError("diagram CSV: malformed row: " + line);
        DiagramPoint p;
        p.dim = std::stoi(dim_s);
        p.birth = std::stod(birth_s);
        p.death = (death_s == "inf") ? kInfiniteDeath : std::stod(death_s);
        if (!p.essential() && p.death < p.birth)
            throw ConfigError("diagram CSV: death before birth: " + line);
        dgm.points.push_back(p);
    }
    return dgm;
}

std::string stability_record_to_jsonl(const StabilityRecord& record) {
    std::string out;
    for (const auto& d : record.dims) {
        json j;
        j["seed"] = record.seed;
        j["metric"] = record.metric;
        j["kind"] = to_string(record.kind);
        j["noise"] = record.noise;
        j["dim"] = d.dim;
        j["d_b"] = d.d_b;
        j["gh_bound"] = d.gh_bound;
        j["pass"] = d.pass;
        out += j.dump() + "\n";
    }
    return out;
}

std::string ball_boundaries_to_csv(const PointCloud& cloud, const MetricSpec& metric,
                                   double radius, Orientation orientation, int samples) {
    if (cloud.dimension != 2)
        throw DimensionMismatch("ball boundary export supports 2-D clouds only");
    std::string out = "point,sample,x,y\n";
    for (index_t i = 0; i < cloud.size(); ++i) {
        FinslerBall ball{cloud.points[i], radius, &metric, orientation};
        const auto boundary = ball_boundary_2d(ball, samples);
        for (index_t s = 0; s < boundary.size(); ++s)
            out += std::to_string(i) + "," + std::to_string(s) + "," +
                   format_double(boundary[s][0]) + "," + format_double(boundary[s][1]) + "\n";
    }
    return out;
}

std::string ball_plot_svg(const PointCloud& cloud, const MetricSpec& metric, double radius,
                          Orientation orientation, int samples) {
    if (cloud.dimension != 2)
        throw DimensionMismatch("ball plot supports 2-D clouds only");
    std::vector<std::vector<Vec>> boundaries;
    double xmin = 1e300, xmax = -1e300, ymin = 1e300, ymax = -1e300;
    for (const Vec& p : cloud.points) {
        FinslerBall ball{p, radius, &metric, orientation};
        boundaries.push_back(ball_boundary_2d(ball, samples));
        for (const Vec& b : boundaries.back()) {
            xmin = std::min(xmin, b[0]); xmax = std::max(xmax, b[0]);
            ymin = std::min(ymin, b[1]); ymax = std::max(ymax, b[1]);
        }
    }
    const double pad = 0.05 * std::max(xmax - xmin, ymax - ymin) + 1e-9;
    xmin -= pad; xmax += pad; ymin -= pad; ymax += pad;
    const double width = 640.0;
    const double scale = width / (xmax - xmin);
    const double height = (ymax - ymin) * scale;
    auto sx = [&](double x) { return (x - xmin) * scale; };
    auto sy = [&](double y) { return height - (y - ymin) * scale; };  // y up

    std::ostringstream svg;
    svg << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << width << "\" height=\""
        << height << "\" viewBox=\"0 0 " << width << " " << height << "\">\n";
    svg << "  <rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
    for (const auto& boundary : boundaries) {
        svg << "  <polygon fill=\"#4a90d955\" stroke=\"#1f5fa8\" stroke-width=\"1\" points=\"";
        for (const Vec& b : boundary) svg << sx(b[0]) << "," << sy(b[1]) << " ";
        svg << "\"/>\n";
    }
    for (const Vec& p : cloud.points)
        svg << "  <circle cx=\"" << sx(p[0]) << "\" cy=\"" << sy(p[1])
            << "\" r=\"3\" fill=\"black\"/>\n";
    svg << "</svg>\n";
    return svg.str();
}

RunConfig load_run_config(const std::filesystem::path& path) {
    json j;
    try {
        j = json::parse(read_file(path));
    } catch (const json::parse_error& e) {
        throw ConfigError(std::string("run config JSON: ") + e.what());
    }
    const auto base = path.parent_path();
    auto resolve = [&](const std::string& p) {
        std::filesystem::path fp(p);
        return fp.is_absolute() ? fp : base / fp;
    };

    RunConfig config;
    if (j.at("metric").is_string())
        config.metric = metric_from_json(read_file(resolve(j["metric"].get<std::string>())));
    else
        config.metric = metric_from_json(j["metric"].dump());
    if (j.at("dataset").is_string())
        config.cloud = point_cloud_from_json(read_file(resolve(j["dataset"].get<std::string>())));
    else
        config.cloud = point_cloud_from_json(j["dataset"].dump());
    config.kind = complex_kind_from_string(j.value("complex_kind", std::string("rips")));
    config.max_dim = j.value("max_dim", 2);
    if (j.contains("epsilons")) {
        config.epsilons = j["epsilons"].get<std::vector<double>>();
        for (index_t i = 1; i < config.epsilons.size(); ++i)
            if (config.epsilons[i] <= config.epsilons[i - 1])
                throw ConfigError("run config: epsilon grid must be strictly increasing");
    }
    config.seed = j.value("seed", default_seed());
    config.tol = j.value("tol", 1e-6);
    if (j.contains("output")) {
        const json& out = j["output"];
        auto opt = [&](const char* key) -> std::optional<std::string> {
            if (!out.contains(key)) return std::nullopt;
            return resolve(out[key].get<std::string>()).string();
        };
        config.out_complex = opt("complex");
        config.out_diagram_csv = opt("diagram_csv");
        config.out_diagram_json = opt("diagram_json");
        config.out_records = opt("records");
    }
    if (config.metric.dimension != config.cloud.dimension)
        throw ConfigError("run config: metric and dataset dimensions differ");
    return config;
}

std::string read_file(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ConfigError("cannot read file: " + path.string());
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

void write_file(const std::filesystem::path& path, const std::string& content) {
    if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path());
    std::ofstream out(path, std::ios::binary);
    if (!out) throw ConfigError("cannot write file: " + path.string());
    out << content;
}

std::uint64_t default_seed() {
    if (const char* env = std::getenv("FTDA_SEED")) return std::strtoull(env, nullptr, 10);
    return 0;
}

}  // namespace ftda
