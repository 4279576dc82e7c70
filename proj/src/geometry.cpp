#include "skyplanner/geometry.hpp"

#include <algorithm>
#include <cstdio>
#include <numbers>
#include <random>

#include "json.hpp"

#include "skyplanner/errors.hpp"

namespace skyplanner {

double point_to_segment_distance(Point2D p, Point2D a, Point2D b) {
    return distance(p, closest_point_on_segment(p, a, b));
}

Point2D closest_point_on_segment(Point2D p, Point2D a, Point2D b) {
    const double dx = b.x - a.x;
    const double dy = b.y - a.y;
    const double len2 = dx * dx + dy * dy;
    if (len2 == 0.0) return a;
    const double t_raw = ((p.x - a.x) * dx + (p.y - a.y) * dy) * (1.0 / len2);
    const double t = std::min(std::max(t_raw, 0.0), 1.0);
    return {a.x + t * dx, a.y + t * dy};
}

void SceneParams::validate() const {
    auto require = [](bool ok, const char* what) {
        if (!ok) throw InvalidParameter(std::string("scene parameters: ") + what);
    };
    require(lambda_tbs_km2 > 0.0, "lambda_tbs must be > 0");
    require(lambda_type1_km2 > 0.0, "lambda_type1 must be > 0");
    require(lambda_type2_km2 > 0.0, "lambda_type2 must be > 0");
    require(sd_distance_m > 0.0, "sd_distance must be > 0");
    require(window_margin_m >= 0.0, "window_margin must be >= 0");
    require(cluster_radius_m > 0.0, "cluster radius must be > 0");
    require(devices_per_cluster >= 1, "devices_per_cluster must be >= 1");
    require(window_area_km2() > 0.0, "simulation window has zero area");
}

namespace {

std::vector<Point2D> sample_ppp(double lambda_km2, const SceneParams& params, Engine& rng) {
    const double x0 = -params.window_margin_m;
    const double x1 = params.sd_distance_m + params.window_margin_m;
    const double y0 = -params.window_margin_m;
    const double y1 = params.window_margin_m;
    const double mean = lambda_km2 * params.window_area_km2();

    std::poisson_distribution<long> count_dist(mean);
    const long count = mean > 0.0 ? count_dist(rng) : 0;
    std::uniform_real_distribution<double> ux(x0, x1);
    std::uniform_real_distribution<double> uy(y0, y1);
    std::vector<Point2D> points;
    points.reserve(static_cast<std::size_t>(count));
    for (long i = 0; i < count; ++i) {
        const double x = ux(rng);
        const double y = uy(rng);
        points.push_back({x, y});
    }
    return points;
}

}  // namespace

Scene sample_scene(const SceneParams& params, std::uint64_t seed) {
    params.validate();
    Scene scene;
    scene.seed = seed;
    scene.source = {0.0, 0.0};
    scene.destination = {params.sd_distance_m, 0.0};

    Engine tbs_rng = make_stream(seed, Stream::kTbs);
    Engine c1_rng = make_stream(seed, Stream::kClusters1);
    Engine c2_rng = make_stream(seed, Stream::kClusters2);
    scene.tbs = sample_ppp(params.lambda_tbs_km2, params, tbs_rng);
    scene.clusters1 = sample_ppp(params.lambda_type1_km2, params, c1_rng);
    scene.clusters2 = sample_ppp(params.lambda_type2_km2, params, c2_rng);
    return scene;
}

std::vector<Point2D> sample_devices(Point2D center, double r_c, int n, Engine& rng) {
    std::uniform_real_distribution<double> u01(0.0, 1.0);
    std::vector<Point2D> devices;
    devices.reserve(static_cast<std::size_t>(std::max(n, 0)));
    for (int i = 0; i < n; ++i) {
        const double radius = r_c * std::sqrt(u01(rng));
        const double angle = 2.0 * std::numbers::pi * u01(rng);
        devices.push_back({center.x + radius * std::cos(angle), center.y + radius * std::sin(angle)});
    }
    return devices;
}

namespace {

void append_point(std::string& out, Point2D p) {
    char buf[96];
    std::snprintf(buf, sizeof buf, "[%.6f,%.6f]", p.x, p.y);
    out += buf;
}

void append_points(std::string& out, const std::vector<Point2D>& points) {
    out += '[';
    for (std::size_t i = 0; i < points.size(); ++i) {
        if (i) out += ',';
        append_point(out, points[i]);
    }
    out += ']';
}

std::vector<Point2D> points_from(const nlohmann::json& j) {
    std::vector<Point2D> points;
    for (const auto& p : j) points.push_back({p.at(0).get<double>(), p.at(1).get<double>()});
    return points;
}

}  // namespace

std::string scene_to_json(const Scene& scene) {
    std::string out = "{\"seed\":" + std::to_string(scene.seed) + ",\"S\":";
    append_point(out, scene.source);
    out += ",\"D\":";
    append_point(out, scene.destination);
    out += ",\"tbs\":";
    append_points(out, scene.tbs);
    out += ",\"clusters1\":";
    append_points(out, scene.clusters1);
    out += ",\"clusters2\":";
    append_points(out, scene.clusters2);
    out += '}';
    return out;
}

Scene scene_from_json(const std::string& text) {
    const auto j = nlohmann::json::parse(text);
    Scene scene;
    scene.seed = j.at("seed").get<std::uint64_t>();
    scene.source = points_from(nlohmann::json::array({j.at("S")})).front();
    scene.destination = points_from(nlohmann::json::array({j.at("D")})).front();
    scene.tbs = points_from(j.at("tbs"));
    scene.clusters1 = points_from(j.at("clusters1"));
    scene.clusters2 = points_from(j.at("clusters2"));
    return scene;
}

}  // namespace skyplanner
