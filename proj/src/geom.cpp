#include "kinspread/geom.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <limits>
#include <stdexcept>

#include <json.hpp>

namespace kinspread {

namespace {

BBox ring_bbox(const Ring& ring) {
    BBox b{std::numeric_limits<double>::max(), std::numeric_limits<double>::max(),
           std::numeric_limits<double>::lowest(), std::numeric_limits<double>::lowest()};
    for (const Point& p : ring) {
        b.min_x = std::min(b.min_x, p.x);
        b.min_y = std::min(b.min_y, p.y);
        b.max_x = std::max(b.max_x, p.x);
        b.max_y = std::max(b.max_y, p.y);
    }
    return b;
}

BBox merge(const BBox& a, const BBox& b) {
    return {std::min(a.min_x, b.min_x), std::min(a.min_y, b.min_y),
            std::max(a.max_x, b.max_x), std::max(a.max_y, b.max_y)};
}

bool on_segment(Point p, Point a, Point b, double eps) {
    const double cross = (b.x - a.x) * (p.y - a.y) - (b.y - a.y) * (p.x - a.x);
    if (std::abs(cross) > eps) return false;
    return p.x >= std::min(a.x, b.x) - eps && p.x <= std::max(a.x, b.x) + eps &&
           p.y >= std::min(a.y, b.y) - eps && p.y <= std::max(a.y, b.y) + eps;
}

}  // namespace

double ring_signed_area(const Ring& ring) {
    double twice = 0.0;
    const std::size_t n = ring.size();
    for (std::size_t i = 0; i < n; ++i) {
        const Point& a = ring[i];
        const Point& b = ring[(i + 1) % n];
        twice += a.x * b.y - b.x * a.y;
    }
    return 0.5 * twice;
}

Region::Region(std::string name, std::vector<Ring> rings)
    : name_(std::move(name)), rings_(std::move(rings)) {
    if (rings_.empty())
        throw std::runtime_error("region '" + name_ + "' has no rings");
    double signed_sum = 0.0;
    bool first = true;
    for (const Ring& ring : rings_) {
        if (ring.size() < 3)
            throw std::runtime_error("region '" + name_ +
                                     "' has a degenerate ring (< 3 vertices)");
        const double a = ring_signed_area(ring);
        if (a == 0.0)
            throw std::runtime_error("region '" + name_ +
                                     "' has a zero-area ring");
        signed_sum += a;
        bbox_ = first ? ring_bbox(ring) : merge(bbox_, ring_bbox(ring));
        first = false;
    }
    area_ = std::abs(signed_sum);
    if (area_ <= 0.0)
        throw std::runtime_error("region '" + name_ + "' has zero area");
}

bool Region::contains(Point p) const {
    if (!bbox_.contains(p)) return false;
    const double scale = std::max({std::abs(bbox_.max_x), std::abs(bbox_.max_y),
                                   std::abs(bbox_.min_x), std::abs(bbox_.min_y), 1.0});
    const double eps = 1e-9 * scale;
    bool inside = false;
    for (const Ring& ring : rings_) {
        const std::size_t n = ring.size();
        for (std::size_t i = 0; i < n; ++i) {
            const Point& a = ring[i];
            const Point& b = ring[(i + 1) % n];
            if (on_segment(p, a, b, eps)) return true;  // boundary-inclusive
            if ((a.y > p.y) != (b.y > p.y)) {
                const double x_int = a.x + (p.y - a.y) * (b.x - a.x) / (b.y - a.y);
                if (p.x < x_int) inside = !inside;
            }
        }
    }
    return inside;
}

Point sample_uniform(const Region& region, RngStream& rng, int max_attempts,
                     int* attempts_out) {
    const BBox& b = region.bbox();
    for (int attempt = 1; attempt <= max_attempts; ++attempt) {
        const Point p{rng.uniform(b.min_x, b.max_x), rng.uniform(b.min_y, b.max_y)};
        if (region.contains(p)) {
            if (attempts_out) *attempts_out = attempt;
            return p;
        }
    }
    throw std::runtime_error("sample_uniform: no point found in region '" +
                             region.name() + "' after " +
                             std::to_string(max_attempts) + " attempts");
}

RegionSet::RegionSet(std::vector<Region> regions) : regions_(std::move(regions)) {
    if (regions_.empty()) throw std::runtime_error("empty region set");
    bbox_ = regions_.front().bbox();
    for (const Region& r : regions_) bbox_ = merge(bbox_, r.bbox());
}

bool RegionSet::contains(Point p) const {
    if (!bbox_.contains(p)) return false;
    for (const Region& r : regions_)
        if (r.contains(p)) return true;
    return false;
}

double RegionSet::total_area() const {
    double sum = 0.0;
    for (const Region& r : regions_) sum += r.area();
    return sum;
}

int RegionSet::find(std::string_view name) const {
    for (std::size_t i = 0; i < regions_.size(); ++i)
        if (regions_[i].name() == name) return static_cast<int>(i);
    return -1;
}

RegionSet load_regions(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open geometry file: " + path.string());
    nlohmann::json doc;
    in >> doc;
    if (doc.value("type", "") != "FeatureCollection")
        throw std::runtime_error(path.string() + ": not a FeatureCollection");

    auto parse_ring = [](const nlohmann::json& coords) {
        Ring ring;
        for (const auto& pt : coords)
            ring.push_back({pt.at(0).get<double>(), pt.at(1).get<double>()});
        // GeoJSON rings repeat the first vertex; store open.
        if (ring.size() >= 2 && ring.front().x == ring.back().x &&
            ring.front().y == ring.back().y)
            ring.pop_back();
        return ring;
    };

    std::vector<Region> regions;
    for (const auto& feature : doc.at("features")) {
        const std::string name = feature.at("properties").at("name").get<std::string>();
        const auto& geometry = feature.at("geometry");
        const std::string type = geometry.at("type").get<std::string>();
        std::vector<Ring> rings;
        if (type == "Polygon") {
            for (const auto& rc : geometry.at("coordinates"))
                rings.push_back(parse_ring(rc));
        } else if (type == "MultiPolygon") {
            for (const auto& poly : geometry.at("coordinates"))
                for (const auto& rc : poly)
                    rings.push_back(parse_ring(rc));
        } else {
            throw std::runtime_error("feature '" + name +
                                     "': unsupported geometry type " + type);
        }
        regions.emplace_back(name, std::move(rings));
    }
    return RegionSet(std::move(regions));
}

}  // namespace kinspread
