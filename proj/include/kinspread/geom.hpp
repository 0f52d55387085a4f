#pragma once

#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

#include "kinspread/rng.hpp"

namespace kinspread {

struct Point {
    double x = 0.0;
    double y = 0.0;
};

struct BBox {
    double min_x = 0.0, min_y = 0.0, max_x = 0.0, max_y = 0.0;

    bool contains(Point p) const {
        return p.x >= min_x && p.x <= max_x && p.y >= min_y && p.y <= max_y;
    }
};

// One polygon ring, stored open (no repeated closing vertex).
using Ring = std::vector<Point>;

double ring_signed_area(const Ring& ring);

// A named territory in an equal-area projected km frame. Holes, if present,
// carry opposite winding to their outer ring.
class Region {
  public:
    Region(std::string name, std::vector<Ring> rings);

    const std::string& name() const { return name_; }
    const std::vector<Ring>& rings() const { return rings_; }
    const BBox& bbox() const { return bbox_; }

    // Shoelace area in km^2; holes subtract via winding.
    double area() const { return area_; }

    // Even-odd ray cast; boundary points count as inside.
    bool contains(Point p) const;

  private:
    std::string name_;
    std::vector<Ring> rings_;
    BBox bbox_;
    double area_ = 0.0;
};

// Rejection-samples a point uniform over the region's area. Throws after
// max_attempts consecutive misses (degenerate geometry). If attempts_out is
// set it receives the number of bbox draws used.
Point sample_uniform(const Region& region, RngStream& rng,
                     int max_attempts = 10000, int* attempts_out = nullptr);

// The country: union of all state/UT regions.
class RegionSet {
  public:
    explicit RegionSet(std::vector<Region> regions);

    const std::vector<Region>& regions() const { return regions_; }
    const Region& at(std::size_t i) const { return regions_[i]; }
    std::size_t size() const { return regions_.size(); }

    bool contains(Point p) const;
    double total_area() const;
    const BBox& bbox() const { return bbox_; }

    // Index of the named region, or -1.
    int find(std::string_view name) const;

  private:
    std::vector<Region> regions_;
    BBox bbox_;
};

// Loads a GeoJSON-compatible FeatureCollection with coordinates already in
// projected km and a "name" property per feature.
RegionSet load_regions(const std::filesystem::path& path);

}  // namespace kinspread
