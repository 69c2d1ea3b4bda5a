#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "spectral_seed/array2d.hpp"

namespace spectral_seed {

struct Point {
    double x = 0.0;
    double y = 0.0;

    bool operator==(const Point&) const = default;
};

/// Scattered 2-D observations. Construction validates that every coordinate
/// is finite and that the set is non-empty.
class PointSet {
public:
    PointSet() = default;
    explicit PointSet(std::vector<Point> points);

    std::size_t size() const { return points_.size(); }
    bool empty() const { return points_.empty(); }
    std::span<const Point> points() const { return points_; }
    const Point& operator[](std::size_t i) const { return points_[i]; }

    auto begin() const { return points_.begin(); }
    auto end() const { return points_.end(); }

private:
    std::vector<Point> points_;
};

/**
 * Equidistant square-pixel mesh.
 *
 * Pixel (ix, iy) is centred at (origin_x + ix * dx, origin_y + iy * dx) and
 * covers a dx-by-dx square around that centre, so the physical extent along
 * x is [origin_x - dx/2, origin_x + (nx - 1/2) dx] with width L_x = nx * dx.
 */
struct GridSpec {
    double dx = 0.0;
    double origin_x = 0.0;
    double origin_y = 0.0;
    std::size_t nx = 0;
    std::size_t ny = 0;

    double extent_x() const { return static_cast<double>(nx) * dx; }
    double extent_y() const { return static_cast<double>(ny) * dx; }
    double max_extent() const { return extent_x() > extent_y() ? extent_x() : extent_y(); }

    double center_x(std::size_t ix) const { return origin_x + static_cast<double>(ix) * dx; }
    double center_y(std::size_t iy) const { return origin_y + static_cast<double>(iy) * dx; }

    bool operator==(const GridSpec&) const = default;
};

/// Binary (Kronecker-delta) raster of a point set.
struct DensityField {
    GridSpec grid;
    Array2D<double> values;
    std::size_t occupied_count = 0;
    /// Number of input points that produced the raster; points sharing a
    /// pixel collapse into one, so collapsed = point_count - occupied_count.
    std::size_t point_count = 0;

    std::size_t collapsed_count() const { return point_count - occupied_count; }
};

inline constexpr std::size_t kMinGridPixels = 8;
inline constexpr std::size_t kDefaultGridCap = 1024;
inline constexpr std::size_t kDefaultMarginPixels = 4;

/**
 * Mesh spacing from the gap statistics of the sorted coordinates.
 *
 * Each axis is sorted, successive differences are taken, zero gaps are
 * dropped, and the M = max(1, floor(gap_fraction * N)) smallest remaining
 * gaps are averaged (all of them if fewer than M are positive). The smaller
 * of the two axis means is returned. Throws Error("degenerate axis") when an
 * axis has no positive gap.
 */
double estimate_spacing(const PointSet& points, double gap_fraction);

/// Index count M used by estimate_spacing for N points.
std::size_t spacing_sample_count(std::size_t n_points, double gap_fraction);

/**
 * Grid covering the bounding box of `points` with `margin_px * dx` of empty
 * space on every side, centred on the box and at least kMinGridPixels wide.
 * If either axis would need more than `cap` pixels, dx is raised to the
 * smallest value that fits; the returned spec carries the effective dx.
 */
GridSpec build_grid(const PointSet& points, double dx, std::size_t cap = kDefaultGridCap,
                    std::size_t margin_px = kDefaultMarginPixels);

/// Nearest-pixel index along one axis, round-half-up. May be out of range.
long long nearest_index(double coord, double origin, double dx);

/// Kronecker raster: 1 in every pixel that receives at least one point.
/// Throws if a point falls outside the grid.
DensityField rasterize(const PointSet& points, const GridSpec& grid);

}  // namespace spectral_seed
