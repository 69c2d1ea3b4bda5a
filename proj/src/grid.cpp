#include "spectral_seed/grid.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

#include "spectral_seed/error.hpp"

namespace spectral_seed {

PointSet::PointSet(std::vector<Point> points) : points_(std::move(points)) {
    if (points_.empty()) throw Error("point set is empty");
    for (std::size_t i = 0; i < points_.size(); ++i) {
        if (!std::isfinite(points_[i].x) || !std::isfinite(points_[i].y))
            throw Error("non-finite coordinate at point " + std::to_string(i));
    }
}

std::size_t spacing_sample_count(std::size_t n_points, double gap_fraction) {
    // The 1e-9 keeps e.g. 0.07 * 100 from flooring to 6.
    const double m = std::floor(gap_fraction * static_cast<double>(n_points) + 1e-9);
    return std::max<std::size_t>(1, static_cast<std::size_t>(std::max(0.0, m)));
}

namespace {

double mean_smallest_gaps(std::vector<double> coords, std::size_t m) {
    std::sort(coords.begin(), coords.end());
    std::vector<double> gaps;
    gaps.reserve(coords.size());
    for (std::size_t i = 1; i < coords.size(); ++i) {
        const double gap = coords[i] - coords[i - 1];
        if (gap > 0.0) gaps.push_back(gap);
    }
    if (gaps.empty()) throw Error("degenerate axis");
    const std::size_t take = std::min(m, gaps.size());
    std::partial_sort(gaps.begin(), gaps.begin() + static_cast<std::ptrdiff_t>(take), gaps.end());
    const double sum = std::accumulate(gaps.begin(), gaps.begin() + static_cast<std::ptrdiff_t>(take), 0.0);
    return sum / static_cast<double>(take);
}

struct AxisLayout {
    std::size_t n = 0;
    double origin = 0.0;
};

std::size_t pixels_needed(double span, double dx, std::size_t margin_px) {
    const double s = span / dx;
    // The last point must round to an index below n, hence floor(s) + 1.
    const double strict = std::floor(s + 1e-9) + 1.0;
    const double padded = std::ceil(s + 2.0 * static_cast<double>(margin_px) - 1e-9);
    const double n = std::max({strict, padded, static_cast<double>(kMinGridPixels)});
    return static_cast<std::size_t>(n);
}

AxisLayout layout_axis(double lo, double hi, double dx, std::size_t margin_px) {
    AxisLayout axis;
    axis.n = pixels_needed(hi - lo, dx, margin_px);
    const double center = 0.5 * (lo + hi);
    axis.origin = center - 0.5 * static_cast<double>(axis.n - 1) * dx;
    return axis;
}

}  // namespace

double estimate_spacing(const PointSet& points, double gap_fraction) {
    const std::size_t n = points.size();
    if (n < 2) throw Error("spacing estimation needs at least 2 points");
    if (!(gap_fraction > 0.0 && gap_fraction < 1.0)) throw Error("gap_fraction must lie in (0, 1)");
    const std::size_t m = spacing_sample_count(n, gap_fraction);
    if (m >= n) throw Error("gap_fraction selects every point");

    std::vector<double> xs, ys;
    xs.reserve(n);
    ys.reserve(n);
    for (const auto& p : points) {
        xs.push_back(p.x);
        ys.push_back(p.y);
    }
    return std::min(mean_smallest_gaps(std::move(xs), m), mean_smallest_gaps(std::move(ys), m));
}

GridSpec build_grid(const PointSet& points, double dx, std::size_t cap, std::size_t margin_px) {
    if (!(dx > 0.0) || !std::isfinite(dx)) throw Error("dx must be positive and finite");
    if (points.empty()) throw Error("point set is empty");
    if (cap < kMinGridPixels) throw Error("grid cap below the minimum grid size");

    double min_x = points[0].x, max_x = points[0].x;
    double min_y = points[0].y, max_y = points[0].y;
    for (const auto& p : points) {
        min_x = std::min(min_x, p.x);
        max_x = std::max(max_x, p.x);
        min_y = std::min(min_y, p.y);
        max_y = std::max(max_y, p.y);
    }
    const double span = std::max(max_x - min_x, max_y - min_y);

    if (pixels_needed(span, dx, margin_px) > cap) {
        if (cap <= 2 * margin_px) throw Error("grid cap leaves no room inside the margin");
        const double room = margin_px > 0 ? static_cast<double>(cap - 2 * margin_px)
                                           : static_cast<double>(cap);
        dx = std::max(dx, span / room);
        while (pixels_needed(span, dx, margin_px) > cap) dx = std::nextafter(dx, HUGE_VAL);
    }

    const AxisLayout ax = layout_axis(min_x, max_x, dx, margin_px);
    const AxisLayout ay = layout_axis(min_y, max_y, dx, margin_px);
    return GridSpec{dx, ax.origin, ay.origin, ax.n, ay.n};
}

long long nearest_index(double coord, double origin, double dx) {
    return static_cast<long long>(std::floor((coord - origin) / dx + 0.5));
}

DensityField rasterize(const PointSet& points, const GridSpec& grid) {
    DensityField field;
    field.grid = grid;
    field.values = Array2D<double>(grid.nx, grid.ny, 0.0);
    field.point_count = points.size();

    const auto nx = static_cast<long long>(grid.nx);
    const auto ny = static_cast<long long>(grid.ny);
    for (std::size_t i = 0; i < points.size(); ++i) {
        const long long ix = nearest_index(points[i].x, grid.origin_x, grid.dx);
        const long long iy = nearest_index(points[i].y, grid.origin_y, grid.dx);
        if (ix < 0 || iy < 0 || ix >= nx || iy >= ny)
            throw Error("point " + std::to_string(i) + " lies outside the grid");
        double& cell = field.values(static_cast<std::size_t>(ix), static_cast<std::size_t>(iy));
        if (cell == 0.0) {
            cell = 1.0;
            ++field.occupied_count;
        }
    }
    return field;
}

}  // namespace spectral_seed
