#include "spectral_seed/peaks.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <set>
#include <utility>

#include "spectral_seed/error.hpp"

namespace spectral_seed {

double critical_width(double sigma_tilde) {
    if (!(sigma_tilde > 0.0) || !std::isfinite(sigma_tilde)) throw Error("sigma_tilde must be positive");
    return 1.0 / (std::numbers::pi * sigma_tilde);
}

WindowWidths choose_window_widths(double critical, double dx) {
    if (!(dx > 0.0)) throw Error("dx must be positive");
    const double ratio = std::floor(critical / dx + 1e-9);
    if (!(ratio >= 5.0)) throw Error("bandwidth too coarse for grid");
    const int w = static_cast<int>(ratio);
    return {w, w - 1, w - 2};
}

SmoothedField threshold_field(SmoothedField field, double tau) {
    if (!(tau >= 0.0 && tau < 1.0)) throw Error("threshold must lie in [0, 1)");
    for (double& v : field.values.flat())
        if (v < tau) v = 0.0;
    return field;
}

namespace {

bool strict_neighborhood_max(const Array2D<double>& a, std::size_t ix, std::size_t iy) {
    if (ix == 0 || iy == 0 || ix + 1 >= a.nx() || iy + 1 >= a.ny()) return false;
    const double v = a(ix, iy);
    for (std::size_t jx = ix - 1; jx <= ix + 1; ++jx)
        for (std::size_t jy = iy - 1; jy <= iy + 1; ++jy)
            if ((jx != ix || jy != iy) && !(a(jx, jy) < v)) return false;
    return true;
}

void scan_tiling(const Array2D<double>& a, std::size_t w, std::set<std::pair<std::size_t, std::size_t>>& accepted) {
    const std::size_t nx = a.nx();
    const std::size_t ny = a.ny();
    for (std::size_t sx = 0; sx < nx; sx += w) {
        const std::size_t ex = std::min(nx, sx + w);
        for (std::size_t sy = 0; sy < ny; sy += w) {
            const std::size_t ey = std::min(ny, sy + w);
            std::size_t bx = sx, by = sy;
            double best = a(sx, sy);
            for (std::size_t ix = sx; ix < ex; ++ix)
                for (std::size_t iy = sy; iy < ey; ++iy)
                    if (a(ix, iy) > best) {
                        best = a(ix, iy);
                        bx = ix;
                        by = iy;
                    }
            if (!(best > 0.0)) continue;
            if (bx == sx || bx + 1 == ex || by == sy || by + 1 == ey) continue;
            if (strict_neighborhood_max(a, bx, by)) accepted.emplace(bx, by);
        }
    }
}

}  // namespace

PeakSet find_peaks(const SmoothedField& field, const WindowWidths& widths_px, double threshold) {
    for (int w : widths_px)
        if (w < 3) throw Error("window widths must be at least 3 pixels");

    std::set<std::pair<std::size_t, std::size_t>> accepted;
    for (int w : widths_px) scan_tiling(field.values, static_cast<std::size_t>(w), accepted);

    PeakSet result;
    result.window_widths_px = widths_px;
    result.threshold = threshold;
    result.sigma_tilde = field.sigma_tilde;
    result.peaks.reserve(accepted.size());
    for (const auto& [ix, iy] : accepted) {
        result.peaks.push_back({ix, iy, field.grid.center_x(ix), field.grid.center_y(iy), field.values(ix, iy)});
    }
    return result;
}

Detection detect(const DensityField& field, double epsilon, double tau, int max_iter) {
    BandwidthSelection selection = select_bandwidth(field, epsilon, max_iter);
    const double sigma_tilde = selection.field.sigma_tilde;
    const WindowWidths widths = choose_window_widths(critical_width(sigma_tilde), field.grid.dx);
    PeakSet peaks = find_peaks(threshold_field(selection.field, tau), widths, tau);
    return Detection{std::move(peaks), std::move(selection.trace), std::move(selection.field)};
}

}  // namespace spectral_seed
