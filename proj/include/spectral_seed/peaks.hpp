#pragma once

#include <array>
#include <cstddef>
#include <vector>

#include "spectral_seed/bandwidth.hpp"
#include "spectral_seed/spectral.hpp"

namespace spectral_seed {

struct Peak {
    std::size_t ix = 0;
    std::size_t iy = 0;
    double x = 0.0;
    double y = 0.0;
    double value = 0.0;
};

using WindowWidths = std::array<int, 3>;

struct PeakSet {
    std::vector<Peak> peaks;  // sorted by (ix, iy)
    WindowWidths window_widths_px{};
    double threshold = 0.0;
    double sigma_tilde = 0.0;

    std::size_t size() const { return peaks.size(); }
};

inline constexpr double kDefaultPeakThreshold = 0.1;

/// Minimum separation of two resolvable equal Gaussians, 2 sigma = 1/(pi sigma_tilde).
double critical_width(double sigma_tilde);

/// (W, W-1, W-2) with W = floor(w_c / dx). Throws
/// Error("bandwidth too coarse for grid") when W < 5.
WindowWidths choose_window_widths(double critical, double dx);

/// Zeroes every value below tau; the rest is untouched.
SmoothedField threshold_field(SmoothedField field, double tau);

/**
 * Segment-tiling peak search.
 *
 * For each width w the grid is cut into w-by-w segments starting at pixel 0
 * (partial segments at the far edges included). A segment's argmax (ties go
 * to the smallest (ix, iy)) is accepted when it is positive, off the
 * segment's edge rows and columns, and strictly above all 8 neighbours.
 * The accepted pixels of the three tilings are merged without duplicates.
 * `threshold` is only recorded in the result.
 */
PeakSet find_peaks(const SmoothedField& field, const WindowWidths& widths_px, double threshold = 0.0);

struct Detection {
    PeakSet peaks;
    ConvergenceTrace trace;
    SmoothedField smoothed;  // normalised, before thresholding
};

/// select_bandwidth -> threshold -> window widths from the converged
/// bandwidth -> find_peaks.
Detection detect(const DensityField& field, double epsilon = kDefaultEpsilon,
                 double tau = kDefaultPeakThreshold, int max_iter = kDefaultBandwidthMaxIter);

}  // namespace spectral_seed
