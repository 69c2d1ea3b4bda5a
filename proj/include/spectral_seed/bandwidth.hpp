#pragma once

#include <cstddef>
#include <optional>
#include <vector>

#include "spectral_seed/array2d.hpp"
#include "spectral_seed/error.hpp"
#include "spectral_seed/spectral.hpp"

namespace spectral_seed {

struct TraceEntry {
    int n = 0;
    double sigma_tilde = 0.0;
    double correlation = 0.0;
    std::optional<double> delta;  // absent for n = 1
};

struct ConvergenceTrace {
    std::vector<TraceEntry> entries;
    int converged_n = 0;  // 0 while not converged
    double epsilon = 0.0;
};

/// Raised when max_iter passes elapse without meeting the stop rule.
class ConvergenceError : public Error {
public:
    ConvergenceError(const std::string& what, ConvergenceTrace trace)
        : Error(what), trace_(std::move(trace)) {}
    const ConvergenceTrace& trace() const { return trace_; }

private:
    ConvergenceTrace trace_;
};

inline constexpr double kDefaultEpsilon = 0.01;
inline constexpr int kDefaultBandwidthMaxIter = 64;

/// Pearson product-moment correlation over all pixels. Throws
/// Error("zero variance") if either array is constant.
double pearson_correlation(const Array2D<double>& a, const Array2D<double>& b);

struct BandwidthSelection {
    SmoothedField field;  // normalised smoothed density at the converged bandwidth
    ConvergenceTrace trace;
};

/**
 * Walks sigma_tilde = n / L for n = 1, 2, ... (L the larger grid extent),
 * correlating the raw raster with each unnormalised smoothed field, and stops
 * at the first n >= 2 where |c_n - c_{n-1}| < epsilon. Returns the n-th field.
 * Exactly converged_n smoothing passes run.
 */
BandwidthSelection select_bandwidth(const DensityField& field, double epsilon = kDefaultEpsilon,
                                    int max_iter = kDefaultBandwidthMaxIter);

}  // namespace spectral_seed
