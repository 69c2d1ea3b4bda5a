#include "spectral_seed/bandwidth.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace spectral_seed {

double pearson_correlation(const Array2D<double>& a, const Array2D<double>& b) {
    if (a.nx() != b.nx() || a.ny() != b.ny()) throw Error("correlation operands differ in shape");
    const auto fa = a.flat();
    const auto fb = b.flat();
    if (fa.empty()) throw Error("zero variance");
    const auto n = static_cast<double>(fa.size());

    double mean_a = 0.0, mean_b = 0.0;
    for (std::size_t i = 0; i < fa.size(); ++i) {
        mean_a += fa[i];
        mean_b += fb[i];
    }
    mean_a /= n;
    mean_b /= n;

    double cov = 0.0, var_a = 0.0, var_b = 0.0;
    for (std::size_t i = 0; i < fa.size(); ++i) {
        const double da = fa[i] - mean_a;
        const double db = fb[i] - mean_b;
        cov += da * db;
        var_a += da * da;
        var_b += db * db;
    }
    if (!(var_a > 0.0) || !(var_b > 0.0)) throw Error("zero variance");
    const double r = cov / std::sqrt(var_a * var_b);
    return std::clamp(r, -1.0, 1.0);
}

BandwidthSelection select_bandwidth(const DensityField& field, double epsilon, int max_iter) {
    if (!(epsilon > 0.0)) throw Error("epsilon must be positive");
    if (max_iter < 2) throw Error("max_iter must allow at least two passes");
    const double length = field.grid.max_extent();

    ConvergenceTrace trace;
    trace.epsilon = epsilon;
    for (int n = 1; n <= max_iter; ++n) {
        const double sigma_tilde = static_cast<double>(n) / length;
        SmoothedField smoothed = smooth_raw(field, sigma_tilde);
        TraceEntry entry{n, sigma_tilde, pearson_correlation(field.values, smoothed.values), std::nullopt};
        if (!trace.entries.empty()) entry.delta = std::abs(entry.correlation - trace.entries.back().correlation);
        trace.entries.push_back(entry);
        if (entry.delta && *entry.delta < epsilon) {
            trace.converged_n = n;
            return {normalize(std::move(smoothed)), std::move(trace)};
        }
    }
    throw ConvergenceError("bandwidth selection did not converge within " + std::to_string(max_iter) + " iterations",
                           std::move(trace));
}

}  // namespace spectral_seed
