#pragma once

#include <cstdint>
#include <vector>

#include "spectral_seed/grid.hpp"

namespace spectral_seed {

/// Axis-aligned Gaussian cluster.
struct ClusterSpec {
    double mu_x = 0.0;
    double mu_y = 0.0;
    double sigma_x = 0.0;
    double sigma_y = 0.0;
    int count = 0;

    bool operator==(const ClusterSpec&) const = default;
};

/**
 * Counter-based uniform stream.
 *
 * Draw i for seed s is splitmix64_mix(s + (i + 1) * 0x9E3779B97F4A7C15),
 * mapped to the open interval (0, 1) as ((z >> 11) + 0.5) * 2^-53. The i-th
 * draw is computable without producing the previous ones.
 */
class CounterRng {
public:
    explicit CounterRng(std::uint64_t seed) : seed_(seed) {}

    static std::uint64_t mix(std::uint64_t z);
    std::uint64_t bits(std::uint64_t counter) const;
    double uniform(std::uint64_t counter) const;

private:
    std::uint64_t seed_;
};

/**
 * Draws `count` points per spec. Point j (global index over all specs, in
 * spec order) uses uniforms u1 = U(2j), u2 = U(2j+1) and the Box-Muller
 * transform r = sqrt(-2 ln u1):
 *   x = mu_x + sigma_x r cos(2 pi u2),  y = mu_y + sigma_y r sin(2 pi u2).
 * Nothing is clipped.
 */
PointSet generate(const std::vector<ClusterSpec>& specs, std::uint64_t seed);

/// Six clusters centred on the reference centroid table, N = 3350.
std::vector<ClusterSpec> table1_clusters();

/// Reference centroids of table1_clusters(), in the same order.
std::vector<Point> table1_centroids();

void validate(const ClusterSpec& spec);

}  // namespace spectral_seed
