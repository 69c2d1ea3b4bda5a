#pragma once

#include <cstddef>
#include <vector>

#include "spectral_seed/grid.hpp"
#include "spectral_seed/peaks.hpp"

namespace spectral_seed {

struct KMeansResult {
    std::vector<Point> centroids;
    std::vector<std::size_t> assignments;
    double inertia = 0.0;
    int iterations = 0;
    std::vector<Point> initial_centroids;
    // Inertia of (assignment, centroids) at the start of every iteration,
    // followed by the final value.
    std::vector<double> inertia_history;

    std::size_t k() const { return centroids.size(); }
    /// Fraction of points in each cluster; usable as mixture weights.
    std::vector<double> cluster_shares() const;
};

inline constexpr int kDefaultKMeansMaxIter = 300;
inline constexpr double kDefaultKMeansTol = 1e-6;

/**
 * Lloyd's algorithm from the given initial centroids.
 *
 * Assignment picks the nearest centroid, lowest index on exact ties. Stops
 * when no centroid moves by tol or more, or after max_iter updates. A
 * cluster left empty by an assignment is re-seeded at the point farthest
 * from its own centroid.
 */
KMeansResult kmeans(const PointSet& points, const std::vector<Point>& init,
                    int max_iter = kDefaultKMeansMaxIter, double tol = kDefaultKMeansTol);

/// kmeans with k and the initial centroids taken from the detected peaks.
/// Throws Error("no clusters detected") for an empty peak set.
KMeansResult seed_and_cluster(const PointSet& points, const PeakSet& peaks,
                              int max_iter = kDefaultKMeansMaxIter, double tol = kDefaultKMeansTol);

/// Sum of squared distances from each point to its assigned centroid,
/// accumulated in point order.
double inertia_of(const PointSet& points, const std::vector<Point>& centroids,
                  const std::vector<std::size_t>& assignments);

}  // namespace spectral_seed
