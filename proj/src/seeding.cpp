#include "spectral_seed/seeding.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "spectral_seed/error.hpp"
#include "spectral_seed/parallel.hpp"

namespace spectral_seed {

namespace {

double squared_distance(const Point& a, const Point& b) {
    const double dx = a.x - b.x;
    const double dy = a.y - b.y;
    return dx * dx + dy * dy;
}

// Fills labels[i] and dist[i] for every point; lowest index wins exact ties.
void assign(const PointSet& points, const std::vector<Point>& centroids, std::vector<std::size_t>& labels,
            std::vector<double>& dist) {
    parallel_for(points.size(), [&](std::size_t begin, std::size_t end) {
        for (std::size_t i = begin; i < end; ++i) {
            std::size_t best = 0;
            double best_d = squared_distance(points[i], centroids[0]);
            for (std::size_t c = 1; c < centroids.size(); ++c) {
                const double d = squared_distance(points[i], centroids[c]);
                if (d < best_d) {
                    best_d = d;
                    best = c;
                }
            }
            labels[i] = best;
            dist[i] = best_d;
        }
    });
}

double sum_in_order(const std::vector<double>& values) {
    double total = 0.0;
    for (double v : values) total += v;
    return total;
}

}  // namespace

std::vector<double> KMeansResult::cluster_shares() const {
    std::vector<double> shares(centroids.size(), 0.0);
    if (assignments.empty()) return shares;
    for (std::size_t label : assignments) shares[label] += 1.0;
    for (double& s : shares) s /= static_cast<double>(assignments.size());
    return shares;
}

double inertia_of(const PointSet& points, const std::vector<Point>& centroids,
                  const std::vector<std::size_t>& assignments) {
    double total = 0.0;
    for (std::size_t i = 0; i < points.size(); ++i) total += squared_distance(points[i], centroids[assignments[i]]);
    return total;
}

KMeansResult kmeans(const PointSet& points, const std::vector<Point>& init, int max_iter, double tol) {
    const std::size_t k = init.size();
    const std::size_t n = points.size();
    if (k == 0) throw Error("k must be at least 1");
    if (k > n) throw Error("k exceeds the number of points");
    if (max_iter < 1) throw Error("max_iter must be positive");
    for (std::size_t a = 0; a < k; ++a)
        for (std::size_t b = a + 1; b < k; ++b)
            if (init[a] == init[b]) throw Error("initial centroids must be distinct");

    KMeansResult result;
    result.initial_centroids = init;
    std::vector<Point> centroids = init;
    std::vector<std::size_t> labels(n);
    std::vector<double> dist(n);

    for (int it = 1; it <= max_iter; ++it) {
        assign(points, centroids, labels, dist);
        result.inertia_history.push_back(sum_in_order(dist));

        std::vector<double> sx(k, 0.0), sy(k, 0.0);
        std::vector<std::size_t> counts(k, 0);
        for (std::size_t i = 0; i < n; ++i) {
            sx[labels[i]] += points[i].x;
            sy[labels[i]] += points[i].y;
            ++counts[labels[i]];
        }

        std::vector<Point> updated(k);
        std::vector<bool> taken(n, false);
        for (std::size_t c = 0; c < k; ++c) {
            if (counts[c] > 0) {
                updated[c] = {sx[c] / static_cast<double>(counts[c]), sy[c] / static_cast<double>(counts[c])};
                continue;
            }
            // Empty cluster: move it onto the worst-served point.
            std::size_t far = 0;
            double far_d = -1.0;
            for (std::size_t i = 0; i < n; ++i)
                if (!taken[i] && dist[i] > far_d) {
                    far_d = dist[i];
                    far = i;
                }
            taken[far] = true;
            updated[c] = points[far];
        }

        double shift = 0.0;
        for (std::size_t c = 0; c < k; ++c) shift = std::max(shift, std::sqrt(squared_distance(updated[c], centroids[c])));
        centroids = std::move(updated);
        result.iterations = it;
        if (shift < tol) break;
    }

    assign(points, centroids, labels, dist);
    result.inertia = sum_in_order(dist);
    result.inertia_history.push_back(result.inertia);
    result.centroids = std::move(centroids);
    result.assignments = std::move(labels);
    return result;
}

KMeansResult seed_and_cluster(const PointSet& points, const PeakSet& peaks, int max_iter, double tol) {
    if (peaks.peaks.empty()) throw Error("no clusters detected");
    std::vector<Point> init;
    init.reserve(peaks.size());
    for (const Peak& p : peaks.peaks) init.push_back({p.x, p.y});
    return kmeans(points, init, max_iter, tol);
}

}  // namespace spectral_seed
