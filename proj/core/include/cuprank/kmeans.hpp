#pragma once

#include <cstdint>
#include <vector>

#include "cuprank/review.hpp"

namespace cuprank {

using RealVector = std::vector<double>;

struct KMeansOptions {
    std::uint64_t seed = 0;
    std::size_t max_iter = 100;
    double tol = 1e-6;  // max center movement below which we stop
};

/// Output of one k-means run. assignment[i] is the cluster of input vector
/// i; inertia is the sum of squared distances to assigned centers.
/// inertia_history holds the value after every completed iteration and is
/// non-increasing.
struct ClusterModel {
    std::size_t k = 0;
    std::vector<RealVector> centers;
    std::vector<std::uint32_t> assignment;
    double inertia = 0.0;
    std::uint64_t seed = 0;
    std::size_t iterations_run = 0;
    std::vector<double> inertia_history;
};

/// Lloyd's algorithm with k-means++ seeding. Deterministic given
/// (vectors, k, seed). Requires 1 <= k <= number of distinct vectors.
/// Ties in the assignment step go to the lowest center index.
ClusterModel kmeans(const std::vector<RealVector>& vectors, std::size_t k,
                    const KMeansOptions& options = {});

/// Mean silhouette (Rousseeuw's (b-a)/max(a,b)) over all points, Euclidean
/// distance. Points in singleton clusters score 0; so do points where
/// max(a,b) == 0. Throws DataError unless at least two clusters are present.
double silhouette_score(const std::vector<RealVector>& vectors,
                        const std::vector<std::uint32_t>& assignment);

struct SilhouetteReport {
    std::vector<std::pair<std::size_t, double>> per_k;  // (k, mean silhouette)
    std::size_t chosen_k = 0;
};

struct SelectKOptions {
    std::uint64_t seed = 0;
    std::size_t restarts = 8;
    std::size_t max_iter = 100;
    double tol = 1e-6;
    // Exact silhouette is quadratic; above this many vectors it is computed
    // on a seeded uniform subsample.
    std::size_t silhouette_cap = 10000;
};

struct SelectKResult {
    SilhouetteReport report;
    ClusterModel best;
};

/// Runs best-of-`restarts` k-means (by inertia) for each k and picks the k
/// with the highest mean silhouette; ties go to the smallest k. Every k must
/// be >= 2 and <= the number of distinct vectors.
SelectKResult select_k(const std::vector<RealVector>& vectors,
                       const std::vector<std::size_t>& k_range,
                       const SelectKOptions& options = {});

/// Converts encoded reviews to real vectors for clustering, with optional
/// per-block scaling of the distance contribution (default: unweighted).
std::vector<RealVector> to_real_vectors(const std::vector<EncodedVector>& encoded,
                                        double endorsement_scale = 1.0,
                                        double context_scale = 1.0);

std::size_t count_distinct(const std::vector<RealVector>& vectors);

}  // namespace cuprank
