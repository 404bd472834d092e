#include "cuprank/kmeans.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <set>

#include "cuprank/errors.hpp"
#include "cuprank/rng.hpp"

namespace cuprank {

namespace {

double squared_distance(const RealVector& a, const RealVector& b) {
    double sum = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) {
        const double d = a[i] - b[i];
        sum += d * d;
    }
    return sum;
}

double euclidean_distance(const RealVector& a, const RealVector& b) {
    return std::sqrt(squared_distance(a, b));
}

// Nearest center; ties resolved to the lowest center index.
std::uint32_t nearest_center(const RealVector& point, const std::vector<RealVector>& centers) {
    std::uint32_t best = 0;
    double best_d = squared_distance(point, centers[0]);
    for (std::uint32_t c = 1; c < centers.size(); ++c) {
        const double d = squared_distance(point, centers[c]);
        if (d < best_d) {
            best_d = d;
            best = c;
        }
    }
    return best;
}

std::vector<RealVector> seed_centers_plus_plus(const std::vector<RealVector>& vectors,
                                               std::size_t k, Rng& rng) {
    const std::size_t n = vectors.size();
    std::vector<RealVector> centers;
    centers.reserve(k);
    centers.push_back(vectors[rng.uniform_index(n)]);

    std::vector<double> dist2(n);
    for (std::size_t i = 0; i < n; ++i) dist2[i] = squared_distance(vectors[i], centers[0]);

    while (centers.size() < k) {
        double total = 0.0;
        for (double d : dist2) total += d;
        std::size_t pick;
        if (total > 0.0) {
            pick = rng.weighted_index(dist2);
        } else {
            // All points coincide with chosen centers; cannot happen when
            // k <= distinct count, but stay defined.
            pick = rng.uniform_index(n);
        }
        centers.push_back(vectors[pick]);
        for (std::size_t i = 0; i < n; ++i) {
            dist2[i] = std::min(dist2[i], squared_distance(vectors[i], centers.back()));
        }
    }
    return centers;
}

double total_inertia(const std::vector<RealVector>& vectors,
                     const std::vector<RealVector>& centers,
                     const std::vector<std::uint32_t>& assignment) {
    double sum = 0.0;
    for (std::size_t i = 0; i < vectors.size(); ++i) {
        sum += squared_distance(vectors[i], centers[assignment[i]]);
    }
    return sum;
}

// Gives every empty cluster the member point farthest from its own center
// (ties -> lowest point index). Points that are the sole member of their
// cluster stay put so no new cluster empties out.
void repair_empty_clusters(const std::vector<RealVector>& vectors,
                           std::vector<RealVector>& centers,
                           std::vector<std::uint32_t>& assignment) {
    const std::size_t k = centers.size();
    std::vector<std::size_t> sizes(k, 0);
    for (auto a : assignment) ++sizes[a];

    for (std::size_t c = 0; c < k; ++c) {
        if (sizes[c] > 0) continue;
        std::size_t farthest = SIZE_MAX;
        double farthest_d = -1.0;
        for (std::size_t i = 0; i < vectors.size(); ++i) {
            if (sizes[assignment[i]] <= 1) continue;
            const double d = squared_distance(vectors[i], centers[assignment[i]]);
            if (d > farthest_d) {
                farthest_d = d;
                farthest = i;
            }
        }
        if (farthest == SIZE_MAX) continue;  // nothing stealable
        --sizes[assignment[farthest]];
        assignment[farthest] = static_cast<std::uint32_t>(c);
        sizes[c] = 1;
        centers[c] = vectors[farthest];
    }
}

void update_centers(const std::vector<RealVector>& vectors,
                    const std::vector<std::uint32_t>& assignment,
                    std::vector<RealVector>& centers) {
    const std::size_t dim = vectors.empty() ? 0 : vectors[0].size();
    std::vector<std::size_t> counts(centers.size(), 0);
    std::vector<RealVector> sums(centers.size(), RealVector(dim, 0.0));
    for (std::size_t i = 0; i < vectors.size(); ++i) {
        const auto c = assignment[i];
        ++counts[c];
        for (std::size_t d = 0; d < dim; ++d) sums[c][d] += vectors[i][d];
    }
    for (std::size_t c = 0; c < centers.size(); ++c) {
        if (counts[c] == 0) continue;  // kept as-is; repaired separately
        for (std::size_t d = 0; d < dim; ++d) centers[c][d] = sums[c][d] / static_cast<double>(counts[c]);
    }
}

}  // namespace

std::size_t count_distinct(const std::vector<RealVector>& vectors) {
    std::set<RealVector> unique(vectors.begin(), vectors.end());
    return unique.size();
}

ClusterModel kmeans(const std::vector<RealVector>& vectors, std::size_t k,
                    const KMeansOptions& options) {
    if (vectors.empty()) throw DataError("kmeans: empty input");
    if (k == 0) throw ConfigError("kmeans: k must be >= 1");
    if (options.max_iter == 0) throw ConfigError("kmeans: max_iter must be >= 1");
    const std::size_t distinct = count_distinct(vectors);
    if (k > distinct)
        throw DataError("kmeans: k=" + std::to_string(k) + " exceeds " +
                        std::to_string(distinct) + " distinct vectors");

    ClusterModel model;
    model.k = k;
    model.seed = options.seed;

    Rng rng(derive_seed(options.seed, "kmeans++"));
    model.centers = seed_centers_plus_plus(vectors, k, rng);

    model.assignment.resize(vectors.size());
    for (std::size_t i = 0; i < vectors.size(); ++i)
        model.assignment[i] = nearest_center(vectors[i], model.centers);
    repair_empty_clusters(vectors, model.centers, model.assignment);

    for (std::size_t iter = 0; iter < options.max_iter; ++iter) {
        ++model.iterations_run;

        const std::vector<RealVector> previous_centers = model.centers;
        update_centers(vectors, model.assignment, model.centers);

        bool assignment_changed = false;
        for (std::size_t i = 0; i < vectors.size(); ++i) {
            const auto c = nearest_center(vectors[i], model.centers);
            if (c != model.assignment[i]) {
                model.assignment[i] = c;
                assignment_changed = true;
            }
        }
        repair_empty_clusters(vectors, model.centers, model.assignment);

        model.inertia = total_inertia(vectors, model.centers, model.assignment);
        model.inertia_history.push_back(model.inertia);

        double shift = 0.0;
        for (std::size_t c = 0; c < k; ++c)
            shift = std::max(shift, euclidean_distance(previous_centers[c], model.centers[c]));
        if (!assignment_changed || shift < options.tol) break;
    }
    return model;
}

double silhouette_score(const std::vector<RealVector>& vectors,
                        const std::vector<std::uint32_t>& assignment) {
    if (vectors.size() != assignment.size())
        throw DataError("silhouette: assignment size mismatch");
    if (vectors.empty()) throw DataError("silhouette: empty input");

    std::uint32_t max_label = 0;
    for (auto a : assignment) max_label = std::max(max_label, a);
    const std::size_t k = static_cast<std::size_t>(max_label) + 1;

    std::vector<std::size_t> sizes(k, 0);
    for (auto a : assignment) ++sizes[a];
    std::size_t nonempty = 0;
    for (auto s : sizes) nonempty += (s > 0);
    if (nonempty < 2) throw DataError("silhouette: needs at least two clusters");

    const std::size_t n = vectors.size();
    double total = 0.0;
    std::vector<double> mean_dist(k);
    for (std::size_t i = 0; i < n; ++i) {
        if (sizes[assignment[i]] == 1) continue;  // singleton scores 0

        std::fill(mean_dist.begin(), mean_dist.end(), 0.0);
        for (std::size_t j = 0; j < n; ++j) {
            if (j == i) continue;
            mean_dist[assignment[j]] += euclidean_distance(vectors[i], vectors[j]);
        }
        const std::uint32_t own = assignment[i];
        const double a = mean_dist[own] / static_cast<double>(sizes[own] - 1);
        double b = std::numeric_limits<double>::infinity();
        for (std::uint32_t c = 0; c < k; ++c) {
            if (c == own || sizes[c] == 0) continue;
            b = std::min(b, mean_dist[c] / static_cast<double>(sizes[c]));
        }
        const double denom = std::max(a, b);
        total += denom > 0.0 ? (b - a) / denom : 0.0;
    }
    return total / static_cast<double>(n);
}

SelectKResult select_k(const std::vector<RealVector>& vectors,
                       const std::vector<std::size_t>& k_range,
                       const SelectKOptions& options) {
    if (k_range.empty()) throw ConfigError("select_k: empty k range");
    if (vectors.empty()) throw DataError("select_k: empty input");
    std::vector<std::size_t> ks(k_range);
    std::sort(ks.begin(), ks.end());
    ks.erase(std::unique(ks.begin(), ks.end()), ks.end());
    for (auto k : ks) {
        if (k < 2) throw ConfigError("select_k: silhouette needs k >= 2");
    }

    SelectKResult result;
    double best_score = -std::numeric_limits<double>::infinity();
    ClusterModel best_model;

    for (std::size_t k : ks) {
        ClusterModel round_best;
        double round_best_inertia = std::numeric_limits<double>::infinity();
        for (std::size_t r = 0; r < options.restarts; ++r) {
            KMeansOptions run;
            run.seed = derive_seed(options.seed, "kmeans-restart", {k, r});
            run.max_iter = options.max_iter;
            run.tol = options.tol;
            ClusterModel model = kmeans(vectors, k, run);
            if (model.inertia < round_best_inertia) {
                round_best_inertia = model.inertia;
                round_best = std::move(model);
            }
        }

        double score;
        if (vectors.size() > options.silhouette_cap) {
            Rng rng(derive_seed(options.seed, "silhouette-sample", {k}));
            auto picked = rng.sample_without_replacement(vectors.size(), options.silhouette_cap);
            std::sort(picked.begin(), picked.end());
            std::vector<RealVector> sample;
            std::vector<std::uint32_t> sample_assignment;
            sample.reserve(picked.size());
            sample_assignment.reserve(picked.size());
            for (auto idx : picked) {
                sample.push_back(vectors[idx]);
                sample_assignment.push_back(round_best.assignment[idx]);
            }
            std::set<std::uint32_t> present(sample_assignment.begin(), sample_assignment.end());
            score = present.size() >= 2 ? silhouette_score(sample, sample_assignment) : -1.0;
        } else {
            score = silhouette_score(vectors, round_best.assignment);
        }

        result.report.per_k.emplace_back(k, score);
        if (score > best_score) {
            best_score = score;
            best_model = std::move(round_best);
            result.report.chosen_k = k;
        }
    }
    result.best = std::move(best_model);
    return result;
}

std::vector<RealVector> to_real_vectors(const std::vector<EncodedVector>& encoded,
                                        double endorsement_scale, double context_scale) {
    std::vector<RealVector> out;
    out.reserve(encoded.size());
    for (const auto& vec : encoded) {
        RealVector row(vec.bits.size());
        for (std::size_t i = 0; i < vec.bits.size(); ++i) {
            const double scale = i < vec.endorsement_dim ? endorsement_scale : context_scale;
            row[i] = scale * static_cast<double>(vec.bits[i]);
        }
        out.push_back(std::move(row));
    }
    return out;
}

}  // namespace cuprank
