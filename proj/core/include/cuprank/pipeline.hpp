#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "cuprank/artifact.hpp"
#include "cuprank/kmeans.hpp"
#include "cuprank/log_io.hpp"

namespace cuprank {

/// Knobs for the offline training pipeline
/// (encode -> select_k -> project/weight/prune -> per-CUP Naive Bayes).
struct TrainOptions {
    std::vector<std::size_t> k_range = {2, 3, 4, 5, 6, 7, 8};
    std::uint64_t seed = 0;
    std::size_t restarts = 8;
    std::size_t max_iter = 100;
    double tol = 1e-6;
    std::size_t silhouette_cap = 10000;
    double prune_threshold = 0.2;
    double alpha = 1.0;
    std::size_t min_support = 50;
    bool uniform_prior = false;
    double endorsement_scale = 1.0;
    double context_scale = 1.0;
};

struct TrainResult {
    ModelArtifact artifact;
    SilhouetteReport silhouette;
    std::size_t dropped_clusters = 0;
    std::size_t reassigned_reviews = 0;  // members of dropped clusters
    IngestStats ingest;                  // populated by train_from_files
};

/// Runs the full offline stage over parsed reviews. k values exceeding the
/// number of distinct encoded vectors are skipped (an error only if none
/// remain). Reviews whose cluster was pruned away are reassigned to the
/// nearest surviving CUP before ranker training.
TrainResult train_model(const std::vector<ContextualReview>& reviews, const ContextSchema& schema,
                        const EndorsementVocabulary& vocab, const TrainOptions& options);

/// File-level wrapper: ingests the log (lenient unless strict), trains, and
/// reports ingest stats alongside.
TrainResult train_from_files(const std::string& log_path, const std::string& schema_path,
                             const std::string& vocab_path, const TrainOptions& options,
                             bool strict = false);

/// Parses "A..B" or a single integer into an inclusive k range.
std::vector<std::size_t> parse_k_range(const std::string& text);

}  // namespace cuprank
