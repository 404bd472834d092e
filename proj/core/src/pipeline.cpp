#include "cuprank/pipeline.hpp"

#include <map>

#include "cuprank/errors.hpp"

namespace cuprank {

TrainResult train_model(const std::vector<ContextualReview>& reviews, const ContextSchema& schema,
                        const EndorsementVocabulary& vocab, const TrainOptions& options) {
    if (reviews.empty()) throw DataError("train: no reviews");

    std::vector<EncodedVector> encoded;
    encoded.reserve(reviews.size());
    for (const auto& review : reviews) encoded.push_back(encode_review(review, schema, vocab));
    const auto vectors =
        to_real_vectors(encoded, options.endorsement_scale, options.context_scale);

    const std::size_t distinct = count_distinct(vectors);
    std::vector<std::size_t> feasible;
    for (auto k : options.k_range)
        if (k >= 2 && k <= distinct) feasible.push_back(k);
    if (feasible.empty())
        throw DataError("train: no feasible k in range (corpus has " + std::to_string(distinct) +
                        " distinct vectors)");

    SelectKOptions select;
    select.seed = options.seed;
    select.restarts = options.restarts;
    select.max_iter = options.max_iter;
    select.tol = options.tol;
    select.silhouette_cap = options.silhouette_cap;
    SelectKResult selected = select_k(vectors, feasible, select);

    const auto counts = project_to_context(encoded, selected.best, schema);
    const auto weights = compute_weights(counts);
    CupSet cups = prune_cups(weights, options.prune_threshold);

    // Surviving cluster -> cup; members of dropped clusters go to the
    // nearest surviving CUP.
    std::map<std::uint32_t, std::uint32_t> cup_of_cluster;
    for (const auto& cup : cups.cups) cup_of_cluster.emplace(cup.source_cluster_id, cup.cup_id);

    TrainResult result;
    result.dropped_clusters = selected.best.k - cups.cups.size();

    std::vector<std::uint32_t> cup_assignment(reviews.size());
    for (std::size_t i = 0; i < reviews.size(); ++i) {
        const auto it = cup_of_cluster.find(selected.best.assignment[i]);
        if (it != cup_of_cluster.end()) {
            cup_assignment[i] = it->second;
        } else {
            cup_assignment[i] = assign(encoded[i].context_block(), cups);
            ++result.reassigned_reviews;
        }
    }

    result.artifact.cups = std::move(cups);
    result.artifact.suite = train_suite(reviews, cup_assignment, vocab, options.alpha,
                                        options.min_support, options.uniform_prior);
    result.artifact.schema_hash = schema.content_hash();
    result.artifact.schema_version = schema.version();
    result.artifact.chosen_k = selected.report.chosen_k;
    for (const auto& [k, score] : selected.report.per_k) {
        if (k == selected.report.chosen_k) result.artifact.silhouette = score;
    }
    result.artifact.training_seed = options.seed;
    result.artifact.training_reviews = reviews.size();
    result.artifact.alpha = options.alpha;
    result.artifact.uniform_prior = options.uniform_prior;
    result.silhouette = std::move(selected.report);
    return result;
}

TrainResult train_from_files(const std::string& log_path, const std::string& schema_path,
                             const std::string& vocab_path, const TrainOptions& options,
                             bool strict) {
    const auto schema = load_schema(schema_path);
    const auto vocab = load_vocabulary(vocab_path);
    auto [reviews, stats] = read_review_log_file(log_path, schema, vocab, strict);
    TrainResult result = train_model(reviews, schema, vocab, options);
    result.ingest = stats;
    return result;
}

std::vector<std::size_t> parse_k_range(const std::string& text) {
    const auto dots = text.find("..");
    try {
        if (dots == std::string::npos) {
            const std::size_t k = std::stoul(text);
            return {k};
        }
        const std::size_t lo = std::stoul(text.substr(0, dots));
        const std::size_t hi = std::stoul(text.substr(dots + 2));
        if (lo < 2 || hi < lo) throw ConfigError("invalid k range: " + text);
        std::vector<std::size_t> range;
        for (std::size_t k = lo; k <= hi; ++k) range.push_back(k);
        return range;
    } catch (const std::logic_error&) {
        throw ConfigError("invalid k range: " + text);
    }
}

}  // namespace cuprank
