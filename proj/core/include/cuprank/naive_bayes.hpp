#pragma once

#include <cstdint>
#include <set>
#include <string>
#include <vector>

#include "cuprank/review.hpp"
#include "cuprank/schema.hpp"

namespace cuprank {

/// One (destination, log score) entry; lists are sorted descending by
/// score, exact ties broken lexicographically by destination id.
struct RankedEntry {
    std::string destination_id;
    double log_score = 0.0;
};

using RankedList = std::vector<RankedEntry>;

/// Naive Bayes destination model over endorsement events.
///
/// The prior is the destination's share of all endorsement occurrences; the
/// conditionals are Laplace-smoothed Bernoulli probabilities that a review
/// of the destination carries a given endorsement. Sufficient statistics
/// are kept so the model serializes without infinities; log probabilities
/// are precomputed for scoring.
class NbModel {
public:
    NbModel() = default;

    /// Trains on a nonempty corpus. alpha is the Laplace smoothing constant
    /// (alpha = 0 allowed: unseen pairs score -infinity).
    /// uniform_prior replaces the endorsement-share prior with 1/|D|.
    static NbModel train(const std::vector<ContextualReview>& reviews,
                         const EndorsementVocabulary& vocab, double alpha = 1.0,
                         bool uniform_prior = false);

    /// log P(d) + sum_{e in query} log P(e|d). Empty query scores the prior
    /// alone. Throws DataError on unknown endorsements or destinations.
    double score(const std::string& destination, const std::set<std::string>& query) const;

    /// All destinations scored and sorted, truncated to top_n.
    RankedList rank(const std::set<std::string>& query, std::size_t top_n) const;

    const std::vector<std::string>& destinations() const { return destinations_; }
    std::size_t training_review_count() const { return total_reviews_; }
    double alpha() const { return alpha_; }
    bool uniform_prior() const { return uniform_prior_; }

    double log_prior(std::size_t destination_index) const { return log_prior_[destination_index]; }
    double log_conditional(std::size_t destination_index, std::size_t endorsement_index) const {
        return log_cond_[destination_index * vocab_size_ + endorsement_index];
    }

    // Sufficient statistics, exposed for serialization.
    const std::vector<std::uint64_t>& review_counts() const { return review_counts_; }
    const std::vector<std::uint64_t>& endorsement_occurrences() const {
        return endorsement_occurrences_;
    }
    const std::vector<std::uint64_t>& conditional_counts() const { return cond_counts_; }
    std::size_t vocab_size() const { return vocab_size_; }

    /// Rebuilds a model from serialized sufficient statistics.
    static NbModel from_counts(std::vector<std::string> destinations,
                               std::vector<std::uint64_t> review_counts,
                               std::vector<std::uint64_t> endorsement_occurrences,
                               std::vector<std::uint64_t> conditional_counts,
                               std::vector<std::string> vocabulary, std::uint64_t total_reviews,
                               double alpha, bool uniform_prior);

    const std::vector<std::string>& vocabulary() const { return vocabulary_; }

private:
    void finalize_probabilities();
    std::size_t destination_index_or_throw(const std::string& destination) const;
    std::size_t endorsement_index_or_throw(const std::string& endorsement) const;

    std::vector<std::string> destinations_;        // sorted lexicographically
    std::vector<std::string> vocabulary_;          // endorsement names, index-aligned
    std::size_t vocab_size_ = 0;
    std::uint64_t total_reviews_ = 0;
    double alpha_ = 1.0;
    bool uniform_prior_ = false;

    std::vector<std::uint64_t> review_counts_;             // per destination
    std::vector<std::uint64_t> endorsement_occurrences_;   // per destination
    std::vector<std::uint64_t> cond_counts_;               // |D| x X, row-major

    std::vector<double> log_prior_;
    std::vector<double> log_cond_;
};

}  // namespace cuprank
