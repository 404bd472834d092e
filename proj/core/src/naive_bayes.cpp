#include "cuprank/naive_bayes.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>

#include "cuprank/errors.hpp"

namespace cuprank {

namespace {
constexpr double kNegInf = -std::numeric_limits<double>::infinity();
}

NbModel NbModel::train(const std::vector<ContextualReview>& reviews,
                       const EndorsementVocabulary& vocab, double alpha, bool uniform_prior) {
    if (reviews.empty()) throw DataError("naive bayes: empty training corpus");
    if (alpha < 0.0) throw ConfigError("naive bayes: alpha must be >= 0");

    NbModel model;
    model.vocabulary_ = vocab.endorsements();
    model.vocab_size_ = vocab.size();
    model.alpha_ = alpha;
    model.uniform_prior_ = uniform_prior;
    model.total_reviews_ = reviews.size();

    std::map<std::string, std::size_t> index;  // ordered: destinations end up sorted
    for (const auto& review : reviews) index.emplace(review.destination_id, 0);
    model.destinations_.reserve(index.size());
    for (auto& [name, idx] : index) {
        idx = model.destinations_.size();
        model.destinations_.push_back(name);
    }

    const std::size_t d_count = model.destinations_.size();
    model.review_counts_.assign(d_count, 0);
    model.endorsement_occurrences_.assign(d_count, 0);
    model.cond_counts_.assign(d_count * model.vocab_size_, 0);

    for (const auto& review : reviews) {
        const std::size_t d = index.at(review.destination_id);
        ++model.review_counts_[d];
        for (const auto& endorsement : review.endorsements) {
            const auto e = vocab.index_of(endorsement);
            if (!e) throw DataError("naive bayes: unknown endorsement '" + endorsement + "'");
            ++model.endorsement_occurrences_[d];
            ++model.cond_counts_[d * model.vocab_size_ + *e];
        }
    }
    model.finalize_probabilities();
    return model;
}

NbModel NbModel::from_counts(std::vector<std::string> destinations,
                             std::vector<std::uint64_t> review_counts,
                             std::vector<std::uint64_t> endorsement_occurrences,
                             std::vector<std::uint64_t> conditional_counts,
                             std::vector<std::string> vocabulary, std::uint64_t total_reviews,
                             double alpha, bool uniform_prior) {
    NbModel model;
    model.destinations_ = std::move(destinations);
    model.review_counts_ = std::move(review_counts);
    model.endorsement_occurrences_ = std::move(endorsement_occurrences);
    model.cond_counts_ = std::move(conditional_counts);
    model.vocabulary_ = std::move(vocabulary);
    model.vocab_size_ = model.vocabulary_.size();
    model.total_reviews_ = total_reviews;
    model.alpha_ = alpha;
    model.uniform_prior_ = uniform_prior;

    const std::size_t d_count = model.destinations_.size();
    if (model.review_counts_.size() != d_count ||
        model.endorsement_occurrences_.size() != d_count ||
        model.cond_counts_.size() != d_count * model.vocab_size_)
        throw ModelError("naive bayes: inconsistent serialized counts");
    if (!std::is_sorted(model.destinations_.begin(), model.destinations_.end()))
        throw ModelError("naive bayes: serialized destinations not sorted");
    model.finalize_probabilities();
    return model;
}

void NbModel::finalize_probabilities() {
    const std::size_t d_count = destinations_.size();
    if (d_count == 0) throw DataError("naive bayes: no destinations");

    std::uint64_t total_occurrences = 0;
    for (auto occ : endorsement_occurrences_) total_occurrences += occ;
    if (total_occurrences == 0) throw DataError("naive bayes: no endorsement occurrences");

    log_prior_.resize(d_count);
    for (std::size_t d = 0; d < d_count; ++d) {
        if (uniform_prior_) {
            log_prior_[d] = -std::log(static_cast<double>(d_count));
        } else {
            const auto occ = endorsement_occurrences_[d];
            log_prior_[d] = occ == 0 ? kNegInf
                                     : std::log(static_cast<double>(occ) /
                                                static_cast<double>(total_occurrences));
        }
    }

    log_cond_.resize(d_count * vocab_size_);
    for (std::size_t d = 0; d < d_count; ++d) {
        const double denom =
            static_cast<double>(review_counts_[d]) + alpha_ * static_cast<double>(vocab_size_);
        for (std::size_t e = 0; e < vocab_size_; ++e) {
            const double numer = static_cast<double>(cond_counts_[d * vocab_size_ + e]) + alpha_;
            log_cond_[d * vocab_size_ + e] = numer > 0.0 ? std::log(numer / denom) : kNegInf;
        }
    }
}

std::size_t NbModel::destination_index_or_throw(const std::string& destination) const {
    const auto it = std::lower_bound(destinations_.begin(), destinations_.end(), destination);
    if (it == destinations_.end() || *it != destination)
        throw DataError("unknown destination '" + destination + "'");
    return static_cast<std::size_t>(it - destinations_.begin());
}

std::size_t NbModel::endorsement_index_or_throw(const std::string& endorsement) const {
    for (std::size_t e = 0; e < vocabulary_.size(); ++e) {
        if (vocabulary_[e] == endorsement) return e;
    }
    throw DataError("unknown endorsement '" + endorsement + "'");
}

double NbModel::score(const std::string& destination, const std::set<std::string>& query) const {
    const std::size_t d = destination_index_or_throw(destination);
    double total = log_prior_[d];
    for (const auto& endorsement : query) {
        total += log_conditional(d, endorsement_index_or_throw(endorsement));
    }
    return total;
}

RankedList NbModel::rank(const std::set<std::string>& query, std::size_t top_n) const {
    if (top_n == 0) throw ConfigError("rank: top_n must be >= 1");
    std::vector<std::size_t> query_idx;
    query_idx.reserve(query.size());
    for (const auto& endorsement : query) query_idx.push_back(endorsement_index_or_throw(endorsement));

    RankedList list;
    list.reserve(destinations_.size());
    for (std::size_t d = 0; d < destinations_.size(); ++d) {
        double total = log_prior_[d];
        for (auto e : query_idx) total += log_conditional(d, e);
        list.push_back({destinations_[d], total});
    }
    std::stable_sort(list.begin(), list.end(), [](const RankedEntry& a, const RankedEntry& b) {
        if (a.log_score != b.log_score) return a.log_score > b.log_score;
        return a.destination_id < b.destination_id;
    });
    if (list.size() > top_n) list.resize(top_n);
    return list;
}

}  // namespace cuprank
