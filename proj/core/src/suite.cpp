#include "cuprank/suite.hpp"

#include "cuprank/errors.hpp"

namespace cuprank {

RankerSuite train_suite(const std::vector<ContextualReview>& reviews,
                        const std::vector<std::uint32_t>& cup_assignments,
                        const EndorsementVocabulary& vocab, double alpha,
                        std::size_t min_support, bool uniform_prior) {
    if (reviews.size() != cup_assignments.size())
        throw DataError("train_suite: assignment does not cover reviews");

    RankerSuite suite;
    suite.min_support = min_support;
    suite.global = NbModel::train(reviews, vocab, alpha, uniform_prior);

    std::map<std::uint32_t, std::vector<ContextualReview>> slices;
    for (std::size_t i = 0; i < reviews.size(); ++i) {
        slices[cup_assignments[i]].push_back(reviews[i]);
    }
    for (const auto& [cup_id, slice] : slices) {
        if (slice.size() < min_support) continue;
        suite.per_cup.emplace(cup_id, NbModel::train(slice, vocab, alpha, uniform_prior));
    }
    return suite;
}

}  // namespace cuprank
