#pragma once

#include <cstdint>
#include <map>
#include <optional>

#include "cuprank/naive_bayes.hpp"

namespace cuprank {

/// The global ranker plus one contextual ranker per CUP with enough
/// training data. CUPs below min_support carry no model and fall back to
/// the global ranker.
struct RankerSuite {
    NbModel global;
    std::map<std::uint32_t, NbModel> per_cup;
    std::size_t min_support = 50;

    /// Model serving a CUP; second element reports whether the global
    /// fallback fired.
    std::pair<const NbModel*, bool> model_for(std::uint32_t cup_id) const {
        const auto it = per_cup.find(cup_id);
        if (it != per_cup.end()) return {&it->second, false};
        return {&global, true};
    }
};

/// Trains the global model on all reviews and a per-CUP model on each CUP's
/// slice. cup_assignments[i] is the CUP of reviews[i]. CUPs with fewer than
/// min_support reviews route to the global model.
RankerSuite train_suite(const std::vector<ContextualReview>& reviews,
                        const std::vector<std::uint32_t>& cup_assignments,
                        const EndorsementVocabulary& vocab, double alpha = 1.0,
                        std::size_t min_support = 50, bool uniform_prior = false);

}  // namespace cuprank
