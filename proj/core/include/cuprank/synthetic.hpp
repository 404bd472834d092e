#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "cuprank/pipeline.hpp"
#include "cuprank/review.hpp"
#include "cuprank/schema.hpp"

namespace cuprank {

/// One behavioral persona: where its users come from (context), what they
/// like (destination preferences) and what they endorse/search for.
struct PersonaSpec {
    std::string name;
    double weight = 1.0;  // share of users drawn with this persona
    // feature -> category -> weight; features absent here stay missing.
    std::map<std::string, std::map<std::string, double>> context;
    std::map<std::string, double> destination_preferences;  // nonnegative weights
    std::map<std::string, double> endorsement_affinity;     // nonnegative weights
};

/// Workload generator settings. The four CoCoS axes map to:
///   S  reviews_per_user_mean (Poisson; sparse histories)
///   V  drift_rate (persona resampled between consecutive events)
///   I  fragmentation (probability an event carries a fresh user id)
///   P  mixture_concentration (>0: per-user Dirichlet persona mixture;
///      0: one persona per user)
struct SyntheticConfig {
    std::vector<PersonaSpec> personas;
    std::size_t users = 1000;
    double reviews_per_user_mean = 2.0;
    double drift_rate = 0.0;
    double fragmentation = 0.0;
    double mixture_concentration = 0.0;
    std::size_t endorsements_per_review_max = 3;
    std::uint64_t seed = 0;  // mandatory; constructors default it explicitly
};

/// Generated workload plus the hidden ground truth the log does not carry.
struct SyntheticOutput {
    std::vector<ContextualReview> reviews;
    std::vector<std::uint32_t> review_persona;        // persona index per review
    std::vector<std::uint32_t> user_initial_persona;  // per user index
    std::vector<std::string> persona_names;
    // True preference order per persona: descending preference weight,
    // ties lexicographic. The click model's relevance oracle.
    std::vector<std::vector<std::string>> persona_ranking;
};

/// Destination names in a persona's true preference order.
std::vector<std::string> persona_true_ranking(const PersonaSpec& persona);

class Rng;

/// Per-user persona mixture shared by the generator and the simulator:
/// concentration == 0 collapses to a single persona drawn by base weight,
/// otherwise a Dirichlet(concentration * normalized base weights) draw.
std::vector<double> draw_persona_mixture(Rng& rng, const std::vector<double>& base_weights,
                                         double concentration);

/// All destinations reachable in the config (union of preference keys),
/// sorted.
std::vector<std::string> config_destinations(const SyntheticConfig& config);

/// Deterministically generates a review log from the config. Throws
/// ConfigError on invalid distributions (empty personas, all-zero weights,
/// unknown schema categories or endorsements).
SyntheticOutput generate(const SyntheticConfig& config, const ContextSchema& schema,
                         const EndorsementVocabulary& vocab);

/// Validates persona distributions against schema and vocabulary.
void validate_config(const SyntheticConfig& config, const ContextSchema& schema,
                     const EndorsementVocabulary& vocab);

}  // namespace cuprank
