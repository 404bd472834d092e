#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "cuprank/artifact.hpp"
#include "cuprank/metrics.hpp"
#include "cuprank/synthetic.hpp"

namespace cuprank {

/// Thresholded independent-click model: every listed destination is
/// clicked independently, with p_relevant when it sits in the user's true
/// top-m and p_irrelevant otherwise.
struct ClickModel {
    double p_relevant = 0.10;
    double p_irrelevant = 0.01;
    std::size_t true_top_m = 10;
};

enum class ArmKind {
    Global,      // the non-contextual ranker R_b
    Contextual,  // nearest-CUP ranker with global fallback
    Oracle,      // ground-truth preference order (diagnostics)
    Reversed     // worst-case order (diagnostics)
};

struct ArmSpec {
    std::string label;
    ArmKind kind = ArmKind::Global;
};

ArmKind parse_arm_kind(const std::string& name);

struct SimOptions {
    std::size_t users = 5000;
    double sessions_per_user_mean = 2.0;  // Poisson, floored at 1
    std::size_t top_n = 10;
    std::size_t query_endorsements_max = 2;
    ClickModel click;
    std::uint64_t seed = 0;
};

/// Simulated A/B test. Users are drawn fresh from the scenario config
/// (no history), split across arms by seeded hashing of their user id, and
/// each session issues one query against the arm's ranker. Per-user RNG
/// streams are derived from (seed, user index) so sharding or arm order
/// cannot change results.
///
/// Returns raw counts per arm, in the given arm order.
std::vector<ArmCounts> simulate_sessions(const SyntheticConfig& config,
                                         const ContextSchema& schema,
                                         const EndorsementVocabulary& vocab,
                                         const ModelArtifact& artifact,
                                         const std::vector<ArmSpec>& arms,
                                         const SimOptions& options);

/// simulate_sessions + metric derivation + first-arm-vs-rest comparison.
MetricsReport simulate_ab(const SyntheticConfig& config, const ContextSchema& schema,
                          const EndorsementVocabulary& vocab, const ModelArtifact& artifact,
                          const std::vector<ArmSpec>& arms, const SimOptions& options);

}  // namespace cuprank
