#pragma once

#include <cstdint>
#include <map>
#include <vector>

#include "cuprank/kmeans.hpp"
#include "cuprank/review.hpp"
#include "cuprank/schema.hpp"

namespace cuprank {

/// A contextual user profile: a sparse weighted center over context-block
/// coordinates. Coordinates not present weigh 0 in distance computations.
struct Cup {
    std::uint32_t cup_id = 0;
    std::uint32_t source_cluster_id = 0;
    std::map<std::size_t, double> weighted_center;  // context coordinate -> weight in (0,1]
};

/// The pruned profile set derived from a cluster model.
struct CupSet {
    std::vector<Cup> cups;
    std::size_t context_dim = 0;
    double threshold = 0.0;

    const Cup* find(std::uint32_t cup_id) const {
        for (const auto& cup : cups)
            if (cup.cup_id == cup_id) return &cup;
        return nullptr;
    }
};

/// Per-cluster occurrence counts of context coordinates, endorsement block
/// eliminated. counts[i][j] = number of cluster-i member vectors with
/// context coordinate j set.
struct ContextCounts {
    std::vector<std::vector<std::uint64_t>> counts;  // k x context_dim
    std::size_t context_dim = 0;
};

/// Projects cluster members onto the context space by counting set
/// coordinates per cluster.
ContextCounts project_to_context(const std::vector<EncodedVector>& encoded,
                                 const ClusterModel& model, const ContextSchema& schema);

/// Association weights: w[i][j] = count(i,j) / sum_i count(i,j).
/// column_total[j] == 0 marks coordinates never observed; their weights are
/// meaningless and excluded from pruning.
struct WeightMatrix {
    std::vector<std::vector<double>> w;            // k x context_dim
    std::vector<std::uint64_t> column_totals;      // context_dim
};

WeightMatrix compute_weights(const ContextCounts& counts);

/// Retains coordinates with weight >= threshold (and nonzero count); keeps
/// only clusters that retain at least one coordinate. Throws DataError when
/// every cluster prunes away.
CupSet prune_cups(const WeightMatrix& weights, double threshold = 0.2);

/// Nearest profile by Euclidean distance between a binary context block and
/// the sparse weighted centers (absent coordinates treated as 0). Ties go to
/// the lowest cup_id. Throws DataError on an empty CupSet.
std::uint32_t assign(const std::vector<std::uint8_t>& context_block, const CupSet& cups);

/// Squared distance used by assign; exposed for diagnostics and tests.
double assignment_distance2(const std::vector<std::uint8_t>& context_block, const Cup& cup);

}  // namespace cuprank
