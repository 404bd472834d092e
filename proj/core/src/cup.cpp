#include "cuprank/cup.hpp"

#include "cuprank/errors.hpp"

namespace cuprank {

ContextCounts project_to_context(const std::vector<EncodedVector>& encoded,
                                 const ClusterModel& model, const ContextSchema& schema) {
    if (encoded.size() != model.assignment.size())
        throw DataError("project_to_context: model assignment does not cover input");

    ContextCounts out;
    out.context_dim = schema.coordinate_count();
    out.counts.assign(model.k, std::vector<std::uint64_t>(out.context_dim, 0));

    for (std::size_t i = 0; i < encoded.size(); ++i) {
        const auto& vec = encoded[i];
        if (vec.context_dim() != out.context_dim)
            throw DataError("project_to_context: vector context dimension mismatch");
        auto& row = out.counts[model.assignment[i]];
        for (std::size_t j = 0; j < out.context_dim; ++j) {
            row[j] += vec.bits[vec.endorsement_dim + j];
        }
    }
    return out;
}

WeightMatrix compute_weights(const ContextCounts& counts) {
    WeightMatrix out;
    const std::size_t k = counts.counts.size();
    out.w.assign(k, std::vector<double>(counts.context_dim, 0.0));
    out.column_totals.assign(counts.context_dim, 0);

    for (std::size_t j = 0; j < counts.context_dim; ++j) {
        std::uint64_t total = 0;
        for (std::size_t i = 0; i < k; ++i) total += counts.counts[i][j];
        out.column_totals[j] = total;
        if (total == 0) continue;  // 0/0 convention: coordinate dropped
        for (std::size_t i = 0; i < k; ++i) {
            out.w[i][j] = static_cast<double>(counts.counts[i][j]) / static_cast<double>(total);
        }
    }
    return out;
}

CupSet prune_cups(const WeightMatrix& weights, double threshold) {
    if (threshold < 0.0 || threshold > 1.0)
        throw ConfigError("prune_cups: threshold must be in [0, 1]");

    CupSet out;
    out.context_dim = weights.column_totals.size();
    out.threshold = threshold;

    for (std::size_t i = 0; i < weights.w.size(); ++i) {
        Cup cup;
        cup.source_cluster_id = static_cast<std::uint32_t>(i);
        for (std::size_t j = 0; j < out.context_dim; ++j) {
            if (weights.column_totals[j] == 0) continue;
            const double w = weights.w[i][j];
            if (w > 0.0 && w >= threshold) cup.weighted_center.emplace(j, w);
        }
        if (cup.weighted_center.empty()) continue;  // cluster dropped
        cup.cup_id = static_cast<std::uint32_t>(out.cups.size());
        out.cups.push_back(std::move(cup));
    }
    if (out.cups.empty()) throw DataError("degenerate pruning: every cluster lost all coordinates");
    return out;
}

double assignment_distance2(const std::vector<std::uint8_t>& context_block, const Cup& cup) {
    // d^2 = sum_j (u_j - c_j)^2 over the union of coordinates; coordinates
    // outside the sparse center contribute u_j. Start from the count of set
    // bits and correct the covered ones.
    double ones = 0.0;
    for (auto bit : context_block) ones += bit;
    double d2 = ones;
    for (const auto& [j, w] : cup.weighted_center) {
        const double u = j < context_block.size() ? static_cast<double>(context_block[j]) : 0.0;
        d2 += (u - w) * (u - w) - u;
    }
    return d2;
}

std::uint32_t assign(const std::vector<std::uint8_t>& context_block, const CupSet& cups) {
    if (cups.cups.empty()) throw DataError("assign: empty CupSet");
    if (context_block.size() != cups.context_dim)
        throw DataError("assign: context block has wrong dimension");

    std::uint32_t best_id = cups.cups.front().cup_id;
    double best_d2 = assignment_distance2(context_block, cups.cups.front());
    for (std::size_t c = 1; c < cups.cups.size(); ++c) {
        const double d2 = assignment_distance2(context_block, cups.cups[c]);
        if (d2 < best_d2) {
            best_d2 = d2;
            best_id = cups.cups[c].cup_id;
        }
    }
    return best_id;
}

}  // namespace cuprank
