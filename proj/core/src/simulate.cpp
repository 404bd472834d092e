#include "cuprank/simulate.hpp"

#include <algorithm>
#include <cstdio>
#include <set>

#include "cuprank/cup.hpp"
#include "cuprank/errors.hpp"
#include "cuprank/rng.hpp"

namespace cuprank {

namespace {

struct CompiledContext {
    std::vector<std::pair<std::string, std::vector<std::string>>> values;  // feature -> categories
    std::vector<std::vector<double>> weights;
};

// Truncated destination lists for the diagnostic arms.
struct OracleLists {
    std::vector<std::vector<std::string>> in_order;   // per persona
    std::vector<std::vector<std::string>> reversed;
    std::vector<std::set<std::string>> top_m;         // relevance sets
};

OracleLists build_oracle_lists(const SyntheticConfig& config, std::size_t top_n,
                               std::size_t true_top_m) {
    OracleLists lists;
    for (const auto& persona : config.personas) {
        auto ranking = persona_true_ranking(persona);
        std::vector<std::string> fwd(ranking.begin(),
                                     ranking.begin() + static_cast<std::ptrdiff_t>(
                                                           std::min(top_n, ranking.size())));
        std::vector<std::string> rev(ranking.rbegin(),
                                     ranking.rbegin() + static_cast<std::ptrdiff_t>(
                                                            std::min(top_n, ranking.size())));
        lists.in_order.push_back(std::move(fwd));
        lists.reversed.push_back(std::move(rev));
        std::set<std::string> top(ranking.begin(),
                                  ranking.begin() + static_cast<std::ptrdiff_t>(
                                                        std::min(true_top_m, ranking.size())));
        lists.top_m.push_back(std::move(top));
    }
    return lists;
}

}  // namespace

ArmKind parse_arm_kind(const std::string& name) {
    if (name == "global") return ArmKind::Global;
    if (name == "contextual") return ArmKind::Contextual;
    if (name == "oracle") return ArmKind::Oracle;
    if (name == "reversed") return ArmKind::Reversed;
    throw ConfigError("unknown arm '" + name + "' (expected global, contextual, oracle, reversed)");
}

std::vector<ArmCounts> simulate_sessions(const SyntheticConfig& config,
                                         const ContextSchema& schema,
                                         const EndorsementVocabulary& vocab,
                                         const ModelArtifact& artifact,
                                         const std::vector<ArmSpec>& arms,
                                         const SimOptions& options) {
    if (arms.empty()) throw ConfigError("simulate: no arms");
    if (options.top_n == 0) throw ConfigError("simulate: top_n must be >= 1");
    if (options.users == 0) throw ConfigError("simulate: users must be >= 1");
    validate_config(config, schema, vocab);

    const auto oracle = build_oracle_lists(config, options.top_n, options.click.true_top_m);

    std::vector<double> base_weights;
    for (const auto& persona : config.personas) base_weights.push_back(persona.weight);

    std::vector<ArmCounts> counts(arms.size());
    for (std::size_t a = 0; a < arms.size(); ++a) {
        counts[a].label = arms[a].label;
        counts[a].converted_users = 0;
    }

    for (std::size_t u = 0; u < options.users; ++u) {
        char user_id[32];
        std::snprintf(user_id, sizeof(user_id), "sim-u%06zu", u);
        const std::size_t arm_index = static_cast<std::size_t>(
            derive_seed(options.seed, "arm-split", {fnv1a64(user_id)}) % arms.size());
        auto& arm_counts = counts[arm_index];
        const ArmKind kind = arms[arm_index].kind;

        Rng rng(derive_seed(options.seed, "sim-user", {u}));

        // Persona mixture drawn exactly like the generator's users.
        const auto mixture =
            draw_persona_mixture(rng, base_weights, config.mixture_concentration);
        std::uint32_t persona = static_cast<std::uint32_t>(rng.weighted_index(mixture));

        const std::uint64_t sessions = std::max<std::uint64_t>(
            1, rng.poisson(options.sessions_per_user_mean));

        ++arm_counts.users;
        bool converted = false;

        for (std::uint64_t s = 0; s < sessions; ++s) {
            if (s > 0 && rng.chance(config.drift_rate)) {
                persona = static_cast<std::uint32_t>(rng.weighted_index(mixture));
            }
            const auto& spec = config.personas[persona];

            // Context for this session (assignment is per session: context
            // does not change within one).
            std::map<std::string, std::string> context;
            for (const auto& [feature, categories] : spec.context) {
                std::vector<std::string> values;
                std::vector<double> weights;
                for (const auto& [category, weight] : categories) {
                    if (weight <= 0.0) continue;
                    values.push_back(category);
                    weights.push_back(weight);
                }
                if (values.empty()) continue;
                context[feature] = values[rng.weighted_index(weights)];
            }

            // Query: 1..max endorsements from the persona's affinity.
            std::vector<std::string> endorsement_values;
            std::vector<double> endorsement_weights;
            for (const auto& [endorsement, weight] : spec.endorsement_affinity) {
                if (weight <= 0.0) continue;
                endorsement_values.push_back(endorsement);
                endorsement_weights.push_back(weight);
            }
            const std::size_t want =
                1 + rng.uniform_index(std::min(options.query_endorsements_max,
                                               endorsement_values.size()));
            std::set<std::string> query;
            std::size_t attempts = 0;
            while (query.size() < want && attempts < want * 8) {
                query.insert(endorsement_values[rng.weighted_index(endorsement_weights)]);
                ++attempts;
            }

            // Ranked list from this arm's ranker.
            std::vector<std::string> listed;
            switch (kind) {
                case ArmKind::Global: {
                    for (const auto& entry : artifact.suite.global.rank(query, options.top_n))
                        listed.push_back(entry.destination_id);
                    break;
                }
                case ArmKind::Contextual: {
                    const auto block = encode_context(context, schema, /*strict=*/true);
                    const auto cup_id = assign(block, artifact.cups);
                    const auto [model, fallback] = artifact.suite.model_for(cup_id);
                    (void)fallback;
                    for (const auto& entry : model->rank(query, options.top_n))
                        listed.push_back(entry.destination_id);
                    break;
                }
                case ArmKind::Oracle:
                    listed = oracle.in_order[persona];
                    break;
                case ArmKind::Reversed:
                    listed = oracle.reversed[persona];
                    break;
            }

            ++arm_counts.searches;
            const auto& relevant = oracle.top_m[persona];
            for (const auto& destination : listed) {
                const double p = relevant.count(destination) ? options.click.p_relevant
                                                             : options.click.p_irrelevant;
                if (rng.chance(p)) {
                    ++arm_counts.clicks;
                    converted = true;
                }
            }
        }
        if (converted) ++*arm_counts.converted_users;
    }
    return counts;
}

MetricsReport simulate_ab(const SyntheticConfig& config, const ContextSchema& schema,
                          const EndorsementVocabulary& vocab, const ModelArtifact& artifact,
                          const std::vector<ArmSpec>& arms, const SimOptions& options) {
    return build_report(simulate_sessions(config, schema, vocab, artifact, arms, options));
}

}  // namespace cuprank
