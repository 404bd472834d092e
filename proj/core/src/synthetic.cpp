#include "cuprank/synthetic.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <set>

#include "cuprank/errors.hpp"
#include "cuprank/rng.hpp"

namespace cuprank {

namespace {

constexpr std::int64_t kEpochBase = 1700000000;  // synthetic clock origin

struct CategoricalDist {
    std::vector<std::string> values;
    std::vector<double> weights;
};

CategoricalDist to_dist(const std::map<std::string, double>& weighted, const std::string& what) {
    CategoricalDist dist;
    double total = 0.0;
    for (const auto& [value, weight] : weighted) {
        if (weight < 0.0) throw ConfigError(what + ": negative weight for '" + value + "'");
        if (weight == 0.0) continue;
        dist.values.push_back(value);
        dist.weights.push_back(weight);
        total += weight;
    }
    if (!(total > 0.0)) throw ConfigError(what + ": all weights zero");
    return dist;
}

// Compiled persona: categorical samplers built once.
struct CompiledPersona {
    std::vector<std::pair<std::string, CategoricalDist>> context;  // feature -> categories
    CategoricalDist destinations;
    CategoricalDist endorsements;
};

std::vector<CompiledPersona> compile_personas(const SyntheticConfig& config) {
    std::vector<CompiledPersona> out;
    for (const auto& persona : config.personas) {
        CompiledPersona compiled;
        for (const auto& [feature, categories] : persona.context) {
            compiled.context.emplace_back(
                feature, to_dist(categories, "persona '" + persona.name + "' context"));
        }
        compiled.destinations =
            to_dist(persona.destination_preferences, "persona '" + persona.name + "' preferences");
        compiled.endorsements =
            to_dist(persona.endorsement_affinity, "persona '" + persona.name + "' endorsements");
        out.push_back(std::move(compiled));
    }
    return out;
}

std::vector<double> persona_weights(const SyntheticConfig& config) {
    std::vector<double> weights;
    for (const auto& persona : config.personas) {
        if (persona.weight < 0.0) throw ConfigError("persona weight must be >= 0");
        weights.push_back(persona.weight);
    }
    return weights;
}

}  // namespace

// Dirichlet via normalized Gamma draws; Gamma(shape) uses a sum of
// exponentials for the integer part and Ahrens-Dieter GS for the rest.
std::vector<double> draw_persona_mixture(Rng& rng, const std::vector<double>& base_weights,
                                         double concentration) {
    std::vector<double> mixture(base_weights.size(), 0.0);
    if (concentration <= 0.0) {
        mixture[rng.weighted_index(base_weights)] = 1.0;
        return mixture;
    }
    double total_weight = 0.0;
    for (double w : base_weights) total_weight += w;
    double total = 0.0;
    for (std::size_t p = 0; p < base_weights.size(); ++p) {
        const double shape = concentration * base_weights[p] / total_weight;
        if (shape <= 0.0) continue;
        double g = 0.0;
        double remaining = shape;
        while (remaining >= 1.0) {
            double u = rng.uniform();
            while (u <= 0.0) u = rng.uniform();
            g += -std::log(u);
            remaining -= 1.0;
        }
        if (remaining > 0.0) {
            // Ahrens-Dieter GS: valid for 0 < shape < 1.
            const double b = 1.0 + remaining / M_E;
            for (;;) {
                const double u1 = rng.uniform();
                const double u2 = rng.uniform();
                const double p_val = b * u1;
                if (p_val <= 1.0) {
                    const double x = std::pow(p_val, 1.0 / remaining);
                    if (u2 <= std::exp(-x)) {
                        g += x;
                        break;
                    }
                } else {
                    const double x = -std::log((b - p_val) / remaining);
                    if (u2 <= std::pow(x, remaining - 1.0)) {
                        g += x;
                        break;
                    }
                }
            }
        }
        mixture[p] = g;
        total += g;
    }
    if (!(total > 0.0)) {
        mixture.assign(base_weights.size(), 0.0);
        mixture[rng.weighted_index(base_weights)] = 1.0;
        return mixture;
    }
    for (auto& m : mixture) m /= total;
    return mixture;
}

namespace {

std::set<std::string> draw_endorsements(Rng& rng, const CategoricalDist& dist,
                                        std::size_t max_count) {
    const std::size_t available = dist.values.size();
    std::size_t want = 1 + rng.uniform_index(std::min(max_count, available));
    std::set<std::string> out;
    // Weighted draws; duplicates retried up to a bound, then padded by scan.
    std::size_t attempts = 0;
    while (out.size() < want && attempts < want * 8) {
        out.insert(dist.values[rng.weighted_index(dist.weights)]);
        ++attempts;
    }
    if (out.empty()) out.insert(dist.values[rng.weighted_index(dist.weights)]);
    return out;
}

}  // namespace

std::vector<std::string> persona_true_ranking(const PersonaSpec& persona) {
    std::vector<std::pair<std::string, double>> items(persona.destination_preferences.begin(),
                                                      persona.destination_preferences.end());
    std::stable_sort(items.begin(), items.end(), [](const auto& a, const auto& b) {
        if (a.second != b.second) return a.second > b.second;
        return a.first < b.first;
    });
    std::vector<std::string> ranking;
    ranking.reserve(items.size());
    for (const auto& [name, weight] : items) ranking.push_back(name);
    return ranking;
}

std::vector<std::string> config_destinations(const SyntheticConfig& config) {
    std::set<std::string> names;
    for (const auto& persona : config.personas) {
        for (const auto& [name, weight] : persona.destination_preferences) names.insert(name);
    }
    return std::vector<std::string>(names.begin(), names.end());
}

void validate_config(const SyntheticConfig& config, const ContextSchema& schema,
                     const EndorsementVocabulary& vocab) {
    if (config.personas.empty()) throw ConfigError("scenario has no personas");
    if (config.users == 0) throw ConfigError("scenario has no users");
    if (config.drift_rate < 0.0 || config.drift_rate > 1.0)
        throw ConfigError("drift_rate must be in [0, 1]");
    if (config.fragmentation < 0.0 || config.fragmentation > 1.0)
        throw ConfigError("fragmentation must be in [0, 1]");
    if (config.endorsements_per_review_max == 0)
        throw ConfigError("endorsements_per_review_max must be >= 1");

    for (const auto& persona : config.personas) {
        for (const auto& [feature, categories] : persona.context) {
            if (!schema.feature_index(feature))
                throw ConfigError("persona '" + persona.name + "': unknown feature '" + feature + "'");
            for (const auto& [category, weight] : categories) {
                if (!schema.coordinate(feature, category))
                    throw ConfigError("persona '" + persona.name + "': unknown category '" +
                                      category + "' for feature '" + feature + "'");
            }
        }
        for (const auto& [endorsement, weight] : persona.endorsement_affinity) {
            if (!vocab.index_of(endorsement))
                throw ConfigError("persona '" + persona.name + "': unknown endorsement '" +
                                  endorsement + "'");
        }
        if (persona.destination_preferences.empty())
            throw ConfigError("persona '" + persona.name + "' has no destination preferences");
    }
    // compile_personas re-validates weight positivity
    compile_personas(config);
    persona_weights(config);
}

SyntheticOutput generate(const SyntheticConfig& config, const ContextSchema& schema,
                         const EndorsementVocabulary& vocab) {
    validate_config(config, schema, vocab);
    const auto personas = compile_personas(config);
    const auto base_weights = persona_weights(config);

    SyntheticOutput out;
    for (const auto& persona : config.personas) {
        out.persona_names.push_back(persona.name);
        out.persona_ranking.push_back(persona_true_ranking(persona));
    }
    out.user_initial_persona.resize(config.users);

    for (std::size_t u = 0; u < config.users; ++u) {
        Rng rng(derive_seed(config.seed, "gen-user", {u}));
        const auto mixture =
            draw_persona_mixture(rng, base_weights, config.mixture_concentration);
        std::uint32_t persona = static_cast<std::uint32_t>(rng.weighted_index(mixture));
        out.user_initial_persona[u] = persona;

        const std::uint64_t review_count = rng.poisson(config.reviews_per_user_mean);
        char base_id[32];
        std::snprintf(base_id, sizeof(base_id), "u%06zu", u);
        std::string current_id = base_id;
        std::size_t fragments = 0;

        for (std::uint64_t r = 0; r < review_count; ++r) {
            if (r > 0 && rng.chance(config.drift_rate)) {
                persona = static_cast<std::uint32_t>(rng.weighted_index(mixture));
            }
            if (r > 0 && rng.chance(config.fragmentation)) {
                current_id = std::string(base_id) + "-f" + std::to_string(++fragments);
            }
            const auto& compiled = personas[persona];

            ContextualReview review;
            review.destination_id =
                compiled.destinations.values[rng.weighted_index(compiled.destinations.weights)];
            review.endorsements =
                draw_endorsements(rng, compiled.endorsements, config.endorsements_per_review_max);
            for (const auto& [feature, dist] : compiled.context) {
                review.context[feature] = dist.values[rng.weighted_index(dist.weights)];
            }
            review.user_id = current_id;
            review.timestamp = kEpochBase + static_cast<std::int64_t>(u) * 86400 +
                               static_cast<std::int64_t>(r) * 3600;
            out.reviews.push_back(std::move(review));
            out.review_persona.push_back(persona);
        }
    }
    return out;
}

}  // namespace cuprank
