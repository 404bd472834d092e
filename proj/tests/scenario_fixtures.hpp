#pragma once

// Small in-code scenarios shared by the synthetic/simulation/server tests.

#include "cuprank/scenario.hpp"

namespace cuprank::testing {

inline ContextSchema tiny_schema() {
    return ContextSchema(
        {
            {"Device", {"Mobile", "Desktop", "Tablet"}},
            {"OS", {"Android", "Windows", "Linux"}},
        },
        "1");
}

inline EndorsementVocabulary tiny_vocab() {
    return EndorsementVocabulary({"Beach", "Food", "Museums", "Skiing"}, "1");
}

// Three personas with disjoint context signatures and disjoint preferred
// destinations; every persona can still review every destination a little.
inline SyntheticConfig tiny_config(std::uint64_t seed, bool contextual = true) {
    SyntheticConfig config;
    config.seed = seed;
    config.users = 1500;
    config.reviews_per_user_mean = 2.0;

    const std::vector<std::vector<std::string>> preferred = {
        {"Bali", "Crete", "Ibiza", "Phuket"},
        {"Berlin", "London", "Paris", "Prague"},
        {"Aspen", "Banff", "Davos", "Zermatt"},
    };
    const std::vector<std::map<std::string, std::map<std::string, double>>> contexts = {
        {{"Device", {{"Mobile", 1.0}}}, {"OS", {{"Android", 1.0}}}},
        {{"Device", {{"Desktop", 1.0}}}, {"OS", {{"Windows", 1.0}}}},
        {{"Device", {{"Tablet", 1.0}}}, {"OS", {{"Linux", 1.0}}}},
    };
    const std::map<std::string, std::map<std::string, double>> shared_context = {
        {"Device", {{"Mobile", 0.5}, {"Desktop", 0.3}, {"Tablet", 0.2}}},
        {"OS", {{"Android", 0.4}, {"Windows", 0.4}, {"Linux", 0.2}}},
    };

    for (std::size_t p = 0; p < 3; ++p) {
        PersonaSpec persona;
        persona.name = "p" + std::to_string(p);
        persona.weight = 1.0;
        persona.context = contextual ? contexts[p] : shared_context;
        double w = 8.0;
        for (const auto& d : preferred[p]) persona.destination_preferences[d] = w -= 1.0;
        for (const auto& block : preferred)
            for (const auto& d : block)
                persona.destination_preferences.emplace(d, 0.5);
        persona.endorsement_affinity = {{"Beach", 3}, {"Food", 2}, {"Museums", 1}, {"Skiing", 1}};
        config.personas.push_back(std::move(persona));
    }
    return config;
}

inline TrainOptions tiny_train_options(std::uint64_t seed) {
    TrainOptions options;
    options.seed = seed;
    options.k_range = {2, 3, 4};
    options.restarts = 4;
    options.silhouette_cap = 800;
    options.min_support = 50;
    return options;
}

inline SimOptions tiny_sim_options(std::uint64_t seed) {
    SimOptions options;
    options.seed = seed;
    options.users = 800;
    options.sessions_per_user_mean = 1.5;
    options.top_n = 5;
    options.query_endorsements_max = 2;
    options.click = {0.12, 0.02, 4};
    return options;
}

}  // namespace cuprank::testing
