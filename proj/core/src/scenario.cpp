#include "cuprank/scenario.hpp"

#include <filesystem>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "cuprank/errors.hpp"

namespace cuprank {

namespace {

using nlohmann::json;

std::map<std::string, double> weight_map(const json& doc, const std::string& what) {
    if (!doc.is_object()) throw ConfigError(what + " must be an object of weights");
    std::map<std::string, double> out;
    for (const auto& [key, value] : doc.items()) {
        if (!value.is_number()) throw ConfigError(what + ": weight for '" + key + "' not a number");
        out[key] = value.get<double>();
    }
    return out;
}

PersonaSpec parse_persona(const json& doc) {
    if (!doc.is_object()) throw ConfigError("persona entries must be objects");
    PersonaSpec persona;
    persona.name = doc.value("name", std::string("persona"));
    persona.weight = doc.value("weight", 1.0);
    if (doc.contains("context")) {
        for (const auto& [feature, categories] : doc.at("context").items()) {
            persona.context[feature] =
                weight_map(categories, "persona '" + persona.name + "' context '" + feature + "'");
        }
    }
    if (doc.contains("preferences"))
        persona.destination_preferences =
            weight_map(doc.at("preferences"), "persona '" + persona.name + "' preferences");
    if (doc.contains("endorsements"))
        persona.endorsement_affinity =
            weight_map(doc.at("endorsements"), "persona '" + persona.name + "' endorsements");
    return persona;
}

}  // namespace

Scenario parse_scenario(const std::string& json_text, const std::string& base_dir) {
    json doc = json::parse(json_text, nullptr, false);
    if (doc.is_discarded() || !doc.is_object()) throw ConfigError("scenario is not valid JSON");

    Scenario scenario;
    try {
        if (doc.contains("schema")) {
            scenario.schema = parse_schema(doc.at("schema").dump());
        } else if (doc.contains("schema_path")) {
            const auto path =
                std::filesystem::path(base_dir) / doc.at("schema_path").get<std::string>();
            scenario.schema = load_schema(path.string());
        } else {
            throw ConfigError("scenario needs \"schema\" or \"schema_path\"");
        }
        if (doc.contains("vocabulary")) {
            scenario.vocab = parse_vocabulary(doc.at("vocabulary").dump());
        } else if (doc.contains("vocabulary_path")) {
            const auto path =
                std::filesystem::path(base_dir) / doc.at("vocabulary_path").get<std::string>();
            scenario.vocab = load_vocabulary(path.string());
        } else {
            throw ConfigError("scenario needs \"vocabulary\" or \"vocabulary_path\"");
        }

        if (!doc.contains("seed")) throw ConfigError("scenario needs a \"seed\"");
        const std::uint64_t seed = doc.at("seed").get<std::uint64_t>();
        scenario.synth.seed = seed;
        scenario.train.seed = seed;
        scenario.sim.seed = seed;

        if (!doc.contains("personas") || !doc.at("personas").is_array() ||
            doc.at("personas").empty())
            throw ConfigError("scenario needs a nonempty \"personas\" array");
        for (const auto& persona : doc.at("personas"))
            scenario.synth.personas.push_back(parse_persona(persona));

        if (doc.contains("training")) {
            const auto& training = doc.at("training");
            scenario.synth.users = training.value("users", scenario.synth.users);
            scenario.synth.reviews_per_user_mean =
                training.value("reviews_per_user_mean", scenario.synth.reviews_per_user_mean);
            scenario.synth.drift_rate = training.value("drift_rate", scenario.synth.drift_rate);
            scenario.synth.fragmentation =
                training.value("fragmentation", scenario.synth.fragmentation);
            scenario.synth.mixture_concentration =
                training.value("mixture_concentration", scenario.synth.mixture_concentration);
            scenario.synth.endorsements_per_review_max = training.value(
                "endorsements_per_review_max", scenario.synth.endorsements_per_review_max);
        }

        if (doc.contains("model")) {
            const auto& model = doc.at("model");
            if (model.contains("k_range")) {
                scenario.train.k_range.clear();
                if (model.at("k_range").is_array()) {
                    for (const auto& k : model.at("k_range"))
                        scenario.train.k_range.push_back(k.get<std::size_t>());
                } else {
                    scenario.train.k_range = parse_k_range(model.at("k_range").get<std::string>());
                }
            }
            scenario.train.restarts = model.value("restarts", scenario.train.restarts);
            scenario.train.max_iter = model.value("max_iter", scenario.train.max_iter);
            scenario.train.silhouette_cap =
                model.value("silhouette_cap", scenario.train.silhouette_cap);
            scenario.train.prune_threshold =
                model.value("threshold", scenario.train.prune_threshold);
            scenario.train.alpha = model.value("alpha", scenario.train.alpha);
            scenario.train.min_support = model.value("min_support", scenario.train.min_support);
            scenario.train.uniform_prior =
                model.value("uniform_prior", scenario.train.uniform_prior);
            scenario.train.endorsement_scale =
                model.value("endorsement_scale", scenario.train.endorsement_scale);
            scenario.train.context_scale = model.value("context_scale", scenario.train.context_scale);
        }

        if (doc.contains("simulation")) {
            const auto& sim = doc.at("simulation");
            scenario.sim.users = sim.value("users", scenario.sim.users);
            scenario.sim.sessions_per_user_mean =
                sim.value("sessions_per_user_mean", scenario.sim.sessions_per_user_mean);
            scenario.sim.top_n = sim.value("top_n", scenario.sim.top_n);
            scenario.sim.query_endorsements_max =
                sim.value("query_endorsements_max", scenario.sim.query_endorsements_max);
            if (sim.contains("click")) {
                const auto& click = sim.at("click");
                scenario.sim.click.p_relevant =
                    click.value("p_relevant", scenario.sim.click.p_relevant);
                scenario.sim.click.p_irrelevant =
                    click.value("p_irrelevant", scenario.sim.click.p_irrelevant);
                scenario.sim.click.true_top_m =
                    click.value("true_top_m", scenario.sim.click.true_top_m);
            }
        }
    } catch (const json::exception& e) {
        throw ConfigError(std::string("malformed scenario: ") + e.what());
    }
    validate_config(scenario.synth, scenario.schema, scenario.vocab);
    return scenario;
}

Scenario load_scenario(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ConfigError("cannot open scenario: " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_scenario(buf.str(), std::filesystem::path(path).parent_path().string());
}

}  // namespace cuprank
