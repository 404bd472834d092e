#include "cuprank/artifact.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "cuprank/errors.hpp"
#include "cuprank/hash.hpp"

namespace cuprank {

namespace {

using nlohmann::json;

json nb_to_json(const NbModel& model) {
    json out;
    out["destinations"] = model.destinations();
    out["review_counts"] = model.review_counts();
    out["endorsement_occurrences"] = model.endorsement_occurrences();
    out["conditional_counts"] = model.conditional_counts();
    out["total_reviews"] = model.training_review_count();
    return out;
}

NbModel nb_from_json(const json& doc, const std::vector<std::string>& vocabulary, double alpha,
                     bool uniform_prior) {
    return NbModel::from_counts(
        doc.at("destinations").get<std::vector<std::string>>(),
        doc.at("review_counts").get<std::vector<std::uint64_t>>(),
        doc.at("endorsement_occurrences").get<std::vector<std::uint64_t>>(),
        doc.at("conditional_counts").get<std::vector<std::uint64_t>>(), vocabulary,
        doc.at("total_reviews").get<std::uint64_t>(), alpha, uniform_prior);
}

json payload_to_json(const ModelArtifact& artifact) {
    json payload;
    payload["schema_hash"] = artifact.schema_hash;
    payload["schema_version"] = artifact.schema_version;
    payload["context_dim"] = artifact.cups.context_dim;
    payload["threshold"] = artifact.cups.threshold;
    payload["chosen_k"] = artifact.chosen_k;
    payload["silhouette"] = artifact.silhouette;
    payload["training_seed"] = artifact.training_seed;
    payload["training_reviews"] = artifact.training_reviews;
    payload["alpha"] = artifact.alpha;
    payload["uniform_prior"] = artifact.uniform_prior;
    payload["min_support"] = artifact.suite.min_support;
    payload["vocabulary"] = artifact.suite.global.vocabulary();

    auto cups = json::array();
    for (const auto& cup : artifact.cups.cups) {
        auto center = json::array();
        for (const auto& [j, w] : cup.weighted_center) {
            center.push_back(json::array({j, w}));
        }
        cups.push_back({{"id", cup.cup_id},
                        {"source_cluster", cup.source_cluster_id},
                        {"center", std::move(center)}});
    }
    payload["cups"] = std::move(cups);

    payload["global"] = nb_to_json(artifact.suite.global);
    auto per_cup = json::array();
    for (const auto& [cup_id, model] : artifact.suite.per_cup) {
        per_cup.push_back(json::array({cup_id, nb_to_json(model)}));
    }
    payload["per_cup"] = std::move(per_cup);
    return payload;
}

ModelArtifact payload_from_json(const json& payload) {
    ModelArtifact artifact;
    artifact.schema_hash = payload.at("schema_hash").get<std::string>();
    artifact.schema_version = payload.at("schema_version").get<std::string>();
    artifact.cups.context_dim = payload.at("context_dim").get<std::size_t>();
    artifact.cups.threshold = payload.at("threshold").get<double>();
    artifact.chosen_k = payload.at("chosen_k").get<std::size_t>();
    artifact.silhouette = payload.at("silhouette").get<double>();
    artifact.training_seed = payload.at("training_seed").get<std::uint64_t>();
    artifact.training_reviews = payload.at("training_reviews").get<std::uint64_t>();
    artifact.alpha = payload.at("alpha").get<double>();
    artifact.uniform_prior = payload.at("uniform_prior").get<bool>();
    artifact.suite.min_support = payload.at("min_support").get<std::size_t>();

    const auto vocabulary = payload.at("vocabulary").get<std::vector<std::string>>();

    for (const auto& entry : payload.at("cups")) {
        Cup cup;
        cup.cup_id = entry.at("id").get<std::uint32_t>();
        cup.source_cluster_id = entry.at("source_cluster").get<std::uint32_t>();
        for (const auto& pair : entry.at("center")) {
            cup.weighted_center.emplace(pair.at(0).get<std::size_t>(), pair.at(1).get<double>());
        }
        if (cup.weighted_center.empty()) throw ModelError("artifact cup with empty center");
        artifact.cups.cups.push_back(std::move(cup));
    }
    std::sort(artifact.cups.cups.begin(), artifact.cups.cups.end(),
              [](const Cup& a, const Cup& b) { return a.cup_id < b.cup_id; });

    artifact.suite.global =
        nb_from_json(payload.at("global"), vocabulary, artifact.alpha, artifact.uniform_prior);
    for (const auto& pair : payload.at("per_cup")) {
        artifact.suite.per_cup.emplace(
            pair.at(0).get<std::uint32_t>(),
            nb_from_json(pair.at(1), vocabulary, artifact.alpha, artifact.uniform_prior));
    }
    return artifact;
}

}  // namespace

std::string artifact_to_string(const ModelArtifact& artifact) {
    const std::string payload = payload_to_json(artifact).dump();
    json doc;
    doc["format"] = kArtifactFormat;
    doc["version"] = kArtifactVersion;
    doc["checksum"] = hash_hex(fnv1a64(payload));
    doc["payload"] = json::parse(payload);
    return doc.dump();
}

ModelArtifact artifact_from_string(const std::string& text) {
    json doc = json::parse(text, nullptr, false);
    if (doc.is_discarded() || !doc.is_object())
        throw ModelError("artifact is not valid JSON (truncated or corrupt)");
    try {
        if (doc.at("format").get<std::string>() != kArtifactFormat)
            throw ModelError("not a cuprank model artifact");
        const int version = doc.at("version").get<int>();
        if (version != kArtifactVersion)
            throw ModelError("unsupported artifact version " + std::to_string(version) +
                             " (expected " + std::to_string(kArtifactVersion) + ")");
        const std::string payload = doc.at("payload").dump();
        const std::string expected = doc.at("checksum").get<std::string>();
        if (hash_hex(fnv1a64(payload)) != expected)
            throw ModelError("artifact checksum mismatch");
        return payload_from_json(doc.at("payload"));
    } catch (const json::exception& e) {
        throw ModelError(std::string("malformed artifact: ") + e.what());
    }
}

void save_artifact(const ModelArtifact& artifact, const std::string& path) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw DataError("cannot write artifact: " + path);
    out << artifact_to_string(artifact) << '\n';
    if (!out) throw DataError("write failed: " + path);
}

ModelArtifact load_artifact(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ModelError("cannot open artifact: " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    return artifact_from_string(buf.str());
}

}  // namespace cuprank
